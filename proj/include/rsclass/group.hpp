#ifndef RSCLASS_GROUP_HPP_
#define RSCLASS_GROUP_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rsclass/common.hpp"

namespace rsclass {

// A finite group stored as a full Cayley table over dense indices.
// Index 0 is always the identity.
struct Group {
    int n = 1;
    std::vector<std::uint16_t> tab{0};
    std::vector<std::uint16_t> inv_{0};
    std::vector<std::string> names{"1"};
    std::vector<int> gens;
    std::vector<std::string> gen_names;
    std::string tag = "trivial";

    int order() const { return n; }
    int mul(int a, int b) const { return tab[static_cast<std::size_t>(a) * n + b]; }
    int inv(int a) const { return inv_[a]; }
    int pow(int a, long long k) const
    {
        if (k < 0) {
            a = inv(a);
            k = -k;
        }
        int r = 0;
        while (k > 0) {
            if (k & 1) r = mul(r, a);
            a = mul(a, a);
            k >>= 1;
        }
        return r;
    }
    // h g h^-1
    int conj(int h, int g) const { return mul(mul(h, g), inv(h)); }
    int commutator(int a, int b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
    int find(const std::string& name) const
    {
        for (int i = 0; i < n; ++i)
            if (names[i] == name) return i;
        return -1;
    }
};

struct Morphism {
    std::vector<int> map;
    int operator()(int x) const { return map[x]; }
};

namespace detail {

inline std::string render_word(const std::vector<int>& word, const std::vector<std::string>& gen_names)
{
    if (word.empty()) return "1";
    std::string out;
    std::size_t i = 0;
    while (i < word.size()) {
        std::size_t j = i;
        while (j < word.size() && word[j] == word[i]) ++j;
        if (!out.empty()) out += "*";
        out += gen_names[word[i]];
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

struct VecHash {
    std::size_t operator()(const std::vector<std::uint8_t>& v) const
    {
        std::size_t h = 1469598103934665603ull;
        for (auto x : v) h = (h ^ x) * 1099511628211ull;
        return h;
    }
};

template <typename T>
struct HashFor { using type = std::hash<T>; };
template <>
struct HashFor<std::vector<std::uint8_t>> { using type = VecHash; };

}  // namespace detail

// Builds a Group from any concrete representation: BFS from the identity by
// right multiplication with the generators. Element names are the shortlex
// first words found by the search.
template <typename T, typename Mul>
Group close_group(const T& identity, const std::vector<T>& gens, Mul mul,
                  std::vector<std::string> gen_names, std::string tag)
{
    using Hash = typename detail::HashFor<T>::type;
    const int bound = std::min(max_order(), 65535);
    std::vector<T> elems{identity};
    std::unordered_map<T, int, Hash> index;
    index.emplace(identity, 0);
    std::vector<int> parent{-1}, via{-1};
    const int k = static_cast<int>(gens.size());
    std::vector<std::vector<int>> right;  // right[i][j] = index(elems[i]*gens[j])
    for (std::size_t head = 0; head < elems.size(); ++head) {
        std::vector<int> row(k);
        for (int j = 0; j < k; ++j) {
            T y = mul(elems[head], gens[j]);
            auto it = index.find(y);
            if (it == index.end()) {
                int id = static_cast<int>(elems.size());
                if (id >= bound)
                    throw GroupError("group order exceeds the bound of " + std::to_string(bound) +
                                     " (set RSCLASS_MAX_ORDER to raise it)");
                index.emplace(y, id);
                elems.push_back(std::move(y));
                parent.push_back(static_cast<int>(head));
                via.push_back(j);
                row[j] = id;
            } else {
                row[j] = it->second;
            }
        }
        right.push_back(std::move(row));
    }
    Group G;
    G.n = static_cast<int>(elems.size());
    G.tag = std::move(tag);
    G.gen_names = std::move(gen_names);
    if (static_cast<int>(G.gen_names.size()) != k) {
        G.gen_names.clear();
        for (int j = 0; j < k; ++j) G.gen_names.push_back(std::string(1, static_cast<char>('a' + j)));
    }
    const int n = G.n;
    // words, then the table column by column in BFS order
    std::vector<std::vector<int>> words(n);
    for (int i = 1; i < n; ++i) {
        words[i] = words[parent[i]];
        words[i].push_back(via[i]);
    }
    G.names.resize(n);
    for (int i = 0; i < n; ++i) G.names[i] = detail::render_word(words[i], G.gen_names);
    G.tab.assign(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) G.tab[static_cast<std::size_t>(i) * n] = static_cast<std::uint16_t>(i);
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < n; ++i)
            G.tab[static_cast<std::size_t>(i) * n + j] =
                static_cast<std::uint16_t>(right[G.mul(i, parent[j])][via[j]]);
    G.inv_.assign(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (G.mul(i, j) == 0) {
                G.inv_[i] = static_cast<std::uint16_t>(j);
                break;
            }
    G.gens.clear();
    for (int j = 0; j < k; ++j) G.gens.push_back(index.at(gens[j]));
    return G;
}

// Rebuilds a group from a subset of an existing one; `embed` receives the
// index map from the new group into G.
inline Group subgroup_as_group(const Group& G, const std::vector<int>& gens,
                               std::vector<std::string> gen_names, std::string tag,
                               std::vector<int>* embed = nullptr)
{
    Group H = close_group<int>(0, gens, [&](int a, int b) { return G.mul(a, b); }, std::move(gen_names),
                               std::move(tag));
    if (embed) {
        // replay the BFS to recover the ambient index of every element
        embed->assign(H.n, -1);
        (*embed)[0] = 0;
        std::vector<int> queue{0};
        for (std::size_t q = 0; q < queue.size(); ++q) {
            int x = queue[q];
            for (std::size_t j = 0; j < gens.size(); ++j) {
                int y = H.mul(x, H.gens[j]);
                if ((*embed)[y] < 0) {
                    (*embed)[y] = G.mul((*embed)[x], gens[j]);
                    queue.push_back(y);
                }
            }
        }
    }
    return H;
}

inline Group cyclic(int n, std::string gen = "a")
{
    if (n < 1) throw GroupError("cyclic group needs n >= 1");
    if (n == 1) return Group{};
    return close_group<int>(0, {1}, [n](int a, int b) { return (a + b) % n; }, {gen},
                            "Z" + std::to_string(n));
}

inline Group direct(const Group& A, const Group& B, std::string tag = "")
{
    const int nb = B.n;
    std::vector<int> gens;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < A.gens.size(); ++i) {
        gens.push_back(A.gens[i] * nb);
        names.push_back(A.gen_names[i]);
    }
    for (std::size_t i = 0; i < B.gens.size(); ++i) {
        gens.push_back(B.gens[i]);
        names.push_back(B.gen_names[i]);
    }
    if (tag.empty()) tag = "(" + A.tag + ")x(" + B.tag + ")";
    return close_group<int>(
        0, gens, [&](int x, int y) { return A.mul(x / nb, y / nb) * nb + B.mul(x % nb, y % nb); },
        names, tag);
}

inline bool is_automorphism(const Group& N, const std::vector<int>& f)
{
    if (static_cast<int>(f.size()) != N.n) return false;
    std::vector<char> seen(N.n, 0);
    for (int x : f) {
        if (x < 0 || x >= N.n || seen[x]) return false;
        seen[x] = 1;
    }
    for (int a = 0; a < N.n; ++a)
        for (int b = 0; b < N.n; ++b)
            if (f[N.mul(a, b)] != N.mul(f[a], f[b])) return false;
    return true;
}

inline std::vector<int> compose(const std::vector<int>& f, const std::vector<int>& g)
{
    // (f o g)(x) = f(g(x))
    std::vector<int> r(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) r[i] = f[g[i]];
    return r;
}

// N x| H where phi[i] is the automorphism of N attached to H.gens[i].
// The assignment is extended along H's Cayley graph; any clash means phi
// does not respect a relation of H and is reported as such.
inline Group semidirect(const Group& N, const Group& H, const std::vector<std::vector<int>>& phi,
                        std::string tag = "")
{
    if (phi.size() != H.gens.size())
        throw GroupError("semidirect: need one automorphism per generator of H");
    for (std::size_t i = 0; i < phi.size(); ++i)
        if (!is_automorphism(N, phi[i]))
            throw GroupError("semidirect: image of generator " + H.gen_names[i] +
                             " is not an automorphism of " + N.tag);
    std::vector<int> ident(N.n);
    std::iota(ident.begin(), ident.end(), 0);
    std::vector<std::vector<int>> act(H.n);
    act[0] = ident;
    std::vector<int> queue{0};
    for (std::size_t q = 0; q < queue.size(); ++q) {
        int h = queue[q];
        for (std::size_t j = 0; j < H.gens.size(); ++j) {
            int y = H.mul(h, H.gens[j]);
            auto img = compose(act[h], phi[j]);
            if (act[y].empty()) {
                act[y] = std::move(img);
                queue.push_back(y);
            } else if (act[y] != img) {
                throw GroupError("semidirect: coupling map is not a homomorphism; relation " + H.names[h] +
                                 "*" + H.gen_names[j] + " = " + H.names[y] + " of " + H.tag +
                                 " is violated by its image in Aut(" + N.tag + ")");
            }
        }
    }
    const int nh = H.n;
    std::vector<int> gens;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < N.gens.size(); ++i) {
        gens.push_back(N.gens[i] * nh);
        names.push_back(N.gen_names[i]);
    }
    for (std::size_t i = 0; i < H.gens.size(); ++i) {
        gens.push_back(H.gens[i]);
        names.push_back(H.gen_names[i]);
    }
    if (tag.empty()) tag = "(" + N.tag + "):(" + H.tag + ")";
    return close_group<int>(
        0, gens,
        [&](int x, int y) {
            int n1 = x / nh, h1 = x % nh, n2 = y / nh, h2 = y % nh;
            return N.mul(n1, act[h1][n2]) * nh + H.mul(h1, h2);
        },
        names, tag);
}

// Dihedral group of order 2n, generated by a rotation and a reflection.
inline Group dihedral(int n, std::string r = "r", std::string s = "s")
{
    if (n < 1) throw GroupError("dihedral group needs n >= 1");
    auto mul = [n](int x, int y) {
        int k1 = x / 2, e1 = x % 2, k2 = y / 2, e2 = y % 2;
        int k = e1 ? k1 - k2 : k1 + k2;
        return static_cast<int>(mod(k, n)) * 2 + (e1 ^ e2);
    };
    return close_group<int>(0, {2 % (2 * n), 1}, mul, {r, s}, "D" + std::to_string(2 * n));
}

// Dicyclic group of order 4n: <a, x | a^2n = 1, x^2 = a^n, x a x^-1 = a^-1>.
inline Group dicyclic(int n, std::string a = "a", std::string x = "x")
{
    if (n < 1) throw GroupError("dicyclic group needs n >= 1");
    const int m = 2 * n;
    auto mul = [n, m](int u, int v) {
        int k1 = u / 2, e1 = u % 2, k2 = v / 2, e2 = v % 2;
        long long k;
        int e;
        if (!e1) {
            k = k1 + k2;
            e = e2;
        } else {
            k = k1 - k2 + (e2 ? n : 0);
            e = 1 - e2;
        }
        return static_cast<int>(mod(k, m)) * 2 + e;
    };
    return close_group<int>(0, {2 % (2 * m), 1}, mul, {a, x}, "Dic" + std::to_string(n));
}

using Perm = std::vector<std::uint8_t>;

// Composition applies p first, then q.
inline Perm perm_mul(const Perm& p, const Perm& q)
{
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[p[i]];
    return r;
}

inline Group perm_group(const std::vector<Perm>& gens, std::vector<std::string> names, std::string tag)
{
    if (gens.empty()) return Group{};
    Perm id(gens[0].size());
    std::iota(id.begin(), id.end(), 0);
    return close_group<Perm>(id, gens, perm_mul, std::move(names), std::move(tag));
}

// ---- elementwise queries ----

inline int element_order(const Group& G, int x)
{
    int k = 1, y = x;
    while (y != 0) {
        y = G.mul(y, x);
        ++k;
    }
    return k;
}

inline std::vector<int> element_orders(const Group& G)
{
    std::vector<int> o(G.n);
    for (int i = 0; i < G.n; ++i) o[i] = element_order(G, i);
    return o;
}

inline bool is_abelian(const Group& G)
{
    for (int a = 0; a < G.n; ++a)
        for (int b = a + 1; b < G.n; ++b)
            if (G.mul(a, b) != G.mul(b, a)) return false;
    return true;
}

inline int exponent(const Group& G)
{
    long long e = 1;
    for (int i = 0; i < G.n; ++i) e = std::lcm(e, static_cast<long long>(element_order(G, i)));
    return static_cast<int>(e);
}

// Classes are listed by smallest member; the identity class comes first.
inline std::vector<std::vector<int>> conjugacy_classes(const Group& G)
{
    std::vector<int> cls(G.n, -1);
    std::vector<std::vector<int>> out;
    for (int x = 0; x < G.n; ++x) {
        if (cls[x] >= 0) continue;
        int id = static_cast<int>(out.size());
        std::vector<int> members;
        for (int h = 0; h < G.n; ++h) {
            int y = G.conj(h, x);
            if (cls[y] < 0) {
                cls[y] = id;
                members.push_back(y);
            }
        }
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

inline std::vector<int> class_index(const Group& G, const std::vector<std::vector<int>>& classes)
{
    std::vector<int> c(G.n);
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (int x : classes[i]) c[x] = static_cast<int>(i);
    return c;
}

// Sorted element list of the subgroup generated by xs.
inline std::vector<int> subgroup_generated(const Group& G, const std::vector<int>& xs)
{
    std::vector<char> in(G.n, 0);
    std::vector<int> elems{0};
    in[0] = 1;
    for (std::size_t q = 0; q < elems.size(); ++q)
        for (int g : xs) {
            int y = G.mul(elems[q], g);
            if (!in[y]) {
                in[y] = 1;
                elems.push_back(y);
            }
        }
    std::sort(elems.begin(), elems.end());
    return elems;
}

inline bool is_subgroup(const Group& G, const std::vector<int>& H)
{
    if (H.empty()) return false;
    std::vector<char> in(G.n, 0);
    for (int h : H) {
        if (h < 0 || h >= G.n) return false;
        in[h] = 1;
    }
    if (!in[0]) return false;
    for (int a : H)
        for (int b : H)
            if (!in[G.mul(a, b)]) return false;
    return true;
}

inline bool is_normal(const Group& G, const std::vector<int>& H)
{
    std::vector<char> in(G.n, 0);
    for (int h : H) in[h] = 1;
    for (int g = 0; g < G.n; ++g)
        for (int h : H)
            if (!in[G.conj(g, h)]) return false;
    return true;
}

inline std::vector<int> center(const Group& G)
{
    std::vector<int> z;
    for (int a = 0; a < G.n; ++a) {
        bool ok = true;
        for (int b = 0; b < G.n && ok; ++b) ok = G.mul(a, b) == G.mul(b, a);
        if (ok) z.push_back(a);
    }
    return z;
}

inline std::vector<int> derived_subgroup(const Group& G)
{
    std::vector<char> seen(G.n, 0);
    std::vector<int> comms;
    for (int a = 0; a < G.n; ++a)
        for (int b = 0; b < G.n; ++b) {
            int c = G.commutator(a, b);
            if (!seen[c]) {
                seen[c] = 1;
                comms.push_back(c);
            }
        }
    return subgroup_generated(G, comms);
}

// Small generating set: repeatedly adjoin the element of largest order
// outside the current subgroup.
inline std::vector<int> generating_set(const Group& G)
{
    auto ord = element_orders(G);
    std::vector<int> gens;
    std::vector<int> sub{0};
    while (static_cast<int>(sub.size()) < G.n) {
        std::vector<char> in(G.n, 0);
        for (int x : sub) in[x] = 1;
        int best = -1;
        for (int x = 1; x < G.n; ++x)
            if (!in[x] && (best < 0 || ord[x] > ord[best])) best = x;
        gens.push_back(best);
        sub = subgroup_generated(G, gens);
    }
    return gens;
}

// Extends gens[i] -> images[i] to a map on <gens>, following the Cayley
// graph. Returns nullopt when the assignment is inconsistent or not
// injective. Elements outside <gens> stay at -1.
inline std::optional<std::vector<int>> extend_hom(const Group& G, const std::vector<int>& gens,
                                                  const Group& H, const std::vector<int>& images)
{
    std::vector<int> f(G.n, -1);
    std::vector<char> hit(H.n, 0);
    f[0] = 0;
    hit[0] = 1;
    std::vector<int> queue{0};
    for (std::size_t q = 0; q < queue.size(); ++q) {
        int x = queue[q];
        for (std::size_t j = 0; j < gens.size(); ++j) {
            int y = G.mul(x, gens[j]);
            int fy = H.mul(f[x], images[j]);
            if (f[y] < 0) {
                if (hit[fy]) return std::nullopt;
                f[y] = fy;
                hit[fy] = 1;
                queue.push_back(y);
            } else if (f[y] != fy) {
                return std::nullopt;
            }
        }
    }
    return f;
}

// Same as extend_hom but without the injectivity requirement.
inline std::optional<std::vector<int>> extend_hom_any(const Group& G, const std::vector<int>& gens,
                                                      const Group& H, const std::vector<int>& images)
{
    std::vector<int> f(G.n, -1);
    f[0] = 0;
    std::vector<int> queue{0};
    for (std::size_t q = 0; q < queue.size(); ++q) {
        int x = queue[q];
        for (std::size_t j = 0; j < gens.size(); ++j) {
            int y = G.mul(x, gens[j]);
            int fy = H.mul(f[x], images[j]);
            if (f[y] < 0) {
                f[y] = fy;
                queue.push_back(y);
            } else if (f[y] != fy) {
                return std::nullopt;
            }
        }
    }
    return f;
}

namespace detail {

struct Profile {
    std::vector<int> ord;
    std::vector<int> csize;
};

inline Profile profile(const Group& G)
{
    Profile P;
    P.ord = element_orders(G);
    auto cls = conjugacy_classes(G);
    P.csize.assign(G.n, 0);
    for (auto& c : cls)
        for (int x : c) P.csize[x] = static_cast<int>(c.size());
    return P;
}

// Backtracking over images of gens; calls visit(map) for every bijective
// homomorphism G -> H. visit returns false to stop the search.
template <typename Visit>
void search_isos(const Group& G, const Group& H, const std::vector<int>& gens, const Profile& pg,
                 const Profile& ph, Visit&& visit)
{
    const int k = static_cast<int>(gens.size());
    std::vector<std::vector<int>> cand(k);
    for (int i = 0; i < k; ++i)
        for (int y = 0; y < H.n; ++y)
            if (ph.ord[y] == pg.ord[gens[i]] && ph.csize[y] == pg.csize[gens[i]]) cand[i].push_back(y);
    std::vector<int> img;
    bool stop = false;
    std::function<void(int)> rec = [&](int depth) {
        if (stop) return;
        if (depth == k) {
            auto f = extend_hom(G, gens, H, img);
            if (f && !visit(*f)) stop = true;
            return;
        }
        std::vector<int> prefix(gens.begin(), gens.begin() + depth + 1);
        for (int y : cand[depth]) {
            img.push_back(y);
            if (extend_hom(G, prefix, H, img)) rec(depth + 1);
            img.pop_back();
            if (stop) return;
        }
    };
    rec(0);
}

}  // namespace detail

// All automorphisms as index maps, sorted; the identity comes first.
inline std::vector<std::vector<int>> automorphism_group(const Group& G)
{
    auto gens = generating_set(G);
    auto P = detail::profile(G);
    std::vector<std::vector<int>> out;
    detail::search_isos(G, G, gens, P, P, [&](const std::vector<int>& f) {
        out.push_back(f);
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

// Cheap isomorphism invariants; equal invariants are necessary for
// isomorphism.
inline std::vector<long long> group_invariants(const Group& G)
{
    std::vector<long long> inv{G.n, is_abelian(G) ? 1 : 0};
    auto P = detail::profile(G);
    std::map<std::pair<int, int>, int> hist;
    for (int x = 0; x < G.n; ++x) ++hist[{P.ord[x], P.csize[x]}];
    inv.push_back(static_cast<long long>(conjugacy_classes(G).size()));
    inv.push_back(static_cast<long long>(center(G).size()));
    inv.push_back(static_cast<long long>(derived_subgroup(G).size()));
    for (auto& [key, c] : hist) {
        inv.push_back(key.first);
        inv.push_back(key.second);
        inv.push_back(c);
    }
    return inv;
}

inline std::optional<Morphism> find_isomorphism(const Group& G, const Group& H)
{
    if (G.n != H.n) return std::nullopt;
    if (group_invariants(G) != group_invariants(H)) return std::nullopt;
    auto gens = generating_set(G);
    auto pg = detail::profile(G), ph = detail::profile(H);
    std::optional<Morphism> found;
    detail::search_isos(G, H, gens, pg, ph, [&](const std::vector<int>& f) {
        found = Morphism{f};
        return false;
    });
    return found;
}

inline bool are_isomorphic(const Group& G, const Group& H) { return find_isomorphism(G, H).has_value(); }

inline bool is_homomorphism(const Group& G, const Group& H, const std::vector<int>& f)
{
    for (int a = 0; a < G.n; ++a)
        for (int b = 0; b < G.n; ++b)
            if (f[G.mul(a, b)] != H.mul(f[a], f[b])) return false;
    return true;
}

}  // namespace rsclass

#endif
