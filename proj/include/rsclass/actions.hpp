#ifndef RSCLASS_ACTIONS_HPP_
#define RSCLASS_ACTIONS_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "rsclass/group.hpp"
#include "rsclass/signature.hpp"
#include "rsclass/small_groups.hpp"

namespace rsclass {

// Images of the elliptic generators, one per period (h = 0 only).
using Tuple = std::vector<int>;

struct SKE {
    Signature signature;
    Tuple images;
};

struct ActionClass {
    Tuple representative;
    long long orbit_size = 0;
    std::string equivalence;  // "aut-only" | "topological" | "isomorphism"
    std::vector<std::string> labels;
};

inline std::uint64_t pack(const Tuple& t)
{
    std::uint64_t k = 0;
    for (int x : t) k = (k << 16) | static_cast<std::uint64_t>(x);
    return k | (static_cast<std::uint64_t>(t.size()) << 60);
}

inline int tuple_product(const Group& G, const Tuple& t)
{
    int x = 0;
    for (int g : t) x = G.mul(x, g);
    return x;
}

inline bool generates(const Group& G, const Tuple& t)
{
    return static_cast<int>(subgroup_generated(G, t).size()) == G.n;
}

inline bool is_ske(const Group& G, const Signature& s, const Tuple& t)
{
    if (s.h != 0 || static_cast<int>(t.size()) != s.r()) return false;
    for (int k = 0; k < s.r(); ++k)
        if (t[k] < 0 || t[k] >= G.n || element_order(G, t[k]) != s.periods[k]) return false;
    return tuple_product(G, t) == 0 && generates(G, t);
}

inline void require_planar(const Signature& s)
{
    if (s.h != 0) throw UnsupportedError("only orbit genus 0 is supported, got " + s.str());
    if (s.r() > 4) throw UnsupportedError("at most 4 branch values are supported, got " + s.str());
}

// All generating vectors of G with the periods of s. Backtracks over
// elements of the right order; the last entry is forced by the product
// relation. Output is in lexicographic order of the tuples.
inline std::vector<Tuple> enumerate_skes(const Group& G, const Signature& s, int jobs = 0)
{
    require_planar(s);
    const int r = s.r();
    auto ord = element_orders(G);
    std::vector<std::vector<int>> by_period(r);
    for (int k = 0; k < r; ++k)
        for (int x = 0; x < G.n; ++x)
            if (ord[x] == s.periods[k]) by_period[k].push_back(x);
    for (auto& v : by_period)
        if (v.empty()) return {};
    std::vector<std::vector<Tuple>> chunks(by_period[0].size());
    parallel_for(by_period[0].size(), jobs, [&](std::size_t i) {
        Tuple t(r);
        t[0] = by_period[0][i];
        std::vector<Tuple>& out = chunks[i];
        std::function<void(int, int)> rec = [&](int k, int prod) {
            if (k == r - 1) {
                int last = G.inv(prod);
                if (ord[last] != s.periods[k]) return;
                t[k] = last;
                if (generates(G, t)) out.push_back(t);
                return;
            }
            for (int x : by_period[k]) {
                t[k] = x;
                rec(k + 1, G.mul(prod, x));
            }
        };
        rec(1, t[0]);
    });
    std::vector<Tuple> all;
    for (auto& c : chunks) all.insert(all.end(), c.begin(), c.end());
    return all;
}

// Lexicographic minimum of a tuple over its Aut(G)-orbit.
class AutCanon {
public:
    explicit AutCanon(std::vector<std::vector<int>> aut) : aut_(std::move(aut)) {}

    Tuple canon(const Tuple& t) const
    {
        Tuple best = t;
        const std::size_t r = t.size();
        for (const auto& a : aut_) {
            // compare coordinate by coordinate, stop at the first difference
            std::size_t k = 0;
            while (k < r && a[t[k]] == best[k]) ++k;
            if (k < r && a[t[k]] < best[k])
                for (std::size_t j = 0; j < r; ++j) best[j] = a[t[j]];
        }
        return best;
    }
    long long orbit_size(const Tuple& t) const
    {
        long long stab = 0;
        for (const auto& a : aut_) {
            bool fixed = true;
            for (std::size_t k = 0; k < t.size() && fixed; ++k) fixed = a[t[k]] == t[k];
            if (fixed) ++stab;
        }
        return static_cast<long long>(aut_.size()) / stab;
    }
    const std::vector<std::vector<int>>& auts() const { return aut_; }

private:
    std::vector<std::vector<int>> aut_;
};

inline std::vector<ActionClass> aut_classes(const std::vector<Tuple>& skes, const AutCanon& A)
{
    std::map<Tuple, long long> reps;
    for (const auto& t : skes) ++reps[A.canon(t)];
    std::vector<ActionClass> out;
    for (auto& [rep, count] : reps) out.push_back({rep, count, "aut-only", {}});
    return out;
}

// sigma_i: (..., g_i, g_{i+1}, ...) -> (..., g_i g_{i+1} g_i^-1, g_i, ...)
inline Tuple braid_move(const Group& G, const Tuple& t, int i)
{
    Tuple u = t;
    u[i] = G.conj(t[i], t[i + 1]);
    u[i + 1] = t[i];
    return u;
}

inline std::vector<int> period_pattern(const Group& G, const Tuple& t)
{
    std::vector<int> p;
    for (int x : t) p.push_back(element_order(G, x));
    return p;
}

struct OrbitResult {
    std::vector<ActionClass> classes;
    // Aut-canonical tuple (packed) with the canonical period pattern -> class
    std::unordered_map<std::uint64_t, int> class_of;

    int class_id(const AutCanon& A, const Tuple& t) const
    {
        auto it = class_of.find(pack(A.canon(t)));
        return it == class_of.end() ? -1 : it->second;
    }
};

// Topological classes: orbits under Aut(G) and the braid moves. Tuples
// whose period pattern differs from s are kept as transit states; only
// nodes with the pattern of s are reported.
inline OrbitResult hurwitz_orbits(const Group& G, const Signature& s, const std::vector<Tuple>& skes,
                                  const AutCanon& A, int jobs = 0, bool verify_moves = false)
{
    require_planar(s);
    const int r = s.r();
    std::vector<Tuple> nodes;
    std::unordered_map<std::uint64_t, int> id;
    UnionFind uf;
    auto intern = [&](const Tuple& t) {
        auto k = pack(t);
        auto it = id.find(k);
        if (it != id.end()) return it->second;
        int n = static_cast<int>(nodes.size());
        id.emplace(k, n);
        nodes.push_back(t);
        uf.add();
        return n;
    };
    std::vector<Tuple> seeds;
    for (const auto& t : skes) seeds.push_back(A.canon(t));
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
    std::vector<int> frontier;
    for (const auto& t : seeds) frontier.push_back(intern(t));
    std::vector<int> multiset = s.periods;
    std::sort(multiset.begin(), multiset.end());
    while (!frontier.empty()) {
        std::vector<std::vector<Tuple>> moved(frontier.size());
        parallel_for(frontier.size(), jobs, [&](std::size_t i) {
            const Tuple& t = nodes[frontier[i]];
            for (int k = 0; k + 1 < r; ++k) {
                Tuple u = braid_move(G, t, k);
                if (verify_moves) {
                    auto pat = period_pattern(G, u);
                    std::sort(pat.begin(), pat.end());
                    if (pat != multiset || tuple_product(G, u) != 0 || !generates(G, u))
                        throw ConsistencyError("braid move broke a generating vector");
                }
                moved[i].push_back(A.canon(u));
            }
        });
        std::vector<int> next;
        for (std::size_t i = 0; i < frontier.size(); ++i)
            for (const auto& u : moved[i]) {
                std::size_t before = nodes.size();
                int j = intern(u);
                if (nodes.size() > before) next.push_back(j);
                uf.unite(frontier[i], j);
            }
        frontier = std::move(next);
    }
    // collect pattern nodes per component
    std::map<int, std::vector<int>> comp;
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
        bool ok = true;
        for (int k = 0; k < r && ok; ++k) ok = element_order(G, nodes[i][k]) == s.periods[k];
        if (ok) comp[uf.find(i)].push_back(i);
    }
    struct Pending {
        Tuple rep;
        long long size;
        std::vector<int> members;
    };
    std::vector<Pending> pend;
    for (auto& [root, members] : comp) {
        Pending P{nodes[members[0]], 0, members};
        for (int m : members) {
            if (nodes[m] < P.rep) P.rep = nodes[m];
            P.size += A.orbit_size(nodes[m]);
        }
        pend.push_back(std::move(P));
    }
    std::sort(pend.begin(), pend.end(), [](const Pending& a, const Pending& b) { return a.rep < b.rep; });
    OrbitResult R;
    for (std::size_t c = 0; c < pend.size(); ++c) {
        R.classes.push_back({pend[c].rep, pend[c].size, "topological", {}});
        for (int m : pend[c].members) R.class_of.emplace(pack(nodes[m]), static_cast<int>(c));
    }
    return R;
}

inline bool is_triangle(const Signature& s) { return s.h == 0 && s.r() == 3; }

// Merges topological classes under the normalizer of the Fuchsian group,
// realized as permutations of equal-period slots. A swap of adjacent
// equal-period slots is carried out by the braid move, which stays a
// generating vector for nonabelian G as well.
inline std::vector<ActionClass> isomorphism_classes(const Group& G, const Signature& s, const OrbitResult& topo,
                                                    const AutCanon& A, int p)
{
    auto cands = extension_candidates(s, p);
    if (cands.empty()) {
        auto out = topo.classes;
        for (auto& c : out) c.equivalence = "isomorphism";
        return out;
    }
    if (!is_triangle(s))
        throw UnsupportedError("no normalizer data for non-maximal signature " + s.str());
    const int n = static_cast<int>(topo.classes.size());
    UnionFind uf(n);
    // all words in adjacent transpositions of equal-period slots
    for (int c = 0; c < n; ++c) {
        std::vector<Tuple> stack{topo.classes[c].representative};
        std::map<Tuple, bool> seen;
        while (!stack.empty()) {
            Tuple t = stack.back();
            stack.pop_back();
            Tuple ct = A.canon(t);
            if (seen.count(ct)) continue;
            seen[ct] = true;
            int d = topo.class_id(A, ct);
            if (d >= 0) uf.unite(c, d);
            for (int k = 0; k + 1 < s.r(); ++k)
                if (s.periods[k] == s.periods[k + 1]) stack.push_back(braid_move(G, ct, k));
        }
    }
    std::map<int, ActionClass> merged;
    for (int c = 0; c < n; ++c) {
        int root = uf.find(c);
        auto it = merged.find(root);
        if (it == merged.end()) {
            ActionClass a = topo.classes[c];
            a.equivalence = "isomorphism";
            merged.emplace(root, a);
        } else {
            it->second.orbit_size += topo.classes[c].orbit_size;
            if (topo.classes[c].representative < it->second.representative)
                it->second.representative = topo.classes[c].representative;
        }
    }
    std::vector<ActionClass> out;
    for (auto& [root, a] : merged) out.push_back(a);
    std::sort(out.begin(), out.end(),
              [](const ActionClass& a, const ActionClass& b) { return a.representative < b.representative; });
    return out;
}

// ---- extensions and full automorphism groups ----

struct Extension {
    std::shared_ptr<const Group> group;
    Signature signature;
    Tuple ske;
    ExtensionPair pair;
};

struct FullAut {
    std::shared_ptr<const Group> group;
    Signature signature;
    Tuple ske;
    std::vector<ExtensionPair> chain;  // inclusions used, innermost first
};

inline std::uint64_t group_fingerprint(const Group& G)
{
    std::uint64_t h = 1469598103934665603ull ^ static_cast<std::uint64_t>(G.n);
    for (auto x : G.tab) h = (h ^ x) * 1099511628211ull;
    return h;
}

// Everything needed to decide whether an action extends along the
// inclusions of extension_table. Catalogues, outer generating vectors and
// topological class indices are cached.
class ExtensionEngine {
public:
    explicit ExtensionEngine(int p, int jobs = 0) : p_(p), jobs_(jobs) {}

    int prime() const { return p_; }

    struct Topology {
        std::shared_ptr<const Group> group;
        Signature signature;
        std::shared_ptr<AutCanon> aut;
        std::vector<Tuple> skes;
        OrbitResult orbits;
    };

    // Cached skes, Aut(G) and topological classes of (G, s).
    const Topology& topology(const Group& G, const Signature& s)
    {
        auto key = std::make_pair(group_fingerprint(G), s.text());
        {
            std::lock_guard<std::mutex> lock(mtx_);
            auto it = topo_.find(key);
            if (it != topo_.end()) return *it->second;
        }
        auto T = std::make_unique<Topology>();
        T->group = std::make_shared<Group>(G);
        T->signature = s;
        T->aut = std::make_shared<AutCanon>(automorphism_group(G));
        T->skes = enumerate_skes(G, s, jobs_);
        T->orbits = hurwitz_orbits(G, s, T->skes, *T->aut, jobs_);
        std::lock_guard<std::mutex> lock(mtx_);
        auto [it, inserted] = topo_.emplace(key, std::move(T));
        return *it->second;
    }

    const Catalogue& catalogue_for(int order)
    {
        std::lock_guard<std::mutex> lock(mtx_);
        auto it = cats_.find(order);
        if (it != cats_.end()) return it->second;
        return cats_.emplace(order, catalogue(order, p_)).first->second;
    }

    std::vector<Extension> extend_action(const Group& G, const Signature& s, const Tuple& ske)
    {
        std::vector<Extension> out;
        auto rows = extension_candidates(s, p_);
        if (rows.empty()) return out;
        const Topology& inner = topology(G, s);
        int target = inner.orbits.class_id(*inner.aut, ske);
        if (target < 0) throw ConsistencyError("extend_action: input is not a generating vector of the signature");
        for (const auto& row : rows) {
            int order2 = row.index * G.n;
            if (order2 % (4 * p_) != 0 || (order2 / (4 * p_)) % p_ == 0) continue;
            const Catalogue& C = catalogue_for(order2);
            for (const auto& G2 : C.groups) {
                const Topology& outer = topology(G2, row.outer);
                for (const auto& cls : outer.orbits.classes) {
                    auto restricted = restrict_along(G2, cls.representative, row, G);
                    if (restricted.empty()) continue;
                    if (inner.orbits.class_id(*inner.aut, restricted) == target)
                        out.push_back({outer.group, row.outer, cls.representative, row});
                }
            }
        }
        return out;
    }

    // Restriction of an outer vector along the embedding words, moved into
    // G by an isomorphism; empty when the image is not isomorphic to G.
    Tuple restrict_along(const Group& G2, const Tuple& outer, const ExtensionPair& row, const Group& G)
    {
        Tuple imgs;
        for (const auto& w : row.embedding_words) imgs.push_back(evaluate(w, G2, outer));
        if (static_cast<int>(subgroup_generated(G2, imgs).size()) != G.n) return {};
        std::vector<int> embed;
        Group H = subgroup_as_group(G2, imgs, {}, "restriction", &embed);
        auto iso = find_isomorphism(H, G);
        if (!iso) return {};
        std::vector<int> back(G2.n, -1);
        for (int i = 0; i < H.n; ++i) back[embed[i]] = i;
        Tuple t;
        for (int x : imgs) t.push_back(iso->map[back[x]]);
        return t;
    }

    FullAut full_automorphism_group(const Group& G, const Signature& s, const Tuple& ske)
    {
        FullAut cur{std::make_shared<Group>(G), s, ske, {}};
        for (;;) {
            auto ext = extend_action(*cur.group, cur.signature, cur.ske);
            if (ext.empty()) return cur;
            const Extension* best = &ext[0];
            for (const auto& e : ext)
                if (e.pair.index > best->pair.index) best = &e;
            cur.chain.push_back(best->pair);
            cur.group = best->group;
            cur.signature = best->signature;
            cur.ske = best->ske;
        }
    }

private:
    int p_;
    int jobs_;
    std::mutex mtx_;
    std::map<int, Catalogue> cats_;
    std::map<std::pair<std::uint64_t, std::string>, std::unique_ptr<Topology>> topo_;
};

}  // namespace rsclass

#endif
