#ifndef RSCLASS_JACOBIAN_HPP_
#define RSCLASS_JACOBIAN_HPP_

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "rsclass/cyclotomic.hpp"
#include "rsclass/subcovers.hpp"

namespace rsclass {

using Cyc = CyclotomicRing::Elem;

struct CharacterTable {
    int order = 0;
    std::vector<std::vector<int>> classes;
    std::vector<int> reps;
    std::vector<int> class_of;       // element -> class
    std::vector<int> inverse_class;  // class of x^-1
    CyclotomicRing ring;
    std::vector<std::vector<Cyc>> chars;  // chars[i][k] = value on class k
    std::vector<int> degrees;
    std::vector<std::vector<int>> power_class;  // [k][a mod e]
    // eigen[chi][k][a]: multiplicity of exp(2 pi i a / o) as an eigenvalue
    // of the representation at the class representative of order o
    std::vector<std::vector<std::vector<int>>> eigen;

    int size() const { return static_cast<int>(chars.size()); }
    const Cyc& value(int chi, int element) const { return chars[chi][class_of[element]]; }
};

namespace detail {

using Mat = std::vector<std::vector<long long>>;

inline long long primitive_root(long long q)
{
    std::vector<long long> f;
    long long n = q - 1;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            f.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) f.push_back(n);
    for (long long g = 2; g < q; ++g) {
        bool ok = true;
        for (long long d : f) ok = ok && pow_mod(g, (q - 1) / d, q) != 1;
        if (ok) return g;
    }
    throw ConsistencyError("no primitive root");
}

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<int> rref(Mat& M, long long q)
{
    std::vector<int> piv;
    std::size_t row = 0;
    const std::size_t cols = M.empty() ? 0 : M[0].size();
    for (std::size_t c = 0; c < cols && row < M.size(); ++c) {
        std::size_t sel = row;
        while (sel < M.size() && M[sel][c] == 0) ++sel;
        if (sel == M.size()) continue;
        std::swap(M[row], M[sel]);
        long long iv = inv_mod(M[row][c], q);
        for (auto& x : M[row]) x = x * iv % q;
        for (std::size_t i = 0; i < M.size(); ++i) {
            if (i == row || M[i][c] == 0) continue;
            long long f = M[i][c];
            for (std::size_t j = 0; j < cols; ++j) M[i][j] = mod(M[i][j] - f * M[row][j], q);
        }
        piv.push_back(static_cast<int>(c));
        ++row;
    }
    M.resize(row);
    return piv;
}

// Basis of {y : B y = 0}.
inline Mat nullspace(Mat B, long long q)
{
    const int d = static_cast<int>(B.size());
    auto piv = rref(B, q);
    std::vector<char> is_piv(d, 0);
    for (int c : piv) is_piv[c] = 1;
    Mat out;
    for (int f = 0; f < d; ++f) {
        if (is_piv[f]) continue;
        std::vector<long long> y(d, 0);
        y[f] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) y[piv[r]] = mod(-B[r][f], q);
        out.push_back(y);
    }
    return out;
}

// Characteristic polynomial by Faddeev-LeVerrier, lowest degree first.
inline std::vector<long long> charpoly(const Mat& A, long long q)
{
    const int d = static_cast<int>(A.size());
    std::vector<long long> c(d + 1, 0);
    c[d] = 1;
    Mat M(d, std::vector<long long>(d, 0));
    for (int k = 1; k <= d; ++k) {
        Mat N(d, std::vector<long long>(d, 0));
        for (int i = 0; i < d; ++i)
            for (int l = 0; l < d; ++l) {
                if (A[i][l] == 0) continue;
                for (int j = 0; j < d; ++j) N[i][j] = (N[i][j] + A[i][l] * M[l][j]) % q;
            }
        for (int i = 0; i < d; ++i) N[i][i] = (N[i][i] + c[d - k + 1]) % q;
        M = N;
        long long tr = 0;
        for (int i = 0; i < d; ++i)
            for (int l = 0; l < d; ++l) tr = (tr + A[i][l] * M[l][i]) % q;
        c[d - k] = mod(-tr * inv_mod(k, q), q);
    }
    return c;
}

}  // namespace detail

// Character table by Dixon's method: common eigenvectors of the class
// matrices modulo a prime q = 1 mod exp(G), lifted to Z[zeta_e] through
// eigenvalue multiplicities. Orthogonality is checked exactly.
inline CharacterTable character_table(const Group& G)
{
    using detail::Mat;
    CharacterTable T;
    T.order = G.n;
    T.classes = conjugacy_classes(G);
    T.class_of = class_index(G, T.classes);
    const int r = static_cast<int>(T.classes.size());
    for (auto& c : T.classes) T.reps.push_back(c[0]);
    for (int k = 0; k < r; ++k) T.inverse_class.push_back(T.class_of[G.inv(T.reps[k])]);
    const int e = exponent(G);
    T.ring = CyclotomicRing(e);
    T.power_class.assign(r, std::vector<int>(e));
    for (int k = 0; k < r; ++k) {
        int y = 0;
        for (int a = 0; a < e; ++a) {
            T.power_class[k][a] = T.class_of[y];
            y = G.mul(y, T.reps[k]);
        }
    }
    long long q = e + 1;
    while (q <= 2LL * G.n + 2 || !is_prime(q)) q += e;

    // a[i][j][k] = #{x in C_i : x^-1 z_k in C_j}
    std::vector<Mat> A(r, Mat(r, std::vector<long long>(r, 0)));
    for (int k = 0; k < r; ++k)
        for (int i = 0; i < r; ++i)
            for (int x : T.classes[i]) ++A[i][T.class_of[G.mul(G.inv(x), T.reps[k])]][k];

    std::mt19937_64 rng(20240611);
    Mat id(r, std::vector<long long>(r, 0));
    for (int i = 0; i < r; ++i) id[i][i] = 1;
    std::vector<Mat> spaces{id};
    Mat vecs;
    int stalls = 0;
    while (!spaces.empty()) {
        Mat V = spaces.back();
        spaces.pop_back();
        if (V.size() == 1) {
            vecs.push_back(V[0]);
            continue;
        }
        auto piv = detail::rref(V, q);
        const int d = static_cast<int>(V.size());
        Mat C(r, std::vector<long long>(r, 0));
        for (int i = 0; i < r; ++i) {
            long long c = static_cast<long long>(rng() % q);
            for (int j = 0; j < r; ++j)
                for (int k = 0; k < r; ++k) C[j][k] = (C[j][k] + c * A[i][j][k]) % q;
        }
        Mat B(d, std::vector<long long>(d, 0));  // C v_l = sum_m B[m][l] v_m
        for (int l = 0; l < d; ++l) {
            std::vector<long long> w(r, 0);
            for (int j = 0; j < r; ++j)
                for (int k = 0; k < r; ++k) w[j] = (w[j] + C[j][k] * V[l][k]) % q;
            for (int m = 0; m < d; ++m) B[m][l] = w[piv[m]];
        }
        auto cp = detail::charpoly(B, q);
        std::vector<long long> roots;
        for (long long lam = 0; lam < q; ++lam) {
            long long v = 0;
            for (int i = d; i >= 0; --i) v = (v * lam + cp[i]) % q;
            if (v == 0) roots.push_back(lam);
        }
        if (roots.size() == 1) {
            if (++stalls > 200) throw ConsistencyError("character_table: eigenspaces do not split");
            spaces.push_back(V);
            continue;
        }
        int total = 0;
        for (long long lam : roots) {
            Mat Bl = B;
            for (int m = 0; m < d; ++m) Bl[m][m] = mod(Bl[m][m] - lam, q);
            Mat sub;
            for (auto& y : detail::nullspace(Bl, q)) {
                std::vector<long long> w(r, 0);
                for (int m = 0; m < d; ++m)
                    for (int k = 0; k < r; ++k) w[k] = (w[k] + y[m] * V[m][k]) % q;
                sub.push_back(w);
            }
            total += static_cast<int>(sub.size());
            spaces.push_back(sub);
        }
        if (total != d) throw ConsistencyError("character_table: class matrices not diagonalizable mod q");
    }
    if (static_cast<int>(vecs.size()) != r) throw ConsistencyError("character_table: wrong number of characters");

    const long long Z = pow_mod(detail::primitive_root(q), (q - 1) / e, q);
    long long deg_sq_total = 0;
    for (auto& w : vecs) {
        if (w[0] == 0) throw ConsistencyError("character_table: eigenvector vanishes at the identity");
        long long n0 = inv_mod(w[0], q);
        for (auto& x : w) x = x * n0 % q;
        long long S = 0;
        for (int k = 0; k < r; ++k)
            S = (S + w[k] * w[T.inverse_class[k]] % q * inv_mod(static_cast<long long>(T.classes[k].size()), q)) % q;
        long long d2 = static_cast<long long>(G.n) % q * inv_mod(S, q) % q;
        long long d = 1;
        while (d * d < d2) ++d;
        if (d * d != d2) throw ConsistencyError("character_table: degree is not an integer");
        deg_sq_total += d2;
        std::vector<long long> chi(r);
        for (int k = 0; k < r; ++k)
            chi[k] = d % q * w[k] % q * inv_mod(static_cast<long long>(T.classes[k].size()), q) % q;
        std::vector<Cyc> vals;
        std::vector<std::vector<int>> eig;
        for (int k = 0; k < r; ++k) {
            eig.emplace_back();
            int o = element_order(G, T.reps[k]);
            int step = e / o;
            long long io = inv_mod(o, q);
            Cyc v = T.ring.zero();
            for (int a = 0; a < o; ++a) {
                long long m = 0;
                for (int j = 0; j < o; ++j)
                    m = (m + chi[T.power_class[k][j]] * pow_mod(Z, mod(-1LL * step * j * a, e), q)) % q;
                m = m * io % q;
                if (m > d) throw ConsistencyError("character_table: eigenvalue multiplicity out of range");
                eig.back().push_back(static_cast<int>(m));
                T.ring.add_to(v, T.ring.zeta(static_cast<long long>(step) * a), m);
            }
            vals.push_back(v);
        }
        T.chars.push_back(vals);
        T.eigen.push_back(eig);
        T.degrees.push_back(static_cast<int>(d));
    }
    if (deg_sq_total != G.n) throw ConsistencyError("character_table: squared degrees do not sum to |G|");

    // trivial first, then by degree and values
    std::vector<int> order(r);
    for (int i = 0; i < r; ++i) order[i] = i;
    auto trivial = [&](int i) {
        for (auto& v : T.chars[i])
            if (v != T.ring.one()) return false;
        return true;
    };
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::make_tuple(!trivial(a), T.degrees[a], T.chars[a]) <
               std::make_tuple(!trivial(b), T.degrees[b], T.chars[b]);
    });
    CharacterTable S = T;
    for (int i = 0; i < r; ++i) {
        S.chars[i] = T.chars[order[i]];
        S.degrees[i] = T.degrees[order[i]];
        S.eigen[i] = T.eigen[order[i]];
    }
    // exact row orthogonality
    for (int i = 0; i < r; ++i)
        for (int j = i; j < r; ++j) {
            Cyc acc = S.ring.zero();
            for (int k = 0; k < r; ++k)
                S.ring.add_to(acc, S.ring.mul(S.chars[i][k], S.chars[j][S.inverse_class[k]]),
                              static_cast<long long>(S.classes[k].size()));
            Cyc want = S.ring.from_int(i == j ? G.n : 0);
            if (acc != want) throw ConsistencyError("character_table: row orthogonality fails");
        }
    // exact discrete Fourier transform of each character along each cyclic
    // subgroup must reproduce the eigenvalue counts found modulo q
    const int phi = S.ring.degree();
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < r; ++k) {
            const int o = static_cast<int>(S.eigen[i][k].size()), step = e / o;
            for (int a = 0; a < o; ++a) {
                std::vector<long long> acc(e, 0);  // coordinates on 1, z, ..., z^(e-1)
                for (int j = 0; j < o; ++j) {
                    const Cyc& v = S.chars[i][S.power_class[k][j]];
                    int shift = static_cast<int>(mod(-1LL * step * a * j, e));
                    for (int c = 0; c < phi; ++c)
                        if (v[c]) acc[(c + shift) % e] += v[c];
                }
                Cyc red = S.ring.zero();
                for (int t = 0; t < e; ++t)
                    if (acc[t]) S.ring.add_to(red, S.ring.zeta(t), acc[t]);
                if (red != S.ring.from_int(1LL * o * S.eigen[i][k][a]))
                    throw ConsistencyError("character_table: eigenvalue counts fail the exact check");
            }
        }
    return S;
}

inline const CharacterTable& cached_character_table(const Group& G)
{
    static std::mutex mtx;
    static std::map<std::uint64_t, std::unique_ptr<CharacterTable>> cache;
    auto key = group_fingerprint(G);
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) return *it->second;
    }
    auto T = std::make_unique<CharacterTable>(character_table(G));
    std::lock_guard<std::mutex> lock(mtx);
    return *cache.emplace(key, std::move(T)).first->second;
}

struct RationalIrrep {
    std::vector<int> orbit;
    int field_degree = 1;
    int schur_index = 1;
    int degree = 1;
};

// Galois orbits: the conjugate of chi under zeta -> zeta^a is chi(g^a).
inline std::vector<RationalIrrep> rational_irreps(const CharacterTable& T)
{
    const int r = T.size(), e = T.ring.order();
    std::map<std::vector<Cyc>, int> index;
    for (int i = 0; i < r; ++i) index[T.chars[i]] = i;
    std::vector<char> done(r, 0);
    std::vector<RationalIrrep> out;
    for (int i = 0; i < r; ++i) {
        if (done[i]) continue;
        std::vector<int> orbit;
        for (int a = 1; a <= e; ++a) {
            if (std::gcd(a, e) != 1) continue;
            std::vector<Cyc> conj(r);
            for (int k = 0; k < r; ++k) conj[k] = T.chars[i][T.power_class[k][a % e]];
            auto it = index.find(conj);
            if (it == index.end()) throw ConsistencyError("rational_irreps: Galois conjugate is not a character");
            if (!done[it->second]) {
                done[it->second] = 1;
                orbit.push_back(it->second);
            }
        }
        std::sort(orbit.begin(), orbit.end());
        out.push_back({orbit, static_cast<int>(orbit.size()), 1, T.degrees[i]});
    }
    return out;
}

inline bool is_trivial_character(const CharacterTable& T, int chi) { return chi == 0; }

// Multiplicity of the irreducible chi in the holomorphic differentials.
inline int chevalley_weil(const CharacterTable& T, int chi, const Group& G, const Signature& s, const Tuple& ske)
{
    if (s.h != 0) throw UnsupportedError("chevalley_weil: only orbit genus 0 is supported");
    (void)G;
    if (is_trivial_character(T, chi)) return 0;
    Rational mu(-T.degrees[chi]);
    for (int k = 0; k < s.r(); ++k) {
        const auto& N = T.eigen[chi][T.class_of[ske[k]]];
        const int m = s.periods[k];
        if (static_cast<int>(N.size()) != m) throw ConsistencyError("chevalley_weil: period does not match the element order");
        for (int alpha = 1; alpha < m; ++alpha) mu += Rational(1LL * N[alpha] * alpha, m);
    }
    if (mu.denominator() != 1 || mu.numerator() < 0)
        throw ConsistencyError("chevalley_weil: multiplicity " + to_string(mu) + " is not a nonnegative integer");
    return static_cast<int>(mu.numerator());
}

// <Res_H chi, 1_H>
inline int fixed_dimension(const CharacterTable& T, int chi, const std::vector<int>& H)
{
    Cyc acc = T.ring.zero();
    for (int h : H) T.ring.add_to(acc, T.value(chi, h));
    Cyc v = T.ring.divide_exact(acc, static_cast<long long>(H.size()));
    if (!T.ring.is_integer(v)) throw ConsistencyError("fixed_dimension: not an integer");
    return static_cast<int>(v[0]);
}

struct DecompositionRow {
    int irrep_id = 0;
    std::vector<int> characters;
    int degree = 1;
    int field_degree = 1;
    int schur_index = 1;
    int n = 1;
    int dim = 0;
};

struct SubgroupGenus {
    std::string name;
    std::vector<int> elements;
    int genus = 0;
};

struct PrymDim {
    std::string sub;    // smaller subgroup H'
    std::string super;  // larger subgroup H
    int dim = 0;        // g(X/H') - g(X/H)
};

struct DecompositionReport {
    std::vector<DecompositionRow> rows;
    std::vector<SubgroupGenus> quotients;
    std::vector<PrymDim> pryms;

    int total() const
    {
        int t = 0;
        for (auto& r : rows) t += r.n * r.dim;
        return t;
    }
    std::vector<DecompositionRow> nonzero() const
    {
        std::vector<DecompositionRow> out;
        for (auto& r : rows)
            if (r.dim) out.push_back(r);
        return out;
    }
    nlohmann::json to_json() const
    {
        nlohmann::json j;
        j["factors"] = nlohmann::json::array();
        for (auto& r : rows)
            j["factors"].push_back({{"irrep_id", r.irrep_id},
                                    {"degree", r.degree},
                                    {"field_degree", r.field_degree},
                                    {"schur_index", r.schur_index},
                                    {"n", r.n},
                                    {"dim", r.dim}});
        j["quotients"] = nlohmann::json::array();
        for (auto& q : quotients) j["quotients"].push_back({{"subgroup", q.name}, {"genus", q.genus}});
        j["pryms"] = nlohmann::json::array();
        for (auto& p : pryms) j["pryms"].push_back({{"sub", p.sub}, {"super", p.super}, {"dim", p.dim}});
        return j;
    }
};

inline std::string subgroup_name(const Group& G, const std::vector<int>& gens)
{
    std::string s = "<";
    for (std::size_t i = 0; i < gens.size(); ++i) s += (i ? "," : "") + G.names[gens[i]];
    return s + ">";
}

// Genus of X/H from the multiplicities: sum of mu(chi) * <Res_H chi, 1>.
inline int quotient_genus_from_characters(const CharacterTable& T, const std::vector<int>& mu,
                                          const std::vector<int>& H)
{
    int g = 0;
    for (int i = 0; i < T.size(); ++i)
        if (mu[i]) g += mu[i] * fixed_dimension(T, i, H);
    return g;
}

// Isotypical dimensions of JX. Quotients are computed for every cyclic
// subgroup plus `extra`, each by coset cycles and by characters.
inline DecompositionReport group_algebra_decomposition(const Group& G, const Signature& s, const Tuple& ske,
                                                       bool with_quotients = true,
                                                       const std::vector<std::vector<int>>& extra = {})
{
    const CharacterTable& T = cached_character_table(G);
    auto irreps = rational_irreps(T);
    std::vector<int> mu(T.size(), 0);
    for (int i = 0; i < T.size(); ++i) mu[i] = chevalley_weil(T, i, G, s, ske);
    DecompositionReport R;
    for (std::size_t w = 0; w < irreps.size(); ++w) {
        DecompositionRow row;
        row.irrep_id = static_cast<int>(w);
        row.characters = irreps[w].orbit;
        row.degree = irreps[w].degree;
        row.field_degree = irreps[w].field_degree;
        row.schur_index = irreps[w].schur_index;
        row.n = row.degree / row.schur_index;
        for (int c : row.characters) row.dim += mu[c];
        row.dim *= row.schur_index;
        R.rows.push_back(row);
    }
    Rational g = rh_genus(G.n, s);
    if (Rational(R.total()) != g) throw ConsistencyError("group_algebra_decomposition: dimensions do not add up to the genus");
    if (!with_quotients) return R;
    std::vector<std::pair<std::vector<int>, std::vector<int>>> subs;  // (elements, generators)
    for (int x = 0; x < G.n; ++x) {
        auto H = subgroup_generated(G, {x});
        bool seen = false;
        for (auto& sh : subs) seen = seen || sh.first == H;
        if (!seen) subs.push_back({H, {x}});
    }
    for (auto& H : extra) {
        auto S = subgroup_generated(G, H);
        bool seen = false;
        for (auto& sh : subs) seen = seen || sh.first == S;
        if (!seen) subs.push_back({S, H});
    }
    for (auto& [H, gens] : subs) {
        int by_cosets = quotient_genus(G, s, ske, H).genus;
        int by_chars = quotient_genus_from_characters(T, mu, H);
        if (by_cosets != by_chars) throw ConsistencyError("quotient genus disagrees between cosets and characters");
        R.quotients.push_back({subgroup_name(G, gens), H, by_cosets});
    }
    for (auto& a : R.quotients)
        for (auto& b : R.quotients) {
            if (a.elements.size() >= b.elements.size()) continue;
            if (!std::includes(b.elements.begin(), b.elements.end(), a.elements.begin(), a.elements.end())) continue;
            int d = a.genus - b.genus;
            if (d < 0) throw ConsistencyError("negative Prym dimension");
            R.pryms.push_back({a.name, b.name, d});
        }
    return R;
}

}  // namespace rsclass

#endif
