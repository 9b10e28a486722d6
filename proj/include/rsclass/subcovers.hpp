#ifndef RSCLASS_SUBCOVERS_HPP_
#define RSCLASS_SUBCOVERS_HPP_

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rsclass/actions.hpp"

namespace rsclass {

struct FixedPointReport {
    int element = 0;
    long long count = 0;
    std::vector<std::pair<int, long long>> per_branch;  // (slot, fixed cosets)
};

// Fixed points of g: cosets h<c_k> with h^-1 g h in <c_k>.
inline FixedPointReport fixed_point_count(const Group& G, const Signature& s, const Tuple& ske, int g)
{
    if (g == 0) throw GroupError("fixed_point_count: the identity fixes every point");
    FixedPointReport R;
    R.element = g;
    for (int k = 0; k < s.r(); ++k) {
        auto C = subgroup_generated(G, {ske[k]});
        std::vector<char> in(G.n, 0), done(G.n, 0);
        for (int x : C) in[x] = 1;
        long long fixed = 0;
        for (int h = 0; h < G.n; ++h) {
            if (done[h]) continue;
            for (int x : C) done[G.mul(h, x)] = 1;
            if (in[G.conj(G.inv(h), g)]) ++fixed;
        }
        R.per_branch.push_back({k, fixed});
        R.count += fixed;
    }
    return R;
}

struct QuotientData {
    int genus = 0;
    std::vector<std::vector<int>> cycles;  // per slot, cycle lengths on G/H
    Signature signature;                    // signature of H acting on X
};

// Genus of X/H from the permutation action of the vector on cosets Hx,
// cross-checked against Riemann-Hurwitz for X -> X/H with fixed-point counts.
inline QuotientData quotient_genus(const Group& G, const Signature& s, const Tuple& ske, const std::vector<int>& H)
{
    if (!is_subgroup(G, H)) throw GroupError("quotient_genus: the element set is not a subgroup");
    std::vector<int> coset(G.n, -1);
    int ncos = 0;
    for (int x = 0; x < G.n; ++x) {
        if (coset[x] >= 0) continue;
        for (int h : H) coset[G.mul(h, x)] = ncos;
        ++ncos;
    }
    std::vector<int> rep(ncos);
    for (int x = G.n - 1; x >= 0; --x) rep[coset[x]] = x;
    QuotientData Q;
    long long ram = 0;
    for (int k = 0; k < s.r(); ++k) {
        std::vector<char> seen(ncos, 0);
        std::vector<int> lens;
        for (int c = 0; c < ncos; ++c) {
            if (seen[c]) continue;
            int len = 0, cur = c;
            while (!seen[cur]) {
                seen[cur] = 1;
                ++len;
                cur = coset[G.mul(rep[cur], ske[k])];
            }
            lens.push_back(len);
            int period = s.periods[k] / len;
            if (period > 1) Q.signature.periods.push_back(period);
            ram += len - 1;
        }
        Q.cycles.push_back(lens);
    }
    long long twice = -2LL * ncos + ram + 2;  // 2g' = 2 - 2[G:H] + sum(len - 1)
    if (twice % 2 != 0 || twice < 0) throw ConsistencyError("quotient_genus: non-integral genus");
    Q.genus = static_cast<int>(twice / 2);
    Q.signature.h = Q.genus;
    std::sort(Q.signature.periods.begin(), Q.signature.periods.end());
    // second route: 2g - 2 = |H|(2g' - 2) + sum over h != 1 of |Fix(h)|
    Rational g = rh_genus(G.n, s);
    long long fix = 0;
    for (int h : H)
        if (h != 0) fix += fixed_point_count(G, s, ske, h).count;
    long long lhs = 2 * g.numerator() - 2;
    long long rhs = static_cast<long long>(H.size()) * (2LL * Q.genus - 2) + fix;
    if (g.denominator() != 1 || lhs != rhs) throw ConsistencyError("quotient_genus: the two genus computations disagree");
    return Q;
}

// First element of order p; generates the Sylow p-subgroup when it is normal.
inline int order_p_element(const Group& G, int p)
{
    for (int x = 1; x < G.n; ++x)
        if (element_order(G, x) == p) return x;
    throw GroupError("no element of order " + std::to_string(p));
}

// Exponents of the cyclic cover X/H -> X/K, K = <t>H, when H is normal in
// K and meets <t> trivially. Each K-orbit of points whose stabilizer is not
// inside H gives one branch point; its exponent e is read off from the
// rotation generator g^d of the stabilizer in K via g^d in t^e H.
inline std::vector<int> cyclic_quotient_exponents(const Group& G, const Signature& s, const Tuple& ske,
                                                  const std::vector<int>& H, int t)
{
    const int p = element_order(G, t);
    std::vector<int> gens = H;
    gens.push_back(t);
    auto K = subgroup_generated(G, gens);
    std::vector<char> inH(G.n, 0), inK(G.n, 0);
    for (int h : H) inH[h] = 1;
    for (int k : K) inK[k] = 1;
    if (static_cast<long long>(K.size()) != static_cast<long long>(H.size()) * p)
        throw GroupError("cyclic_quotient_exponents: <t> must meet H trivially");
    for (int k : K)
        for (int h : H)
            if (!inH[G.conj(k, h)]) throw GroupError("cyclic_quotient_exponents: H is not normal in <t>H");
    std::vector<int> out;
    for (int k = 0; k < s.r(); ++k) {
        const int m = s.periods[k];
        auto C = subgroup_generated(G, {ske[k]});
        std::vector<char> done(G.n, 0);
        for (int x = 0; x < G.n; ++x) {
            if (done[x]) continue;
            // mark the K-orbit of the coset x<c>
            for (int a : K)
                for (int c : C) done[G.mul(G.mul(a, x), c)] = 1;
            int g = G.conj(x, ske[k]);
            int d = 1;
            while (d <= m && !inK[G.pow(g, d)]) ++d;
            int gd = G.pow(g, d);
            if (inH[gd]) continue;
            int e = 0, y = 0;  // y = t^-e
            while (!inH[G.mul(y, gd)]) {
                y = G.mul(y, G.inv(t));
                if (++e >= p) throw ConsistencyError("cyclic_quotient_exponents: no exponent found");
            }
            out.push_back(e);
        }
    }
    return out;
}

// ---- cyclic p-gonal models ----

struct Factor {
    std::string base;  // "x", "x^2-1", "x-t", ...
    int exponent;
};

inline const std::map<std::string, std::vector<std::string>>& factor_roots()
{
    static const std::map<std::string, std::vector<std::string>> m{
        {"x", {"0"}},
        {"x-1", {"1"}},
        {"x+1", {"-1"}},
        {"x^2-1", {"1", "-1"}},
        {"x^2+1", {"i", "-i"}},
        {"x^2-t", {"sqrt(t)", "-sqrt(t)"}},
        {"x^4-1", {"1", "-1", "i", "-i"}},
        {"x^3-1", {"1", "w", "w^2"}},
        {"x^3+1", {"-1", "-w", "-w^2"}},
        {"x-t", {"t"}},
        {"x-1/t", {"1/t"}},
        {"x+t", {"-t"}},
        {"x+1/t", {"-1/t"}},
    };
    return m;
}

inline std::vector<std::string> roots_of(const std::string& base)
{
    auto& m = factor_roots();
    auto it = m.find(base);
    if (it != m.end()) return it->second;
    if (base.rfind("x-", 0) == 0) return {base.substr(2)};
    throw ParseError("unknown factor '" + base + "'");
}

struct Branch {
    std::string point;
    int exponent;
};

struct CurveModel {
    int p = 0;
    std::string family;  // F1, F2, C_j, S_j, X_p, Y_p, Z_p or generic
    int family_parameter = 0;
    std::vector<Factor> factors;
    std::string parameter;           // free parameter token, empty if none
    std::string parameter_excluded;  // values the parameter must avoid

    int degree() const
    {
        int d = 0;
        for (auto& f : factors) d += f.exponent * static_cast<int>(roots_of(f.base).size());
        return d;
    }

    // branch points with nonzero exponent, infinity last
    std::vector<Branch> branches() const
    {
        std::vector<Branch> out;
        for (auto& f : factors) {
            int e = static_cast<int>(mod(f.exponent, p));
            if (e == 0) continue;
            for (auto& r : roots_of(f.base)) out.push_back({r, e});
        }
        int inf = static_cast<int>(mod(-degree(), p));
        if (inf) out.push_back({"inf", inf});
        return out;
    }

    std::string equation() const
    {
        std::string s = "y^" + std::to_string(p) + " =";
        bool first = true;
        for (auto& f : factors) {
            s += first ? " " : "*";
            first = false;
            std::string b = f.base == "x" ? "x" : "(" + f.base + ")";
            s += b;
            if (f.exponent != 1) s += "^" + std::to_string(f.exponent);
        }
        return s;
    }

    nlohmann::json to_json() const
    {
        nlohmann::json j;
        j["p"] = p;
        j["family"] = family;
        if (family_parameter) j["family_parameter"] = family_parameter;
        j["equation"] = equation();
        j["branches"] = nlohmann::json::array();
        for (auto& b : branches()) j["branches"].push_back({{"point", b.point}, {"exponent", b.exponent}});
        if (parameter.empty())
            j["parameter"] = nullptr;
        else
            j["parameter"] = {{"name", parameter}, {"excluded", parameter_excluded}};
        return j;
    }
};

// Branch points of the T-cover grouped by slot: exponent e at coset h<c>
// with h c^(m/p) h^-1 = t^e, in order of the smallest coset element.
struct TBranchData {
    std::vector<int> slots;
    std::vector<std::vector<int>> exponents;
};

inline int discrete_log(const Group& G, int t, int x)
{
    int y = 0;
    for (int e = 0; e < G.n; ++e) {
        if (y == x) return e;
        y = G.mul(y, t);
    }
    throw GroupError("element is not a power of the generator");
}

inline TBranchData t_branch_data(const Group& G, const Signature& s, const Tuple& ske, int t, int p)
{
    TBranchData D;
    for (int k = 0; k < s.r(); ++k) {
        int m = s.periods[k];
        if (m % p != 0) continue;
        int c = ske[k];
        int cp = G.pow(c, m / p);
        auto C = subgroup_generated(G, {c});
        std::vector<char> done(G.n, 0);
        std::vector<int> es;
        for (int h = 0; h < G.n; ++h) {
            if (done[h]) continue;
            for (int x : C) done[G.mul(h, x)] = 1;
            es.push_back(discrete_log(G, t, G.conj(h, cp)));
        }
        D.slots.push_back(k);
        D.exponents.push_back(es);
    }
    return D;
}

namespace detail {

inline std::vector<int> scaled(const std::vector<int>& v, long long u, int p)
{
    std::vector<int> out;
    for (int e : v) out.push_back(static_cast<int>(mod(e * u, p)));
    return out;
}

inline bool uniform(const std::vector<int>& v) { return std::all_of(v.begin(), v.end(), [&](int e) { return e == v[0]; }); }

inline std::vector<int> sorted(std::vector<int> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

inline int res(long long e, int p) { return static_cast<int>(mod(e, p)); }

}  // namespace detail

// Assembles y^p = prod (x - b)^e for the T-cover X -> X/T = P^1. When the
// exponent pattern matches a known family, points get that family's
// coordinates after a global rescaling of the exponents (choice of t).
inline CurveModel p_gonal_exponents(const Group& G, const Signature& s, const Tuple& ske, int t)
{
    using detail::res;
    int p = element_order(G, t);
    if (!is_prime(p) || p < 5) throw GroupError("p_gonal_exponents: generator must have prime order >= 5");
    auto T = subgroup_generated(G, {t});
    if (!is_normal(G, T)) throw GroupError("p_gonal_exponents: <t> is not normal");
    if (quotient_genus(G, s, ske, T).genus != 0)
        throw UnsupportedError("p_gonal_exponents: X/T does not have genus 0");
    auto D = t_branch_data(G, s, ske, t, p);
    const int q = G.n / p;
    std::vector<std::size_t> sizes;
    for (auto& e : D.exponents) sizes.push_back(e.size());
    CurveModel M;
    M.p = p;
    auto inv = [&](int e) { return inv_mod(e, p); };

    if (q == 4 && sizes == std::vector<std::size_t>{4, 2}) {
        auto& four = D.exponents[0];
        auto& two = D.exponents[1];
        if (detail::uniform(four) && detail::uniform(two)) {
            long long u = mod(-2LL * inv(four[0]), p);
            if (detail::scaled(two, u, p) == std::vector<int>{res(4, p), res(4, p)}) {
                M.family = "F1";
                M.factors = {{"x", res(4, p)}, {"x^2-1", p - 2}, {"x^2-t", p - 2}};
                M.parameter = "t";
                M.parameter_excluded = "0, 1, -1";
                return M;
            }
        }
        long long u = inv(two[0]);
        auto t2 = detail::scaled(two, u, p);
        auto t4 = detail::sorted(detail::scaled(four, u, p));
        if (t2 == std::vector<int>{1, p - 1}) {
            int k = std::min(t4[0], p - t4[0]);
            if (t4 == detail::sorted({k, k, p - k, p - k})) {
                M.family = "F2";
                M.family_parameter = k;
                M.factors = {{"x-1", 1}, {"x-t", k}, {"x-1/t", k}, {"x+1", p - 1}, {"x+t", p - k}, {"x+1/t", p - k}};
                M.parameter = "t";
                M.parameter_excluded = "0, 1, -1, i, -i";
                return M;
            }
        }
    }
    if (q == 4 && sizes == std::vector<std::size_t>{2, 2, 2}) {
        auto& a = D.exponents[0];
        auto& b = D.exponents[1];
        auto& c = D.exponents[2];
        if (detail::uniform(a) && detail::uniform(b) && detail::uniform(c)) {
            long long u = mod(-2LL * inv(a[0]), p);
            int e2 = res(b[0] * u, p);
            int j = res(-static_cast<long long>(e2) * inv(2), p);
            if (res(c[0] * u, p) == res(2 * j + 2, p)) {
                M.family = "C_j";
                M.family_parameter = j;
                M.factors = {{"x", res(2 * j + 2, p)}, {"x^2-1", p - 2}, {"x^2+1", res(p - 2 * j, p)}};
                return M;
            }
        }
    }
    if (q == 4 && sizes == std::vector<std::size_t>{4, 1, 1} && detail::uniform(D.exponents[0])) {
        for (int pick : {1, 2}) {
            long long u = mod(4LL * inv(D.exponents[pick][0]), p);
            int sexp = res(D.exponents[0][0] * u, p);
            int j = inv(sexp);
            if (j <= (p - 1) / 2) {
                M.family = "S_j";
                M.family_parameter = j;
                M.factors = {{"x", 4}, {"x^4-1", sexp}};
                return M;
            }
        }
    }
    if (q == 8 && sizes == std::vector<std::size_t>{4, 2} && detail::uniform(D.exponents[0])) {
        long long u = mod(-2LL * inv(D.exponents[0][0]), p);
        if (detail::scaled(D.exponents[1], u, p) == std::vector<int>{4, 4}) {
            M.family = "X_p";
            M.factors = {{"x", 4}, {"x^4-1", p - 2}};
            return M;
        }
    }
    if (q == 12 && sizes == std::vector<std::size_t>{6}) {
        auto& e = D.exponents[0];
        std::map<int, int> classes;
        for (int x : e) ++classes[x];
        if (classes.size() == 2) {
            long long u = inv(e[0]);
            if (detail::sorted(detail::scaled(e, u, p)) == detail::sorted({1, 1, 1, p - 1, p - 1, p - 1})) {
                M.family = "Y_p";
                M.factors = {{"x^3-1", 1}, {"x^3+1", p - 1}};
                return M;
            }
        }
        if (classes.size() == 3) {
            long long u = mod(2LL * inv(e[0]), p);
            auto sc = detail::scaled(e, u, p);
            int r = 0;
            for (int c = 2; c < p && !r; ++c)
                if (res(1LL * c * c + c + 1, p) == 0) r = c;
            if (r && detail::sorted(sc) == detail::sorted({2, 2, res(2 * r, p), res(2 * r, p), res(2LL * r * r, p),
                                                           res(2LL * r * r, p)})) {
                M.family = "Z_p";
                M.family_parameter = r;
                M.factors = {{"x", 2}, {"x^2-1", res(2 * r, p)}, {"x^2+1", res(2LL * r * r, p)}};
                return M;
            }
        }
    }
    // no known normalization: abstract points, first exponent scaled to 1
    M.family = "generic";
    long long u = inv(D.exponents.at(0).at(0));
    int idx = 1;
    for (auto& es : D.exponents)
        for (int e : es) M.factors.push_back({"x-b" + std::to_string(idx++), res(e * u, p)});
    return M;
}

}  // namespace rsclass

#endif
