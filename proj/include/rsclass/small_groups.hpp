#ifndef RSCLASS_SMALL_GROUPS_HPP_
#define RSCLASS_SMALL_GROUPS_HPP_

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "rsclass/named_groups.hpp"

namespace rsclass {

// Number of isomorphism types of groups of order n, for the orders the
// generic builder is expected to reach.
inline int known_group_count(int n)
{
    static const std::map<int, int> counts{
        {1, 1},  {2, 1},  {3, 1},  {4, 2},   {5, 1},  {6, 2},  {7, 1},  {8, 5},  {9, 2},  {10, 2},
        {11, 1}, {12, 5}, {13, 1}, {14, 2},  {15, 1}, {16, 14}, {17, 1}, {18, 5}, {19, 1}, {20, 5},
        {21, 2}, {22, 2}, {23, 1}, {24, 15}, {25, 2}, {26, 2}, {27, 5}, {28, 4}, {29, 1}, {30, 4},
        {33, 1}, {35, 1}, {36, 14}, {40, 14}, {44, 4}, {52, 5}, {56, 13}, {60, 13}, {68, 5}, {76, 4},
        {84, 15}};
    auto it = counts.find(n);
    return it == counts.end() ? -1 : it->second;
}

struct SmallGroupList {
    std::vector<Group> groups;
    bool complete = false;  // count matches the known number of types
};

namespace detail {

inline void add_if_new(std::vector<Group>& out, std::vector<std::vector<long long>>& invs, Group G)
{
    auto inv = group_invariants(G);
    for (std::size_t i = 0; i < out.size(); ++i)
        if (invs[i] == inv && are_isomorphic(out[i], G)) return;
    out.push_back(std::move(G));
    invs.push_back(std::move(inv));
}

inline SmallGroupList build_small_groups(int n);

}  // namespace detail

// All groups of order n reachable as cyclic, dicyclic, or split extensions
// of smaller groups. Orders 4, 8 and 12 are written out directly.
inline const SmallGroupList& small_groups(int n)
{
    static std::mutex mtx;
    static std::map<int, SmallGroupList> cache;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    SmallGroupList built = detail::build_small_groups(n);
    std::lock_guard<std::mutex> lock(mtx);
    auto [it, inserted] = cache.emplace(n, std::move(built));
    return it->second;
}

namespace detail {

inline SmallGroupList build_small_groups(int n)
{
    SmallGroupList L;
    std::vector<std::vector<long long>> invs;
    if (n == 4) {
        L.groups = {cyclic(4), elementary_abelian(2, 2, {"a", "b"})};
    } else if (n == 8) {
        L.groups = {cyclic(8), direct(cyclic(4, "a"), cyclic(2, "b"), "Z4xZ2"),
                    elementary_abelian(2, 3, {"a", "b", "c"}), dihedral(4), dicyclic(2)};
        L.groups[4].tag = "Q8";
    } else if (n == 12) {
        L.groups = {cyclic(12), direct(cyclic(6, "a"), cyclic(2, "b"), "Z6xZ2"), dihedral(6), alt4(),
                    dicyclic(3)};
    } else {
        add_if_new(L.groups, invs, cyclic(n));
        if (n % 4 == 0 && n > 4) add_if_new(L.groups, invs, dicyclic(n / 4));
        for (int a = 2; a < n; ++a) {
            if (n % a) continue;
            int b = n / a;
            const auto& As = small_groups(a).groups;
            const auto& Bs = small_groups(b).groups;
            for (const auto& A : As) {
                auto autA = automorphism_group(A);
                for (const auto& B : Bs) {
                    std::vector<std::vector<std::vector<int>>> phis;
                    for_each_coupling(A, autA, B, [&](const std::vector<std::vector<int>>& imgs, int) {
                        phis.push_back(imgs);
                        return true;
                    });
                    for (auto& phi : phis) add_if_new(L.groups, invs, semidirect(A, B, phi));
                }
            }
        }
    }
    int known = known_group_count(n);
    L.complete = known >= 0 && static_cast<int>(L.groups.size()) == known;
    return L;
}

}  // namespace detail

struct Catalogue {
    std::vector<Group> groups;
    bool complete = false;  // every group of the order is listed
    std::string note;
};

// Groups of order 4*lambda*p with a non-normal Sylow p-subgroup, written
// out by hand; the order is fully covered when listed here.
inline std::vector<Group> special_groups(int order, int p)
{
    std::vector<Group> out;
    if (order == 56 && p == 7) {
        Group V = elementary_abelian(2, 3, {"a", "b", "c"});
        out.push_back(semidirect(V, cyclic(7, "d"), find_coupling(V, cyclic(7, "d"), 7), "Z2^3:Z7"));
    } else if (order == 60 && p == 5) {
        out.push_back(alt5());
    } else if (order == 80 && p == 5) {
        Group V = elementary_abelian(2, 4, {"a", "b", "c", "d"});
        out.push_back(semidirect(V, cyclic(5, "e"), find_coupling(V, cyclic(5, "e"), 5), "Z2^4:Z5"));
    } else if (order == 120 && p == 5) {
        out.push_back(sym5());
        out.push_back(sl25());
        out.push_back(direct(alt5(), cyclic(2, "c"), "A5xZ2"));
    } else if (order == 168 && p == 7) {
        out.push_back(psl27());
        out.push_back(agaml18());
        Group V = elementary_abelian(2, 3, {"b", "c", "d"});
        Group F = semidirect(V, cyclic(7, "e"), find_coupling(V, cyclic(7, "e"), 7), "Z2^3:Z7");
        out.push_back(direct(cyclic(3, "a"), F, "Z3x(Z2^3:Z7)"));
    }
    return out;
}

// Orders where a short argument (beyond the congruence n_p = 1 mod p)
// shows the Sylow p-subgroup is normal.
inline bool sylow_normal_by_argument(int order, int p)
{
    // 280 = 8*5*7: 56 Sylow 5-subgroups would force a normal Sylow 2- or
    // 7-subgroup, and either one makes the Sylow 5-subgroup normal.
    return order == 280 && p == 5;
}

inline bool sylow_forced_normal(int order, int p)
{
    int m = order / p;
    for (int d = 2; d <= m; ++d)
        if (m % d == 0 && d % p == 1) return false;
    return true;
}

// All groups of order 4*lambda*p (p prime >= 5, p not dividing lambda):
// Z_p x|_phi H over every H of order 4*lambda and every coupling up to
// Aut(H), plus the hand-written groups with non-normal Sylow p.
inline Catalogue catalogue(int order, int p)
{
    if (p < 5 || !is_prime(p)) throw GroupError("catalogue: p must be a prime >= 5");
    if (order % (4 * p) != 0) throw GroupError("catalogue: order must be 4*lambda*p");
    int lambda = order / (4 * p);
    if (lambda % p == 0) throw GroupError("catalogue: p divides lambda, Sylow p-subgroup is not cyclic of order p");
    Catalogue C;
    const auto& Hs = small_groups(4 * lambda);
    // generator of the unit group mod p
    long long g = 2;
    while (true) {
        bool prim = true;
        for (int q = 2; q < p - 1 && prim; ++q)
            if ((p - 1) % q == 0 && is_prime(q) && pow_mod(g, (p - 1) / q, p) == 1) prim = false;
        if (prim) break;
        ++g;
    }
    Group U = cyclic(p - 1);
    Group P = cyclic(p, "t");
    for (const auto& H : Hs.groups) {
        auto autH = automorphism_group(H);
        auto ordH = element_orders(H);
        std::vector<std::vector<int>> seen;
        // enumerate homs H -> U by generator images
        const int k = static_cast<int>(H.gens.size());
        std::vector<int> img(k, 0);
        std::function<void(int)> rec = [&](int depth) {
            if (depth == k) {
                auto f = extend_hom_any(H, H.gens, U, img);
                if (!f) return;
                std::vector<int> best = *f;
                for (const auto& a : autH) {
                    auto fa = compose(*f, a);
                    if (fa < best) best = fa;
                }
                for (const auto& s : seen)
                    if (s == best) return;
                seen.push_back(best);
                std::vector<std::vector<int>> phi;
                for (int j = 0; j < k; ++j) phi.push_back(cyclic_unit_map(P, pow_mod(g, img[j], p)));
                int image = 0;
                {
                    std::vector<char> used(U.n, 0);
                    for (int x : *f)
                        if (!used[x]) {
                            used[x] = 1;
                            ++image;
                        }
                }
                std::string tag = image == 1 ? "Z" + std::to_string(p) + "x(" + H.tag + ")"
                                             : "Z" + std::to_string(p) + ":" + std::to_string(image) + "(" +
                                                   H.tag + ")";
                C.groups.push_back(semidirect(P, H, phi, tag));
                return;
            }
            for (int u = 0; u < U.n; ++u) {
                if (ordH[H.gens[depth]] % element_order(U, u) != 0) continue;
                img[depth] = u;
                rec(depth + 1);
            }
        };
        rec(0);
    }
    for (auto& S : special_groups(order, p)) C.groups.push_back(std::move(S));
    bool normal = sylow_forced_normal(order, p) || sylow_normal_by_argument(order, p);
    bool covered = !special_groups(order, p).empty();
    C.complete = Hs.complete && (normal || covered);
    if (!Hs.complete) C.note = "small-group list for order " + std::to_string(4 * lambda) + " is incomplete";
    else if (!C.complete)
        C.note = "groups of order " + std::to_string(order) + " with non-normal Sylow " + std::to_string(p) +
                 "-subgroup are not covered";
    return C;
}

}  // namespace rsclass

#endif
