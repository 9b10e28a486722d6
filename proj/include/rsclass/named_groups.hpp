#ifndef RSCLASS_NAMED_GROUPS_HPP_
#define RSCLASS_NAMED_GROUPS_HPP_

#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "rsclass/group.hpp"

namespace rsclass {

// Searches homomorphisms B -> Aut(A) given as one automorphism per
// generator of B. Every hom is passed to visit(images, image_order);
// visit returns false to stop.
template <typename Visit>
void for_each_coupling(const Group& A, const std::vector<std::vector<int>>& autA, const Group& B, Visit&& visit)
{
    const int k = static_cast<int>(B.gens.size());
    auto ordB = element_orders(B);
    // order of each automorphism, to prune images early
    std::vector<int> aut_order(autA.size());
    for (std::size_t i = 0; i < autA.size(); ++i) {
        auto f = autA[i];
        int o = 1;
        std::vector<int> id(A.n);
        std::iota(id.begin(), id.end(), 0);
        while (f != id) {
            f = compose(autA[i], f);
            ++o;
        }
        aut_order[i] = o;
    }
    std::vector<int> choice(k, 0);
    bool stop = false;
    std::function<void(int)> rec = [&](int depth) {
        if (stop) return;
        if (depth == k) {
            std::vector<std::vector<int>> imgs;
            for (int c : choice) imgs.push_back(autA[c]);
            std::vector<int> id(A.n);
            std::iota(id.begin(), id.end(), 0);
            std::vector<std::vector<int>> act(B.n);
            act[0] = id;
            std::vector<int> queue{0};
            for (std::size_t q = 0; q < queue.size(); ++q) {
                int h = queue[q];
                for (int j = 0; j < k; ++j) {
                    int y = B.mul(h, B.gens[j]);
                    auto img = compose(act[h], imgs[j]);
                    if (act[y].empty()) {
                        act[y] = std::move(img);
                        queue.push_back(y);
                    } else if (act[y] != img) {
                        return;
                    }
                }
            }
            std::sort(act.begin(), act.end());
            int image = static_cast<int>(std::unique(act.begin(), act.end()) - act.begin());
            if (!visit(imgs, image)) stop = true;
            return;
        }
        for (std::size_t c = 0; c < autA.size() && !stop; ++c) {
            if (ordB[B.gens[depth]] % aut_order[c] != 0) continue;
            choice[depth] = static_cast<int>(c);
            rec(depth + 1);
        }
    };
    rec(0);
}

// First coupling B -> Aut(A) whose image has order k (k = 0 means faithful).
inline std::vector<std::vector<int>> find_coupling(const Group& A, const Group& B, int k)
{
    auto autA = automorphism_group(A);
    if (k == 0) k = B.n;
    std::vector<std::vector<int>> found;
    for_each_coupling(A, autA, B, [&](const std::vector<std::vector<int>>& imgs, int image) {
        if (image == k) {
            found = imgs;
            return false;
        }
        return true;
    });
    if (found.empty())
        throw GroupError("no action of " + B.tag + " on " + A.tag + " with image of order " + std::to_string(k));
    return found;
}

// Automorphism n -> u*n of a cyclic group built by cyclic().
inline std::vector<int> cyclic_unit_map(const Group& Zn, long long u)
{
    // element index i corresponds to a^i for a cyclic group from cyclic()
    std::vector<int> f(Zn.n);
    for (int i = 0; i < Zn.n; ++i) f[i] = static_cast<int>(mod(static_cast<long long>(i) * u, Zn.n));
    return f;
}

inline Group elementary_abelian(int q, int k, const std::vector<std::string>& names)
{
    Group G = cyclic(q, names.at(0));
    for (int i = 1; i < k; ++i) G = direct(G, cyclic(q, names.at(i)));
    G.tag = "Z" + std::to_string(q) + "^" + std::to_string(k);
    return G;
}

// A4 = <x, y, z | x^2 = y^2 = z^3 = (xy)^2 = 1, z x z^-1 = y, z y z^-1 = xy>
inline Group alt4(std::string x = "x", std::string y = "y", std::string z = "z")
{
    Group V = direct(cyclic(2, x), cyclic(2, y), "Z2^2");
    Group C = cyclic(3, z);
    int ix = V.gens[0], iy = V.gens[1];
    int ixy = V.mul(ix, iy);
    std::vector<int> f(V.n);
    f[0] = 0;
    f[ix] = iy;
    f[iy] = ixy;
    f[ixy] = ix;
    Group A = semidirect(V, C, {f}, "A4");
    return A;
}

inline Group alt5(std::string a = "a", std::string b = "b")
{
    return perm_group({{1, 2, 3, 4, 0}, {1, 2, 0, 3, 4}}, {a, b}, "A5");
}

inline Group sym5(std::string a = "a", std::string b = "b")
{
    return perm_group({{1, 2, 3, 4, 0}, {1, 0, 2, 3, 4}}, {a, b}, "S5");
}

inline Group sl25(std::string a = "a", std::string b = "b")
{
    // 2x2 matrices over F_5 packed as base-5 digits (m00, m01, m10, m11)
    auto pack = [](int a00, int a01, int a10, int a11) { return ((a00 * 5 + a01) * 5 + a10) * 5 + a11; };
    auto mul = [&](int x, int y) {
        int x11 = x % 5, x10 = x / 5 % 5, x01 = x / 25 % 5, x00 = x / 125;
        int y11 = y % 5, y10 = y / 5 % 5, y01 = y / 25 % 5, y00 = y / 125;
        return pack((x00 * y00 + x01 * y10) % 5, (x00 * y01 + x01 * y11) % 5, (x10 * y00 + x11 * y10) % 5,
                    (x10 * y01 + x11 * y11) % 5);
    };
    return close_group<int>(pack(1, 0, 0, 1), {pack(1, 1, 0, 1), pack(0, 4, 1, 0)}, mul, {a, b}, "SL(2,5)");
}

inline Group psl27(std::string a = "a", std::string b = "b")
{
    // action on the projective line over F_7, point 7 = infinity
    Perm t(8), s(8);
    for (int x = 0; x < 7; ++x) t[x] = static_cast<std::uint8_t>((x + 1) % 7);
    t[7] = 7;
    s[0] = 7;
    s[7] = 0;
    for (int x = 1; x < 7; ++x) s[x] = static_cast<std::uint8_t>(mod(-inv_mod(x, 7), 7));
    return perm_group({t, s}, {a, b}, "PSL(2,7)");
}

namespace detail {
// F_8 = F_2[w]/(w^3 + w + 1), elements as bit masks
inline int gf8_mul(int a, int b)
{
    int r = 0;
    for (int i = 0; i < 3; ++i)
        if (b >> i & 1) r ^= a << i;
    for (int i = 4; i >= 3; --i)
        if (r >> i & 1) r ^= 0b1011 << (i - 3);
    return r;
}
}  // namespace detail

inline Group agaml18(std::string a = "a", std::string b = "b", std::string c = "c")
{
    Perm tr(8), mu(8), fr(8);
    for (int x = 0; x < 8; ++x) {
        tr[x] = static_cast<std::uint8_t>(x ^ 1);
        mu[x] = static_cast<std::uint8_t>(detail::gf8_mul(x, 2));
        fr[x] = static_cast<std::uint8_t>(detail::gf8_mul(x, x));
    }
    return perm_group({tr, mu, fr}, {a, b, c}, "AGammaL(1,8)");
}

}  // namespace rsclass

#endif
