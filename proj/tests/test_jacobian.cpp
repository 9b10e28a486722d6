#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "rsclass/descriptor.hpp"
#include "rsclass/jacobian.hpp"

using namespace rsclass;

namespace {

// Column orthogonality, computed here from the raw table.
void expect_columns_orthogonal(const Group& G, const CharacterTable& T)
{
    const int r = T.size();
    for (int k = 0; k < r; ++k)
        for (int l = 0; l < r; ++l) {
            Cyc acc = T.ring.zero();
            for (int i = 0; i < r; ++i) T.ring.add_to(acc, T.ring.mul(T.chars[i][k], T.chars[i][T.inverse_class[l]]));
            long long cent = 0;
            for (int x = 0; x < G.n; ++x)
                if (G.mul(x, T.reps[k]) == G.mul(T.reps[k], x)) ++cent;
            EXPECT_EQ(acc, T.ring.from_int(k == l ? cent : 0)) << G.tag << " " << k << " " << l;
        }
}

// The permutation character on cosets of H decomposes with nonnegative
// integer multiplicities whose weighted sum is the index.
void expect_permutation_character_decomposes(const Group& G, const CharacterTable& T, const std::vector<int>& H)
{
    std::vector<char> in(G.n, 0);
    for (int h : H) in[h] = 1;
    std::vector<long long> pi(G.n, 0);
    for (int g = 0; g < G.n; ++g)
        for (int x = 0; x < G.n; ++x)
            if (in[G.conj(G.inv(x), g)]) ++pi[g];  // counts x with x^-1 g x in H, = |H| * fixed cosets
    long long weighted = 0;
    for (int i = 0; i < T.size(); ++i) {
        Cyc acc = T.ring.zero();
        for (int g = 0; g < G.n; ++g) T.ring.add_to(acc, T.value(i, G.inv(g)), pi[g]);
        Cyc m = T.ring.divide_exact(acc, static_cast<long long>(G.n) * static_cast<long long>(H.size()));
        ASSERT_TRUE(T.ring.is_integer(m));
        EXPECT_GE(m[0], 0);
        weighted += m[0] * T.degrees[i];
    }
    EXPECT_EQ(weighted, G.n / static_cast<long long>(H.size()));
}

std::map<int, int> degree_histogram(const CharacterTable& T)
{
    std::map<int, int> h;
    for (int d : T.degrees) ++h[d];
    return h;
}

int char_at(const CharacterTable& T, int chi, int g)
{
    const Cyc& v = T.value(chi, g);
    EXPECT_TRUE(T.ring.is_integer(v));
    return static_cast<int>(v[0]);
}

}  // namespace

TEST(Jacobian, CyclotomicPolynomials)
{
    EXPECT_EQ(cyclotomic_poly(1), (Poly{-1, 1}));
    EXPECT_EQ(cyclotomic_poly(4), (Poly{1, 0, 1}));
    EXPECT_EQ(cyclotomic_poly(6), (Poly{1, -1, 1}));
    EXPECT_EQ(cyclotomic_poly(20).size(), 9u);
    CyclotomicRing R(12);
    EXPECT_EQ(R.mul(R.zeta(5), R.zeta(7)), R.one());
    EXPECT_EQ(R.mul(R.zeta(3), R.zeta(3)), R.from_int(-1));
}

TEST(Jacobian, SmallTables)
{
    Group V = make_group("Z2^2");
    auto T = character_table(V);
    EXPECT_EQ(T.size(), 4);
    for (auto& row : T.chars)
        for (auto& v : row) EXPECT_TRUE(v == T.ring.from_int(1) || v == T.ring.from_int(-1));
    for (int p : {5, 7}) {
        auto D = character_table(dihedral(2 * p));
        EXPECT_EQ(degree_histogram(D), (std::map<int, int>{{1, 4}, {2, p - 1}}));
        auto X = character_table(make_group("Zp*D(4)", p));
        EXPECT_EQ(X.size(), 5 * p);
        EXPECT_EQ(degree_histogram(X), (std::map<int, int>{{1, 4 * p}, {2, p}}));
    }
    EXPECT_EQ(degree_histogram(character_table(alt5())), (std::map<int, int>{{1, 1}, {3, 2}, {4, 1}, {5, 1}}));
}

TEST(Jacobian, TablesPassIndependentChecks)
{
    std::vector<Group> groups{make_group("Zp*Z2^2", 5), dihedral(14),      make_group("Zp:2Z4", 7),
                              make_group("Zp*D(4)", 5), make_group("Zp:3A4", 7), make_group("D(3)*D(p)", 5),
                              alt5(),                   sl25(),                 psl27()};
    for (auto& G : groups) {
        auto T = character_table(G);
        EXPECT_EQ(T.size(), static_cast<int>(conjugacy_classes(G).size()));
        long long sq = 0;
        for (int d : T.degrees) {
            sq += 1LL * d * d;
            EXPECT_EQ(G.n % d, 0);
        }
        EXPECT_EQ(sq, G.n);
        expect_columns_orthogonal(G, T);
        for (int x = 1; x < G.n; x += std::max(1, G.n / 6))
            expect_permutation_character_decomposes(G, T, subgroup_generated(G, {x}));
    }
}

TEST(Jacobian, GaloisOrbits)
{
    int p = 7;
    auto Z = rational_irreps(character_table(cyclic(p)));
    ASSERT_EQ(Z.size(), 2u);
    EXPECT_EQ(Z[1].field_degree, p - 1);
    auto G1 = rational_irreps(character_table(make_group("Zp*Z2^2", p)));
    int big = 0;
    for (auto& w : G1) big += w.field_degree == p - 1;
    EXPECT_EQ(big, 4);
    auto X = rational_irreps(character_table(make_group("Zp*D(4)", p)));
    int u = 0, w = 0;
    for (auto& o : X) {
        if (o.field_degree == p - 1) ++u;
        if (o.field_degree == 1) ++w;
    }
    EXPECT_EQ(u, 5);
    EXPECT_EQ(w, 5);
}

TEST(Jacobian, OneParameterFamily)
{
    for (int p : {5, 7, 11}) {
        Group G = make_group("Zp*Z2^2", p);
        int t = G.find("a"), x = G.find("b"), y = G.find("c");
        Signature s{0, {2, 2, p, 2 * p}};
        Tuple v{x, y, t, G.mul(G.inv(t), G.mul(x, y))};
        const auto& T = cached_character_table(G);
        EXPECT_EQ(chevalley_weil(T, 0, G, s, v), 0);
        std::map<std::pair<int, int>, int> orbit_sum;  // (chi(x), chi(y)) for chars nontrivial on t
        for (int i = 0; i < T.size(); ++i) {
            if (T.value(i, t) == T.ring.one()) continue;
            orbit_sum[{char_at(T, i, x), char_at(T, i, y)}] += chevalley_weil(T, i, G, s, v);
        }
        EXPECT_EQ((orbit_sum[{-1, -1}]), p - 1);
        EXPECT_EQ((orbit_sum[{1, -1}]), (p - 1) / 2);
        EXPECT_EQ((orbit_sum[{-1, 1}]), (p - 1) / 2);
        EXPECT_EQ((orbit_sum[{1, 1}]), 0);
        auto R = group_algebra_decomposition(G, s, v);
        std::vector<int> dims;
        for (auto& row : R.nonzero()) dims.push_back(row.dim);
        std::sort(dims.begin(), dims.end());
        EXPECT_EQ(dims, (std::vector<int>{(p - 1) / 2, (p - 1) / 2, p - 1}));
        std::map<std::string, int> q;
        for (auto& e : R.quotients) q[e.name] = e.genus;
        EXPECT_EQ(q["<b>"], (p - 1) / 2);
        EXPECT_EQ(q["<c>"], (p - 1) / 2);
        EXPECT_EQ(q["<b*c>"], p - 1);
        EXPECT_EQ(q["<b>"] + q["<c>"] + q["<b*c>"], 2 * (p - 1));
    }
}

TEST(Jacobian, QuasiplatonicEqualPeriods)
{
    for (int p : {5, 7, 13}) {
        Group G = make_group("Zp*Z2^2", p);
        int t = G.find("a"), x = G.find("b"), y = G.find("c");
        Signature s{0, {2 * p, 2 * p, 2 * p}};
        for (int j = 1; j <= p - 2; ++j) {
            Tuple v{G.mul(t, x), G.mul(G.pow(t, j), y), G.mul(G.pow(t, -1 - j), G.mul(x, y))};
            auto R = group_algebra_decomposition(G, s, v);
            auto nz = R.nonzero();
            ASSERT_EQ(nz.size(), 4u);
            for (auto& row : nz) EXPECT_EQ(row.dim, (p - 1) / 2);
        }
    }
}

TEST(Jacobian, LargestGroupDecomposition)
{
    for (int p : {5, 7, 11}) {
        Group G = make_group("Zp*D(4)", p);
        int a = G.find("a"), r = G.find("b"), sg = G.find("c");
        Signature s{0, {2, 2 * p, 4 * p}};
        Tuple v{sg, G.mul(G.inv(a), G.mul(sg, r)), G.mul(a, G.inv(r))};
        ASSERT_TRUE(is_ske(G, s, v));
        auto R = group_algebra_decomposition(G, s, v);
        std::vector<std::pair<int, int>> nz;
        for (auto& row : R.nonzero()) {
            nz.push_back({row.n, row.dim});
            EXPECT_EQ(row.field_degree, p - 1);
        }
        std::sort(nz.begin(), nz.end());
        int h = (p - 1) / 2;
        EXPECT_EQ(nz, (std::vector<std::pair<int, int>>{{1, h}, {1, h}, {2, h}}));
        // r -> -1, s -> 1 on the D4 part is absent, as is the part trivial on D4
        const auto& T = cached_character_table(G);
        auto irreps = rational_irreps(T);
        for (std::size_t w = 0; w < irreps.size(); ++w) {
            int c = irreps[w].orbit[0];
            if (irreps[w].degree != 1 || T.value(c, a) == T.ring.one()) continue;
            int vr = char_at(T, c, r), vs = char_at(T, c, sg);
            if ((vr == -1 && vs == 1) || (vr == 1 && vs == 1)) EXPECT_EQ(R.rows[w].dim, 0);
        }
    }
}

TEST(Jacobian, CyclicFamilyInvolutionQuotient)
{
    for (int p : {5, 7, 11}) {
        Group G = make_group("Zp*Z4", p);
        int a = G.find("a"), b = G.find("b");
        Signature s{0, {p, 4 * p, 4 * p}};
        for (int j = 1; j <= p - 2; ++j) {
            Tuple v{a, G.mul(G.pow(a, j), b), G.mul(G.pow(a, -j - 1), G.pow(b, 3))};
            auto R = group_algebra_decomposition(G, s, v);
            std::string iota = "<" + G.names[G.mul(b, b)] + ">";
            int gq = -1;
            for (auto& q : R.quotients)
                if (q.name == iota) gq = q.genus;
            EXPECT_EQ(gq, p - 1);
            for (auto& pr : R.pryms)
                if (pr.sub == "<1>" && pr.super == iota) EXPECT_EQ(pr.dim, p - 1);
        }
    }
}

TEST(Jacobian, DimensionsAddUpForEveryVector)
{
    for (int p : {5, 7, 11, 13}) {
        int count = 0;
        for (const auto& G : catalogue(4 * p, p).groups)
            for (const auto& s : admissible_signatures(4 * p, 2 * (p - 1)))
                for (const auto& v : enumerate_skes(G, s)) {
                    auto R = group_algebra_decomposition(G, s, v, count % 50 == 0);
                    EXPECT_EQ(R.total(), 2 * (p - 1));
                    for (auto& row : R.rows) EXPECT_GE(row.dim, 0);
                    ++count;
                }
        EXPECT_GT(count, 0);
    }
}

TEST(Jacobian, ReportJson)
{
    int p = 5;
    Group G = make_group("Zp*Z2^2", p);
    int t = G.find("a"), x = G.find("b"), y = G.find("c");
    Tuple v{x, y, t, G.mul(G.inv(t), G.mul(x, y))};
    auto j = group_algebra_decomposition(G, Signature{0, {2, 2, p, 2 * p}}, v).to_json();
    EXPECT_TRUE(j.contains("factors"));
    EXPECT_FALSE(j["quotients"].empty());
}
