#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "rsclass/classify.hpp"

using namespace rsclass;

namespace {

// Signatures (0; m_1..m_r) with m_i | order and r <= 4 whose Riemann-Hurwitz
// genus is g, found by direct search over divisors.
std::set<std::vector<int>> planar_signatures(long long order, int g)
{
    std::vector<int> ds;
    for (int d = 2; d <= order; ++d)
        if (order % d == 0) ds.push_back(d);
    std::set<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (cur.size() >= 3) {
            Rational area(static_cast<long long>(cur.size()) - 2);
            for (int m : cur) area -= Rational(1, m);
            if (area > Rational(0) && area * Rational(order) == Rational(2 * g - 2)) out.insert(cur);
        }
        if (cur.size() == 4) return;
        for (std::size_t i = from; i < ds.size(); ++i) {
            cur.push_back(ds[i]);
            rec(i);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

// Branching of a subgroup H from point stabilizers: over slot k the points
// are the cosets x<c_k>, each H-orbit contributes |H ∩ x<c_k>x^-1| as period.
std::vector<int> induced_periods(const Group& G, const Tuple& ske, const std::vector<int>& H)
{
    std::vector<char> inH(G.n, 0);
    for (int h : H) inH[h] = 1;
    std::vector<int> periods;
    for (int c : ske) {
        auto C = subgroup_generated(G, {c});
        std::vector<char> seen(G.n, 0);
        for (int x = 0; x < G.n; ++x) {
            if (seen[x]) continue;
            for (int h : H)
                for (int y : C) seen[G.mul(G.mul(h, x), y)] = 1;
            int stab = 0;
            for (int y : C)
                if (inH[G.conj(x, y)]) ++stab;
            if (stab > 1) periods.push_back(stab);
        }
    }
    std::sort(periods.begin(), periods.end());
    return periods;
}

std::set<int> arithmetic_lambdas(int p)
{
    std::set<int> out;
    for (int lambda = 2; lambda <= 21; ++lambda)
        if (!planar_signatures(4LL * lambda * p, 2 * (p - 1)).empty()) out.insert(lambda);
    return out;
}

const LocusReport& report(int p)
{
    static std::map<int, LocusReport> cache;
    auto it = cache.find(p);
    if (it == cache.end()) it = cache.emplace(p, classify_locus(p)).first;
    return it->second;
}

}  // namespace

TEST(Classify, AdmissibleLambdasMatchDirectSearch)
{
    EXPECT_EQ(arithmetic_lambdas(5), (std::set<int>{2, 3, 4, 6, 7, 14}));
    EXPECT_EQ(arithmetic_lambdas(7), (std::set<int>{2, 3, 5, 6}));
    for (int p : {5, 7, 11, 13}) {
        auto want = arithmetic_lambdas(p);
        ExtensionEngine E(p);
        for (const auto& V : verify_large_orders(p, 2, 21, E)) {
            EXPECT_EQ(V.verdict == "arithmetically-excluded", !want.count(V.lambda)) << p << " " << V.lambda;
            std::set<std::vector<int>> got;
            for (auto& s : V.signatures) got.insert(s.periods);
            EXPECT_EQ(got, planar_signatures(V.order, 2 * (p - 1))) << p << " " << V.lambda;
        }
    }
}

TEST(Classify, AllChecksPass)
{
    for (int p : {5, 7, 11, 13}) {
        const auto& L = report(p);
        for (const auto& c : L.checks) EXPECT_TRUE(c.pass) << p << " " << c.id << ": " << c.detail;
        EXPECT_TRUE(L.all_pass());
    }
}

TEST(Classify, ClosedFormCounts)
{
    for (int p : {5, 7, 11, 13}) {
        const auto& L = report(p);
        int c = 0, s = 0;
        for (auto& R : L.surfaces) (R.source == "C" ? c : s) += 1;
        EXPECT_EQ(c, p % 3 == 1 ? (p + 5) / 6 : (p + 1) / 6);
        EXPECT_EQ(s, (p - 1) / 2);
        EXPECT_EQ(L.quasiplatonic_not_in_families, p % 3 == 1 ? (2 * p - 5) / 3 : (2 * p - 7) / 3);
        EXPECT_EQ(L.families[0].classes, 1);
        EXPECT_LE(L.families[1].classes, (p - 1) / 2);
    }
}

TEST(Classify, LargestGroupsAndConditionalFlags)
{
    for (int p : {5, 7, 11, 13}) {
        const auto& L = report(p);
        for (const auto& V : L.large_orders) {
            if (V.lambda >= 4) EXPECT_TRUE(V.reps.empty()) << p << " " << V.lambda;
            if (p <= 7) EXPECT_FALSE(V.conditional) << p << " " << V.lambda;
        }
        const auto& V3 = L.large_orders[1];
        ASSERT_EQ(V3.lambda, 3);
        EXPECT_EQ(V3.reps.size(), p % 3 == 1 ? 2u : 1u);
    }
    const auto& L11 = report(11);
    EXPECT_TRUE(L11.large_orders[1].conditional);
}

TEST(Classify, SpecialMembersRestrictToTheFamilies)
{
    for (int p : {5, 7, 11}) {
        const auto& L = report(p);
        const std::vector<int> s1{2, 2, p, 2 * p};
        for (const auto& V : L.large_orders)
            for (const auto& r : V.reps) {
                const Group& G = *r.group;
                std::set<std::vector<int>> subs;
                for (int x = 0; x < G.n; ++x)
                    for (int y = x; y < G.n; ++y) {
                        auto H = subgroup_generated(G, {x, y});
                        if (static_cast<int>(H.size()) == 4 * p) subs.insert(H);
                    }
                int g1 = 0, d2p = 0;
                for (const auto& H : subs) {
                    if (induced_periods(G, r.ske, H) != s1) continue;
                    // Zp x Z2^2 is abelian with 3 involutions, the dihedral group has 2p+1
                    bool abelian = true;
                    int involutions = 0;
                    for (int a : H) {
                        involutions += a != 0 && G.mul(a, a) == 0;
                        for (int b : H) abelian = abelian && G.mul(a, b) == G.mul(b, a);
                    }
                    if (abelian && involutions == 3) ++g1;
                    if (!abelian && involutions == 2 * p + 1) ++d2p;
                }
                if (r.label == "X_p") {
                    EXPECT_GT(g1, 0);
                    EXPECT_EQ(d2p, 0);
                } else {
                    EXPECT_EQ(g1, 0) << r.label;
                    EXPECT_EQ(d2p > 0, r.label == "Y_p") << r.label;
                }
            }
    }
}

TEST(Classify, JsonIsStableAcrossThreadCounts)
{
    auto a = classify_locus(7, 1).to_json();
    auto b = classify_locus(7, 3).to_json();
    EXPECT_EQ(a.dump(), b.dump());
    EXPECT_EQ(a["schema"], "rsclass/1");
    EXPECT_EQ(a["p"], 7);
    EXPECT_TRUE(a["all_pass"].get<bool>());
    EXPECT_EQ(a["families"].size(), 2u);
    EXPECT_FALSE(a["large_orders"].empty());
}

TEST(Classify, TextReport)
{
    auto t = report(5).to_text();
    EXPECT_NE(t.find("PASS quasiplatonic-count"), std::string::npos);
    EXPECT_EQ(t.find("FAIL "), std::string::npos);
}

TEST(Classify, RejectsBadInput)
{
    EXPECT_THROW(classify_locus(9), UsageError);
    EXPECT_THROW(classify_locus(3), UsageError);
    EXPECT_THROW(verify_large_orders(7, 4, 3), UsageError);
}
