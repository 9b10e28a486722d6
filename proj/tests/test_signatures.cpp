#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <set>

#include "rsclass/signature.hpp"

using namespace rsclass;

namespace {

// Brute force over multisets of divisors with the integer form of
// Riemann-Hurwitz: |G| * sum(1 - 1/m) = 2(g-1) - |G|(2h-2).
std::set<std::pair<int, std::vector<int>>> brute_signatures(int order, int g)
{
    std::set<std::pair<int, std::vector<int>>> out;
    std::vector<int> divs;
    for (int d = 2; d <= order; ++d)
        if (order % d == 0) divs.push_back(d);
    for (int h = 0; h <= g; ++h) {
        long long need = 2LL * (g - 1) - static_cast<long long>(order) * (2 * h - 2);
        if (need < 0) continue;
        // every term is at least order/2, so r <= 2*need/order
        int rmax = static_cast<int>(2 * need / order);
        std::vector<int> idx;
        std::function<void(int, long long)> rec = [&](int from, long long left) {
            if (left == 0) {
                std::vector<int> ms;
                for (int i : idx) ms.push_back(divs[i]);
                if (!(h == 0 && ms.size() < 3)) out.insert({h, ms});
                return;
            }
            if (static_cast<int>(idx.size()) >= rmax) return;
            for (int i = from; i < static_cast<int>(divs.size()); ++i) {
                long long term = order - order / divs[i];
                if (term > left) continue;
                idx.push_back(i);
                rec(i, left - term);
                idx.pop_back();
            }
        };
        rec(0, need);
    }
    return out;
}

// 2x2 matrices over F_q modulo +-1, used as an independent model of
// triangle-group quotients.
struct Psl {
    long long q;
    using M = std::array<long long, 4>;
    M mul(const M& a, const M& b) const
    {
        return {(a[0] * b[0] + a[1] * b[2]) % q, (a[0] * b[1] + a[1] * b[3]) % q, (a[2] * b[0] + a[3] * b[2]) % q,
                (a[2] * b[1] + a[3] * b[3]) % q};
    }
    M inv(const M& a) const { return {a[3], (q - a[1]) % q, (q - a[2]) % q, a[0]}; }
    bool is_id(const M& a) const
    {
        return a[1] == 0 && a[2] == 0 && a[0] == a[3] && (a[0] == 1 || a[0] == q - 1);
    }
    int order(const M& a) const
    {
        M x = a;
        int k = 1;
        while (!is_id(x)) {
            x = mul(x, a);
            ++k;
            if (k > 10000) return -1;
        }
        return k;
    }
    M pow(const M& a, int e) const
    {
        M b = e < 0 ? inv(a) : a;
        M r{1, 0, 0, 1};
        for (int i = 0; i < (e < 0 ? -e : e); ++i) r = mul(r, b);
        return r;
    }
    M eval(const Word& w, const std::vector<M>& gens) const
    {
        M r{1, 0, 0, 1};
        for (auto& [g, e] : w.letters) r = mul(r, pow(gens[g], e));
        return r;
    }
};

// Finds (x, y, z) with xyz = 1 and the given orders by a deterministic scan.
std::vector<Psl::M> triangle_vector(const Psl& P, std::array<int, 3> orders)
{
    std::vector<Psl::M> with_order0, with_order1;
    long long q = P.q;
    for (long long a = 0; a < q; ++a)
        for (long long b = 0; b < q; ++b)
            for (long long c = 0; c < q; ++c) {
                // d from det = 1 when a != 0
                if (a == 0) continue;
                long long d = (1 + b * c) % q * inv_mod(a, q) % q;
                Psl::M m{a, b, c, d};
                int o = P.order(m);
                if (o == orders[0] && with_order0.size() < 60) with_order0.push_back(m);
                if (o == orders[1] && with_order1.size() < 400) with_order1.push_back(m);
            }
    for (auto& x : with_order0)
        for (auto& y : with_order1) {
            auto z = P.inv(P.mul(x, y));
            if (P.order(z) == orders[2]) return {x, y, z};
        }
    return {};
}

// Reduces a word in the free product Z_{m0} * Z_{m1} after eliminating
// generator 2 via g3 = (g1 g2)^-1. Empty result means the word is trivial
// in every quotient, in particular in the triangle group.
std::vector<std::pair<int, int>> free_reduce(const Word& w, int m0, int m1)
{
    std::vector<std::pair<int, int>> letters;
    for (auto& [g, e] : w.letters) {
        if (g < 2) {
            letters.push_back({g, e});
        } else {
            int times = e < 0 ? -e : e;
            for (int k = 0; k < times; ++k) {
                if (e > 0) {
                    letters.push_back({1, -1});
                    letters.push_back({0, -1});
                } else {
                    letters.push_back({0, 1});
                    letters.push_back({1, 1});
                }
            }
        }
    }
    std::vector<std::pair<int, int>> st;
    auto m = [&](int g) { return g == 0 ? m0 : m1; };
    for (auto l : letters) {
        int e = static_cast<int>(mod(l.second, m(l.first)));
        if (e == 0) continue;
        if (!st.empty() && st.back().first == l.first) {
            int f = static_cast<int>(mod(st.back().second + e, m(l.first)));
            st.pop_back();
            if (f) st.push_back({l.first, f});
        } else {
            st.push_back({l.first, e});
        }
    }
    return st;
}

}  // namespace

TEST(Signatures, RiemannHurwitzExamples)
{
    EXPECT_EQ(rh_genus(20, Signature{0, {2, 2, 5, 10}}), Rational(8));
    EXPECT_EQ(rh_genus(1, Signature{3, {}}), Rational(3));
    EXPECT_EQ(rh_genus(40, Signature{0, {2, 10, 20}}), Rational(8));
    EXPECT_EQ(rh_genus(7, Signature{0, {2, 3}}).denominator() != 1, true);
}

TEST(Signatures, AreaMatchesGenus)
{
    for (auto& s : admissible_signatures(56, 8)) EXPECT_EQ(area(s) * 56, Rational(2 * 7));
}

TEST(Signatures, AdmissibleOrder4p)
{
    for (int p : {5, 7, 11, 13}) {
        auto sigs = admissible_signatures(4 * p, 2 * (p - 1));
        std::vector<Signature> expect{Signature{0, {p, 4 * p, 4 * p}}, Signature{0, {2 * p, 2 * p, 2 * p}},
                                      Signature{0, {2, 2, p, 2 * p}}};
        if (p == 5) expect.push_back(Signature{0, {2, 2, 4, 20}});
        std::sort(expect.begin(), expect.end());
        EXPECT_EQ(sigs, expect) << "p=" << p;
    }
}

TEST(Signatures, AdmissibleMatchesBruteForce)
{
    for (auto [order, g] : std::vector<std::pair<int, int>>{{20, 8}, {40, 8}, {24, 3}, {12, 4}, {84, 13}, {48, 5}}) {
        auto got = admissible_signatures(order, g);
        std::set<std::pair<int, std::vector<int>>> mine;
        for (auto& s : got) mine.insert({s.h, s.periods});
        EXPECT_EQ(mine, brute_signatures(order, g)) << order << " " << g;
        EXPECT_TRUE(std::is_sorted(got.begin(), got.end()));
    }
}

TEST(Signatures, ContainsEliminatedCandidate)
{
    auto sigs = admissible_signatures(40, 8);
    EXPECT_NE(std::find(sigs.begin(), sigs.end(), Signature{0, {2, 10, 20}}), sigs.end());
    EXPECT_NE(std::find(sigs.begin(), sigs.end(), Signature{0, {4, 5, 5}}), sigs.end());
}

TEST(Signatures, HurwitzBound)
{
    auto sigs = admissible_signatures(84 * 7, 8);
    ASSERT_EQ(sigs.size(), 1u);
    EXPECT_EQ(sigs[0], (Signature{0, {2, 3, 7}}));
}

TEST(Signatures, TeichmullerDimension)
{
    EXPECT_EQ(teichmuller_dimension(Signature{0, {2, 2, 5, 10}}), 1);
    EXPECT_EQ(teichmuller_dimension(Signature{0, {10, 10, 10}}), 0);
    EXPECT_EQ(teichmuller_dimension(Signature{2, {}}), 3);
}

TEST(Signatures, ParseSymbolic)
{
    EXPECT_EQ(parse_signature("0;2,2,p,2p", 7), (Signature{0, {2, 2, 7, 14}}));
    EXPECT_EQ(parse_signature("0; 4p,4p,p", 5).periods, (std::vector<int>{20, 20, 5}));
    EXPECT_EQ(parse_signature("2;").h, 2);
    EXPECT_THROW(parse_signature("0;2,x", 5), ParseError);
    EXPECT_THROW(parse_signature("0;2,3"), ParseError);
}

TEST(Signatures, ExtensionCandidates)
{
    int p = 7;
    EXPECT_TRUE(extension_candidates(Signature{0, {2, 2, p, 2 * p}}).empty());
    auto a = extension_candidates(Signature{0, {p, 4 * p, 4 * p}});
    ASSERT_EQ(a.size(), 1u);
    EXPECT_EQ(a[0].outer, (Signature{0, {2, 2 * p, 4 * p}}));
    EXPECT_EQ(a[0].index, 2);
    auto b = extension_candidates(Signature{0, {2 * p, 2 * p, 2 * p}});
    bool six = false;
    for (auto& e : b) six = six || (e.index == 6 && e.outer == Signature{0, {2, 3, 4 * p}});
    EXPECT_TRUE(six);
}

TEST(Signatures, ExtensionAreasAndProducts)
{
    for (int p : {5, 7, 11, 13})
        for (auto& row : extension_table(p)) {
            EXPECT_EQ(area(row.inner), area(row.outer) * row.index) << row.name;
            Word prod;
            for (auto& w : row.embedding_words)
                prod.letters.insert(prod.letters.end(), w.letters.begin(), w.letters.end());
            EXPECT_TRUE(free_reduce(prod, row.outer.periods[0], row.outer.periods[1]).empty()) << row.name;
        }
}

TEST(Signatures, ExtensionWordOrdersInMatrixQuotients)
{
    // PSL(2,41) contains elements of orders 2, 3, 10, 20 and 21.
    Psl P{41};
    int p = 5;
    for (auto& row : extension_table(p)) {
        auto& m = row.outer.periods;
        auto gens = triangle_vector(P, {m[0], m[1], m[2]});
        ASSERT_EQ(gens.size(), 3u) << row.name;
        for (std::size_t i = 0; i < row.embedding_words.size(); ++i)
            EXPECT_EQ(P.order(P.eval(row.embedding_words[i], gens)), row.inner.periods[i]) << row.name << " " << i;
    }
}
