#ifndef RSCLASS_SIGNATURE_HPP_
#define RSCLASS_SIGNATURE_HPP_

#include <algorithm>
#include <cctype>
#include <functional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "rsclass/common.hpp"
#include "rsclass/group.hpp"

namespace rsclass {

struct Signature {
    int h = 0;
    std::vector<int> periods;

    int r() const { return static_cast<int>(periods.size()); }
    bool operator==(const Signature& o) const { return h == o.h && periods == o.periods; }
    bool operator!=(const Signature& o) const { return !(*this == o); }
    bool operator<(const Signature& o) const
    {
        return std::make_tuple(h, r(), periods) < std::make_tuple(o.h, o.r(), o.periods);
    }
    std::string str() const
    {
        std::string s = "(" + std::to_string(h) + ";";
        for (std::size_t i = 0; i < periods.size(); ++i) s += (i ? "," : " ") + std::to_string(periods[i]);
        return s + ")";
    }
    // text form accepted by parse_signature
    std::string text() const
    {
        std::string s = std::to_string(h) + ";";
        for (std::size_t i = 0; i < periods.size(); ++i) s += (i ? "," : "") + std::to_string(periods[i]);
        return s;
    }
};

// Area divided by 2*pi: 2h - 2 + sum(1 - 1/m).
inline Rational area(const Signature& s)
{
    Rational a(2 * s.h - 2);
    for (int m : s.periods) a += Rational(m - 1, m);
    return a;
}

// Genus g with 2g - 2 = |G| * area(s); exact, possibly non-integral.
inline Rational rh_genus(long long group_order, const Signature& s)
{
    return Rational(1) + Rational(group_order, 2) * area(s);
}

inline int teichmuller_dimension(const Signature& s) { return 3 * s.h - 3 + s.r(); }

// "h;m1,m2,..." with symbolic p, 2p, 4p (any kp) allowed as periods.
inline Signature parse_signature(const std::string& text, int p = 0)
{
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')') t += c;
    auto semi = t.find(';');
    if (semi == std::string::npos) throw ParseError("signature '" + text + "': expected 'h;m1,m2,...'");
    auto number = [&](const std::string& tok) -> int {
        if (tok.empty()) throw ParseError("signature '" + text + "': empty entry");
        std::size_t i = 0;
        long long v = 0;
        while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) v = v * 10 + (tok[i++] - '0');
        if (i < tok.size()) {
            if (tok.substr(i) != "p") throw ParseError("signature '" + text + "': bad entry '" + tok + "'");
            if (p <= 0) throw ParseError("signature '" + text + "': symbolic p needs a prime");
            v = (i == 0 ? 1 : v) * p;
        }
        return static_cast<int>(v);
    };
    Signature s;
    s.h = number(t.substr(0, semi));
    std::string rest = t.substr(semi + 1);
    std::size_t i = 0;
    while (i < rest.size()) {
        auto j = rest.find(',', i);
        if (j == std::string::npos) j = rest.size();
        int m = number(rest.substr(i, j - i));
        if (m < 2) throw ParseError("signature '" + text + "': periods must be >= 2");
        s.periods.push_back(m);
        i = j + 1;
    }
    if (s.h == 0 && s.r() < 3) throw ParseError("signature '" + text + "': h = 0 needs at least 3 periods");
    return s;
}

// Every signature with periods dividing group_order that satisfies the
// Riemann-Hurwitz equation for the given genus. Sorted by (h, r, periods).
inline std::vector<Signature> admissible_signatures(long long group_order, int genus)
{
    std::vector<Signature> out;
    if (genus < 2 || group_order < 1) return out;
    const Rational target(2 * (genus - 1), group_order);
    std::vector<int> divs;
    for (long long d = 2; d <= group_order; ++d)
        if (group_order % d == 0) divs.push_back(static_cast<int>(d));
    for (int h = 0; Rational(2 * h - 2) <= target; ++h) {
        Rational rem = target - Rational(2 * h - 2);
        std::vector<int> cur;
        std::function<void(std::size_t, Rational)> rec = [&](std::size_t from, Rational left) {
            if (left.numerator() == 0) {
                Signature s{h, cur};
                if (!(h == 0 && s.r() < 3)) out.push_back(s);
                return;
            }
            // each remaining term lies in [1/2, 1)
            for (std::size_t i = from; i < divs.size(); ++i) {
                Rational term(divs[i] - 1, divs[i]);
                if (term > left) break;
                cur.push_back(divs[i]);
                rec(i, left - term);
                cur.pop_back();
            }
        };
        rec(0, rem);
    }
    for (auto& s : out)
        if (rh_genus(group_order, s) != Rational(genus)) throw ConsistencyError("admissible_signatures: RH check");
    std::sort(out.begin(), out.end());
    return out;
}

// ---- words in the canonical generators of a triangle or quadrilateral group ----

struct Word {
    std::vector<std::pair<int, int>> letters;  // (generator index, exponent)

    std::string str() const
    {
        if (letters.empty()) return "1";
        std::string s;
        for (auto& [g, e] : letters) {
            if (!s.empty()) s += "*";
            s += "g" + std::to_string(g + 1);
            if (e != 1) s += "^" + std::to_string(e);
        }
        return s;
    }
};

inline Word word(std::initializer_list<std::pair<int, int>> l) { return Word{std::vector<std::pair<int, int>>(l)}; }

inline int evaluate(const Word& w, const Group& G, const std::vector<int>& images)
{
    int x = 0;
    for (auto& [g, e] : w.letters) x = G.mul(x, G.pow(images.at(g), e));
    return x;
}

// Substitute words for the generators of w.
inline Word substitute(const Word& w, const std::vector<Word>& by)
{
    Word out;
    for (auto& [g, e] : w.letters) {
        const Word& b = by.at(g);
        int times = e < 0 ? -e : e;
        for (int k = 0; k < times; ++k) {
            if (e > 0) {
                out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
            } else {
                for (auto it = b.letters.rbegin(); it != b.letters.rend(); ++it)
                    out.letters.push_back({it->first, -it->second});
            }
        }
    }
    return out;
}

struct ExtensionPair {
    Signature inner;
    Signature outer;
    int index = 1;
    std::vector<Word> embedding_words;  // inner generators in terms of outer ones
    std::string name;
};

// The inclusions between the triangle groups that occur for genus
// 2(p-1) with 4p automorphisms. Not a general inclusion list.
inline std::vector<ExtensionPair> extension_table(int p)
{
    const Signature s_p44{0, {p, 4 * p, 4 * p}};
    const Signature s_2_2p_4p{0, {2, 2 * p, 4 * p}};
    const Signature s_222{0, {2 * p, 2 * p, 2 * p}};
    const Signature s_33{0, {3, 3, 2 * p}};
    const Signature s_23{0, {2, 3, 4 * p}};
    std::vector<ExtensionPair> t;
    t.push_back({s_p44, s_2_2p_4p, 2, {word({{1, 2}}), word({{1, -1}, {2, 1}, {1, 1}}), word({{2, 1}})},
                 "p44<2_2p_4p"});
    std::vector<Word> into23{word({{0, 1}}), word({{2, 2}}), word({{0, 1}, {1, 1}, {0, 1}, {1, 1}, {0, 1}})};
    t.push_back({s_2_2p_4p, s_23, 3, into23, "2_2p_4p<2_3_4p"});
    std::vector<Word> tri{word({{1, 1}}), word({{2, 1}, {1, 1}, {2, -1}}), word({{2, 2}})};
    t.push_back({s_222, s_2_2p_4p, 2, tri, "2p2p2p<2_2p_4p"});
    t.push_back({s_222, s_33, 3, {word({{1, 1}, {2, 1}, {1, -1}}), word({{1, -1}, {2, 1}, {1, 1}}), word({{2, 1}})},
                 "2p2p2p<3_3_2p"});
    std::vector<Word> six;
    for (auto& w : tri) six.push_back(substitute(w, into23));
    t.push_back({s_222, s_23, 6, six, "2p2p2p<2_3_4p"});
    t.push_back({s_33, s_23, 2, {word({{0, 1}, {1, 1}, {0, 1}}), word({{1, 1}}), word({{2, 2}})}, "3_3_2p<2_3_4p"});
    return t;
}

inline std::vector<ExtensionPair> extension_candidates(const Signature& s, int p)
{
    std::vector<ExtensionPair> out;
    for (auto& row : extension_table(p))
        if (row.inner == s) out.push_back(row);
    return out;
}

// Prime parameter read off the periods: the largest prime >= 5 dividing one.
inline int infer_prime(const Signature& s)
{
    int best = 0;
    for (int m : s.periods)
        for (int q = 5; q <= m; ++q)
            if (m % q == 0 && is_prime(q)) best = std::max(best, q);
    return best;
}

inline std::vector<ExtensionPair> extension_candidates(const Signature& s)
{
    int p = infer_prime(s);
    if (p == 0) return {};
    return extension_candidates(s, p);
}

}  // namespace rsclass

#endif
