#ifndef RSCLASS_DESCRIPTOR_HPP_
#define RSCLASS_DESCRIPTOR_HPP_

#include <cctype>
#include <string>
#include <vector>

#include "rsclass/named_groups.hpp"

namespace rsclass {

// Grammar (whitespace ignored):
//   desc  := expr ['@p=' int]
//   expr  := semi ('*' semi)*                 direct product
//   semi  := power [':' [int] power]          semidirect, image of order int
//   power := atom ['^' int]                   direct power
//   atom  := 'Z' num | 'D(' num ')' | 'Dic(' num ')' | 'Q8' | 'A4' | 'A5'
//          | 'S5' | 'SL(2,5)' | 'PSL(2,7)' | 'AGammaL(1,8)' | '(' expr ')'
//   num   := digits | digits 'p' | 'p'
// Generators are lettered a, b, c, ... in the order the leaves appear.
// Without an explicit image order, the semidirect action is faithful.
class DescriptorParser {
public:
    DescriptorParser(std::string text, int p) : p_(p)
    {
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) s_ += c;
        auto at = s_.find("@p=");
        if (at != std::string::npos) {
            p_ = std::stoi(s_.substr(at + 3));
            s_ = s_.substr(0, at);
        }
    }

    Group parse()
    {
        Group G = expr();
        if (pos_ != s_.size()) fail("unexpected '" + s_.substr(pos_) + "'");
        G.tag = s_;
        return G;
    }

private:
    std::string s_;
    std::size_t pos_ = 0;
    int p_;
    int letter_ = 0;

    [[noreturn]] void fail(const std::string& why) const
    {
        throw ParseError("group descriptor '" + s_ + "': " + why);
    }
    bool eat(const std::string& tok)
    {
        if (s_.compare(pos_, tok.size(), tok) == 0) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }
    std::string next_letter()
    {
        int k = letter_++;
        if (k < 26) return std::string(1, static_cast<char>('a' + k));
        return "g" + std::to_string(k);
    }
    bool at_num() const
    {
        return pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == 'p');
    }
    int num()
    {
        long long v = 0;
        bool digits = false;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_++] - '0');
            digits = true;
            if (v > 1000000) fail("number too large");
        }
        if (pos_ < s_.size() && s_[pos_] == 'p') {
            ++pos_;
            if (p_ <= 0) fail("symbolic p used but no prime given");
            v = (digits ? v : 1) * p_;
        } else if (!digits) {
            fail("expected a number at position " + std::to_string(pos_));
        }
        return static_cast<int>(v);
    }

    Group expr()
    {
        Group G = semi();
        while (eat("*")) G = direct(G, semi());
        return G;
    }

    Group semi()
    {
        Group A = power();
        if (!eat(":")) return A;
        int k = 0;
        if (at_num() && !(s_[pos_] == 'p')) k = num();
        Group B = power();
        return semidirect(A, B, find_coupling(A, B, k));
    }

    Group power()
    {
        std::size_t start = pos_;
        Group G = atom();
        if (eat("^")) {
            int k = num();
            if (k < 1) fail("power must be positive");
            // rebuild the leaf k times so every copy gets fresh letters
            std::size_t end = pos_;
            for (int i = 1; i < k; ++i) {
                std::size_t save = end;
                pos_ = start;
                Group H = atom();
                G = direct(G, H);
                pos_ = save;
            }
        }
        return G;
    }

    Group atom()
    {
        if (eat("(")) {
            Group G = expr();
            if (!eat(")")) fail("missing ')'");
            return G;
        }
        if (eat("SL(2,5)")) return named2(sl25);
        if (eat("PSL(2,7)")) return named2(psl27);
        if (eat("AGammaL(1,8)")) {
            auto a = next_letter(), b = next_letter(), c = next_letter();
            return agaml18(a, b, c);
        }
        if (eat("Dic(")) {
            int n = num();
            if (!eat(")")) fail("missing ')'");
            auto a = next_letter(), x = next_letter();
            return dicyclic(n, a, x);
        }
        if (eat("D(")) {
            int n = num();
            if (!eat(")")) fail("missing ')'");
            auto r = next_letter(), s = next_letter();
            return dihedral(n, r, s);
        }
        if (eat("Q8")) {
            auto a = next_letter(), x = next_letter();
            Group Q = dicyclic(2, a, x);
            Q.tag = "Q8";
            return Q;
        }
        if (eat("A4")) {
            auto x = next_letter(), y = next_letter(), z = next_letter();
            return alt4(x, y, z);
        }
        if (eat("A5")) return named2(alt5);
        if (eat("S5")) return named2(sym5);
        if (eat("Z")) {
            int n = num();
            return cyclic(n, next_letter());
        }
        fail("unknown token at position " + std::to_string(pos_));
    }

    template <typename F>
    Group named2(F f)
    {
        auto a = next_letter(), b = next_letter();
        return f(a, b);
    }
};

inline Group make_group(const std::string& descriptor, int p = 0)
{
    return DescriptorParser(descriptor, p).parse();
}

// Evaluates a word such as "a^-1*b^2*c" in the generator names of G.
inline int element_from_word(const Group& G, const std::string& word)
{
    int x = 0;
    std::size_t i = 0;
    std::string w;
    for (char c : word)
        if (!std::isspace(static_cast<unsigned char>(c))) w += c;
    if (w.empty() || w == "1") return 0;
    while (i < w.size()) {
        std::size_t j = w.find('*', i);
        if (j == std::string::npos) j = w.size();
        std::string tok = w.substr(i, j - i);
        long long e = 1;
        auto caret = tok.find('^');
        std::string name = tok.substr(0, caret);
        if (caret != std::string::npos) e = std::stoll(tok.substr(caret + 1));
        int g = -1;
        for (std::size_t k = 0; k < G.gen_names.size(); ++k)
            if (G.gen_names[k] == name) g = G.gens[k];
        if (g < 0) throw ParseError("unknown generator '" + name + "' in word '" + word + "'");
        x = G.mul(x, G.pow(g, e));
        i = j + 1;
    }
    return x;
}

}  // namespace rsclass

#endif
