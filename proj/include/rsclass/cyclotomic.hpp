#ifndef RSCLASS_CYCLOTOMIC_HPP_
#define RSCLASS_CYCLOTOMIC_HPP_

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "rsclass/common.hpp"

namespace rsclass {

using Poly = std::vector<long long>;  // coefficients, lowest degree first

inline Poly poly_trim(Poly a)
{
    while (a.size() > 1 && a.back() == 0) a.pop_back();
    return a;
}

// Exact division by a monic polynomial; throws if there is a remainder.
inline Poly poly_div_exact(Poly a, const Poly& b)
{
    a = poly_trim(a);
    const std::size_t db = b.size() - 1;
    if (a.size() < b.size()) throw ConsistencyError("poly_div_exact: degree too small");
    Poly q(a.size() - db, 0);
    for (std::size_t i = a.size(); i-- > db;) {
        long long c = a[i];
        q[i - db] = c;
        for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    for (long long c : a)
        if (c != 0) throw ConsistencyError("poly_div_exact: nonzero remainder");
    return q;
}

inline const Poly& cyclotomic_poly(int n)
{
    static std::map<int, Poly> memo;
    static std::recursive_mutex mtx;
    std::lock_guard<std::recursive_mutex> lock(mtx);
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    Poly p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (int d : divisors(n))
        if (d < n) p = poly_div_exact(p, cyclotomic_poly(d));
    return memo.emplace(n, poly_trim(p)).first->second;
}

// Z[zeta_e] with integer coordinates in the power basis 1, z, ..., z^(phi-1).
class CyclotomicRing {
public:
    using Elem = std::vector<long long>;

    explicit CyclotomicRing(int e = 1) : e_(e), phi_(cyclotomic_poly(e).size() - 1), mod_(cyclotomic_poly(e))
    {
        powers_.resize(e_);
        Elem x = one();
        for (int k = 0; k < e_; ++k) {
            powers_[k] = x;
            x = mul_by_z(x);
        }
    }

    int order() const { return e_; }
    int degree() const { return static_cast<int>(phi_); }

    Elem zero() const { return Elem(phi_, 0); }
    Elem one() const
    {
        Elem a = zero();
        a[0] = 1;
        return a;
    }
    Elem from_int(long long c) const
    {
        Elem a = zero();
        a[0] = c;
        return a;
    }
    // zeta_e^k for any integer k
    const Elem& zeta(long long k) const { return powers_[mod(k, e_)]; }

    Elem add(const Elem& a, const Elem& b) const
    {
        Elem c(phi_);
        for (std::size_t i = 0; i < phi_; ++i) c[i] = a[i] + b[i];
        return c;
    }
    void add_to(Elem& a, const Elem& b, long long scale = 1) const
    {
        for (std::size_t i = 0; i < phi_; ++i) a[i] += scale * b[i];
    }
    Elem mul(const Elem& a, const Elem& b) const
    {
        std::vector<long long> c(2 * phi_ - 1, 0);
        for (std::size_t i = 0; i < phi_; ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < phi_; ++j) c[i + j] += a[i] * b[j];
        }
        for (std::size_t d = c.size(); d-- > phi_;) {
            long long t = c[d];
            if (t == 0) continue;
            for (std::size_t j = 0; j <= phi_; ++j) c[d - phi_ + j] -= t * mod_[j];
        }
        c.resize(phi_);
        return c;
    }
    bool is_integer(const Elem& a) const
    {
        for (std::size_t i = 1; i < phi_; ++i)
            if (a[i] != 0) return false;
        return true;
    }
    // a / n when every coordinate is divisible, else throws
    Elem divide_exact(const Elem& a, long long n) const
    {
        Elem c(phi_);
        for (std::size_t i = 0; i < phi_; ++i) {
            if (a[i] % n != 0) throw ConsistencyError("cyclotomic value not divisible by " + std::to_string(n));
            c[i] = a[i] / n;
        }
        return c;
    }
    std::string str(const Elem& a) const
    {
        std::string s;
        for (std::size_t i = 0; i < phi_; ++i) {
            if (a[i] == 0) continue;
            long long c = a[i];
            if (!s.empty()) s += c < 0 ? "-" : "+";
            else if (c < 0) s += "-";
            long long m = c < 0 ? -c : c;
            if (i == 0) s += std::to_string(m);
            else {
                if (m != 1) s += std::to_string(m) + "*";
                s += "z" + std::to_string(e_);
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s.empty() ? "0" : s;
    }

private:
    Elem mul_by_z(const Elem& a) const
    {
        Elem c(phi_, 0);
        for (std::size_t i = 0; i + 1 < phi_; ++i) c[i + 1] = a[i];
        long long top = phi_ ? a[phi_ - 1] : 0;
        for (std::size_t j = 0; j < phi_; ++j) c[j] -= top * mod_[j];
        return c;
    }

    int e_;
    std::size_t phi_;
    Poly mod_;
    std::vector<Elem> powers_;
};

}  // namespace rsclass

#endif
