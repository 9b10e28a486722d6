#ifndef RSCLASS_COMMON_HPP_
#define RSCLASS_COMMON_HPP_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <boost/rational.hpp>

namespace rsclass {

using Rational = boost::rational<long long>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GroupError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct UnsupportedError : Error { using Error::Error; };
struct ConsistencyError : Error { using Error::Error; };
struct UsageError : Error { using Error::Error; };

inline int max_order()
{
    if (const char* env = std::getenv("RSCLASS_MAX_ORDER")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 2048;
}

inline long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

inline long long mod(long long a, long long m)
{
    long long r = a % m;
    return r < 0 ? r + m : r;
}

inline long long inv_mod(long long a, long long m)
{
    long long g = m, x = 0, x1 = 1, a1 = mod(a, m);
    long long b = a1;
    while (b) {
        long long q = g / b;
        long long t = g - q * b; g = b; b = t;
        t = x - q * x1; x = x1; x1 = t;
    }
    if (g != 1) throw Error("inv_mod: not invertible");
    return mod(x, m);
}

inline long long pow_mod(long long b, long long e, long long m)
{
    long long r = 1 % m;
    b = mod(b, m);
    while (e > 0) {
        if (e & 1) r = (__int128)r * b % m;
        b = (__int128)b * b % m;
        e >>= 1;
    }
    return r;
}

inline bool is_prime(long long n)
{
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<int> divisors(int n)
{
    std::vector<int> d;
    for (int i = 1; i <= n; ++i)
        if (n % i == 0) d.push_back(i);
    return d;
}

// Worker count used when a caller passes jobs <= 0.
inline int default_jobs()
{
    unsigned h = std::thread::hardware_concurrency();
    return h == 0 ? 1 : static_cast<int>(h);
}

// Runs f(i) for i in [0, n) on up to `jobs` threads. Work is handed out
// through an atomic counter; callers must write results into per-index
// slots so the outcome does not depend on scheduling.
template <typename F>
void parallel_for(std::size_t n, int jobs, F&& f)
{
    if (jobs <= 0) jobs = default_jobs();
    std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n || failed.load()) return;
                try {
                    f(i);
                } catch (...) {
                    if (!failed.exchange(true)) err = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n = 0) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int add()
    {
        parent.push_back(static_cast<int>(parent.size()));
        return parent.back();
    }
    int find(int x)
    {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    // The smaller index always becomes the root, which keeps results
    // independent of the order in which unions are applied.
    void unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a < b) parent[b] = a;
        else parent[a] = b;
    }
};

inline std::string to_string(const Rational& r)
{
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace rsclass

#endif
