#pragma once

#include <boost/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wt1 {

using i64 = std::int64_t;
using i128 = __int128;
using Rat = boost::rational<i64>;

/// Raised when an exact computation leaves the 64-bit range.
struct OverflowError : std::overflow_error {
    using std::overflow_error::overflow_error;
};

/// Raised when a computation would exceed the configured element budget.
struct ResourceLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline i64 mod(i64 a, i64 n)
{
    i64 r = a % n;
    return r < 0 ? r + n : r;
}

inline i64 narrow(i128 v)
{
    if (v > INT64_MAX || v < INT64_MIN) throw OverflowError("integer overflow");
    return static_cast<i64>(v);
}

inline i64 add_checked(i64 a, i64 b)
{
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow");
    return r;
}

inline i64 mul_checked(i64 a, i64 b)
{
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow");
    return r;
}

inline i64 lcm(i64 a, i64 b) { return a / std::gcd(a, b) * b; }

struct Egcd {
    i64 g, x, y;  // g = a*x + b*y
};

inline Egcd egcd(i64 a, i64 b)
{
    i64 x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        i64 q = a / b;
        i64 t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1; x0 = x1; x1 = t;
        t = y0 - q * y1; y0 = y1; y1 = t;
    }
    if (a < 0) return {-a, -x0, -y0};
    return {a, x0, y0};
}

/// Inverse of a modulo n; n == 1 gives 0.
inline i64 inv_mod(i64 a, i64 n)
{
    if (n == 1) return 0;
    auto e = egcd(mod(a, n), n);
    if (e.g != 1) throw std::domain_error("not invertible: " + std::to_string(a) + " mod " + std::to_string(n));
    return mod(e.x, n);
}

inline i64 ipow(i64 b, int e)
{
    i64 r = 1;
    while (e-- > 0) r = mul_checked(r, b);
    return r;
}

inline std::vector<std::pair<i64, int>> factorize(i64 n)
{
    std::vector<std::pair<i64, int>> f;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        f.emplace_back(p, e);
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

inline std::vector<i64> prime_divisors(i64 n)
{
    std::vector<i64> ps;
    for (auto [p, e] : factorize(n)) ps.push_back(p);
    return ps;
}

inline std::vector<i64> divisors(i64 n)
{
    std::vector<i64> d{1};
    for (auto [p, e] : factorize(n)) {
        std::size_t k = d.size();
        i64 pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < k; ++j) d.push_back(d[j] * pk);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

inline bool squarefree(i64 n)
{
    for (auto [p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

/// Largest power of p dividing n.
inline i64 prime_part(i64 n, i64 p)
{
    i64 r = 1;
    while (n % p == 0) { n /= p; r *= p; }
    return r;
}

inline i64 euler_phi(i64 n)
{
    i64 r = n;
    for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

inline std::string to_string(const Rat& r)
{
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace wt1
