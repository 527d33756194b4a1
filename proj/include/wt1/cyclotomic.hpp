#pragma once

#include "arith.hpp"
#include "quad_space.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace wt1 {

namespace detail {

// Phi_L as integer coefficients, lowest degree first.
inline std::vector<i64> compute_cyclotomic_poly(i64 L);

inline const std::vector<i64>& cyclotomic_poly(i64 L)
{
    static std::recursive_mutex mu;
    static std::map<i64, std::unique_ptr<std::vector<i64>>> cache;
    std::lock_guard<std::recursive_mutex> lock(mu);
    auto it = cache.find(L);
    if (it != cache.end()) return *it->second;
    auto p = std::make_unique<std::vector<i64>>(compute_cyclotomic_poly(L));
    auto& ref = *p;
    cache.emplace(L, std::move(p));
    return ref;
}

inline std::vector<i64> compute_cyclotomic_poly(i64 L)
{
    std::vector<i64> num(L + 1, 0);  // x^L - 1
    num[0] = -1;
    num[L] = 1;
    for (i64 d : divisors(L)) {
        if (d == L) continue;
        const std::vector<i64>& den = cyclotomic_poly(d);
        // exact division by monic den
        std::size_t dn = den.size() - 1;
        std::vector<i64> q(num.size() - dn, 0);
        for (std::size_t k = num.size(); k-- > dn;) {
            i64 t = num[k];
            q[k - dn] = t;
            if (t == 0) continue;
            for (std::size_t i = 0; i <= dn; ++i) num[k - dn + i] -= t * den[i];
        }
        num = q;
    }
    return num;
}

struct RootTable {
    std::vector<std::complex<long double>> z;
    explicit RootTable(i64 L) : z(L)
    {
        const long double two_pi = 6.283185307179586476925286766559L;
        for (i64 j = 0; j < L; ++j) {
            long double t = two_pi * static_cast<long double>(j) / static_cast<long double>(L);
            z[j] = {std::cos(t), std::sin(t)};
        }
    }
};

inline const RootTable& roots(i64 L)
{
    static std::mutex mu;
    static std::map<i64, std::unique_ptr<RootTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[L];
    if (!slot) slot = std::make_unique<RootTable>(L);
    return *slot;
}

/// Reduce a raw cyclic accumulator (length L, x^L = 1 already applied) into
/// canonical coefficients of degree < phi(L).
inline void reduce_raw(i64 L, std::vector<i128>& acc, i64* out)
{
    const auto& phi_poly = cyclotomic_poly(L);
    const std::size_t phi = phi_poly.size() - 1;
    for (std::size_t k = static_cast<std::size_t>(L); k-- > phi;) {
        i128 t = acc[k];
        if (t == 0) continue;
        acc[k] = 0;
        for (std::size_t i = 0; i < phi; ++i)
            if (phi_poly[i]) acc[k - phi + i] -= t * phi_poly[i];
    }
    for (std::size_t i = 0; i < phi; ++i) out[i] = narrow(acc[i]);
}

}  // namespace detail

/**
 * @brief Exact element of Q(zeta_L), zeta_L = e(1/L).
 *
 * Stored as (1/den) * sum_j c_j zeta_L^j with the c_j reduced modulo Phi_L,
 * so only the first phi(L) entries can be nonzero and the representation is
 * canonical once the common factor of (c, den) is removed.
 */
class CycNumber {
public:
    CycNumber() : L_(1), c_(1, 0), den_(1) {}
    explicit CycNumber(i64 L) : L_(L), c_(L, 0), den_(1)
    {
        if (L < 1) throw std::invalid_argument("cyclotomic order must be positive");
    }

    static CycNumber integer(i64 L, i64 v)
    {
        CycNumber x(L);
        x.c_[0] = v;
        x.fix_rational_constant();
        return x;
    }
    static CycNumber rational(i64 L, const Rat& v)
    {
        CycNumber x(L);
        x.c_[0] = v.numerator();
        x.den_ = v.denominator();
        x.fix_rational_constant();
        return x;
    }
    /// e(j/L)
    static CycNumber root(i64 L, i64 j)
    {
        CycNumber x(L);
        std::vector<i128> acc(L, 0);
        acc[mod(j, L)] = 1;
        detail::reduce_raw(L, acc, x.c_.data());
        return x;
    }
    /// Build from raw cyclic numerators (length L, x^L = 1) over den.
    static CycNumber from_raw(i64 L, std::vector<i128> acc, i64 den)
    {
        CycNumber x(L);
        detail::reduce_raw(L, acc, x.c_.data());
        x.den_ = den;
        x.normalize();
        return x;
    }

    i64 order() const { return L_; }
    i64 denominator() const { return den_; }
    const std::vector<i64>& numerators() const { return c_; }
    Rat coeff(i64 j) const { return Rat(c_.at(j), den_); }

    bool is_zero() const
    {
        for (i64 v : c_)
            if (v) return false;
        return true;
    }

    std::optional<Rat> as_rational() const
    {
        for (std::size_t j = 1; j < c_.size(); ++j)
            if (c_[j]) return std::nullopt;
        return Rat(c_[0], den_);
    }

    /// Same value viewed in Q(zeta_{L2}); requires L | L2.
    CycNumber coerce(i64 L2) const
    {
        if (L2 % L_) throw std::invalid_argument("coerce: order does not divide target");
        if (L2 == L_) return *this;
        i64 s = L2 / L_;
        std::vector<i128> acc(L2, 0);
        for (i64 j = 0; j < L_; ++j)
            if (c_[j]) acc[j * s] += c_[j];
        CycNumber x(L2);
        detail::reduce_raw(L2, acc, x.c_.data());
        x.den_ = den_;
        return x;
    }

    /// Galois automorphism e(j/L) -> e(aj/L).
    CycNumber galois(i64 a) const
    {
        if (std::gcd(mod(a, L_), L_) != 1) throw std::domain_error("galois: twist not coprime to order");
        std::vector<i128> acc(L_, 0);
        for (i64 j = 0; j < L_; ++j)
            if (c_[j]) acc[mod(static_cast<i64>(static_cast<i128>(a) * j % L_), L_)] += c_[j];
        return from_raw(L_, std::move(acc), den_);
    }

    CycNumber conj() const { return galois(-1); }

    /// Multiply by e(k/L).
    CycNumber times_root(i64 k) const
    {
        std::vector<i128> acc(L_, 0);
        for (i64 j = 0; j < L_; ++j)
            if (c_[j]) acc[mod(j + k, L_)] += c_[j];
        return from_raw(L_, std::move(acc), den_);
    }

    template <class F = double>
    std::complex<F> to_complex() const
    {
        const auto& r = detail::roots(L_);
        std::complex<long double> s = 0;
        for (i64 j = 0; j < L_; ++j)
            if (c_[j]) s += static_cast<long double>(c_[j]) * r.z[j];
        s /= static_cast<long double>(den_);
        return {static_cast<F>(s.real()), static_cast<F>(s.imag())};
    }

    CycNumber operator-() const
    {
        CycNumber x = *this;
        for (auto& v : x.c_) v = -v;
        return x;
    }

    friend CycNumber operator+(const CycNumber& x, const CycNumber& y) { return add(x, y, 1); }
    friend CycNumber operator-(const CycNumber& x, const CycNumber& y) { return add(x, y, -1); }
    friend CycNumber operator*(const CycNumber& x, const CycNumber& y)
    {
        if (x.L_ != y.L_) {
            i64 L = lcm(x.L_, y.L_);
            return x.coerce(L) * y.coerce(L);
        }
        const i64 L = x.L_;
        std::vector<i128> acc(L, 0);
        for (i64 i = 0; i < L; ++i) {
            if (!x.c_[i]) continue;
            for (i64 j = 0; j < L; ++j) {
                if (!y.c_[j]) continue;
                i64 k = i + j;
                if (k >= L) k -= L;
                acc[k] += static_cast<i128>(x.c_[i]) * y.c_[j];
            }
        }
        return from_raw(L, std::move(acc), mul_checked(x.den_, y.den_));
    }
    friend CycNumber operator*(const CycNumber& x, const Rat& r)
    {
        CycNumber y = x;
        for (auto& v : y.c_) v = mul_checked(v, r.numerator());
        y.den_ = mul_checked(y.den_, r.denominator());
        y.normalize();
        return y;
    }
    friend CycNumber operator*(const Rat& r, const CycNumber& x) { return x * r; }

    CycNumber& operator+=(const CycNumber& y) { return *this = *this + y; }
    CycNumber& operator-=(const CycNumber& y) { return *this = *this - y; }
    CycNumber& operator*=(const CycNumber& y) { return *this = *this * y; }

    friend bool operator==(const CycNumber& x, const CycNumber& y)
    {
        if (x.L_ != y.L_) {
            i64 L = lcm(x.L_, y.L_);
            return x.coerce(L) == y.coerce(L);
        }
        return x.den_ == y.den_ && x.c_ == y.c_;
    }
    friend bool operator!=(const CycNumber& x, const CycNumber& y) { return !(x == y); }

    friend std::ostream& operator<<(std::ostream& os, const CycNumber& x)
    {
        bool any = false;
        for (i64 j = 0; j < x.L_; ++j) {
            if (!x.c_[j]) continue;
            Rat r(x.c_[j], x.den_);
            os << (any ? " + " : "") << "(" << to_string(r) << ")";
            if (j) os << "*e(" << j << "/" << x.L_ << ")";
            any = true;
        }
        if (!any) os << "0";
        return os;
    }

private:
    static CycNumber add(const CycNumber& x, const CycNumber& y, i64 sign)
    {
        if (x.L_ != y.L_) {
            i64 L = lcm(x.L_, y.L_);
            return add(x.coerce(L), y.coerce(L), sign);
        }
        CycNumber z(x.L_);
        i64 g = std::gcd(x.den_, y.den_);
        i64 fx = y.den_ / g, fy = x.den_ / g;
        z.den_ = mul_checked(x.den_, fx);
        for (i64 j = 0; j < x.L_; ++j)
            z.c_[j] = narrow(static_cast<i128>(x.c_[j]) * fx + static_cast<i128>(sign) * y.c_[j] * fy);
        z.normalize();
        return z;
    }

    void fix_rational_constant()
    {
        if (L_ > 1) {
            std::vector<i128> acc(L_, 0);
            acc[0] = c_[0];
            detail::reduce_raw(L_, acc, c_.data());
        }
        normalize();
    }

    void normalize()
    {
        if (den_ < 0) {
            den_ = -den_;
            for (auto& v : c_) v = -v;
        }
        i64 g = den_;
        for (i64 v : c_) {
            if (g == 1) break;
            if (v) g = std::gcd(g, v < 0 ? -v : v);
        }
        if (is_zero()) g = den_;
        if (g > 1) {
            den_ /= g;
            for (auto& v : c_) v /= g;
        }
    }

    i64 L_;
    std::vector<i64> c_;
    i64 den_;
};

inline CycNumber embed_root(i64 L, i64 j) { return CycNumber::root(L, j); }

inline CycNumber galois_apply(i64 a, const CycNumber& x) { return x.galois(a); }

template <class F = double>
std::complex<F> to_complex(const CycNumber& x)
{
    return x.to_complex<F>();
}

/// Gauss sum G = sum_x e(-Q(x)) in Q(zeta_c), c the conductor of A.
inline CycNumber gauss_sum(const QuadSpace& A)
{
    const i64 c = A.conductor();
    std::vector<i128> acc(c, 0);
    for (i64 x = 0; x < A.size(); ++x) acc[mod(-A.q_num(x), c)] += 1;
    return CycNumber::from_raw(c, std::move(acc), 1);
}

/// Returns j mod 8 with sigma_A = G |A|^{-1/2} = e(j/8).
inline int gauss_sigma(const QuadSpace& A)
{
    const i64 L = lcm(8, A.conductor());
    CycNumber G = gauss_sum(A).coerce(L);
    const CycNumber n = CycNumber::integer(L, A.size());
    if (G * G.conj() != n) throw std::domain_error("gauss_sigma: |G|^2 != |A| for " + A.name());
    int found = -1;
    for (int j = 0; j < 8; ++j) {
        CycNumber x = G * embed_root(8, -j);
        if (x * x != n) continue;
        auto z = x.to_complex<long double>();
        if (z.real() > 0) {
            if (found >= 0) throw std::logic_error("gauss_sigma: ambiguous root");
            found = j;
        }
    }
    if (found < 0) throw std::domain_error("gauss_sigma: no eighth root matches for " + A.name());
    return found;
}

/// |A|^{1/2} as an element of Q(zeta_{lcm(8, c)}).
inline CycNumber sqrt_order(const QuadSpace& A)
{
    const i64 L = lcm(8, A.conductor());
    return gauss_sum(A).coerce(L) * embed_root(8, -gauss_sigma(A));
}

/**
 * @brief Dense square matrix over Q(zeta_L) with a common denominator.
 *
 * Entry (i, j) is stored as canonical numerators num[(i*n + j)*L + k].
 */
class CycMatrix {
public:
    CycMatrix() = default;
    CycMatrix(i64 n, i64 L) : n_(n), L_(L), num_(static_cast<std::size_t>(n * n * L), 0) {}

    static CycMatrix identity(i64 n, i64 L)
    {
        CycMatrix m(n, L);
        auto one = CycNumber::integer(L, 1);
        for (i64 i = 0; i < n; ++i) m.set_numerators(i, i, one.numerators());
        return m;
    }
    static CycMatrix from_entries(i64 n, i64 L, const std::vector<CycNumber>& e)
    {
        i64 den = 1;
        for (const auto& x : e) den = lcm(den, x.denominator());
        CycMatrix m(n, L);
        m.den_ = den;
        for (i64 i = 0; i < n; ++i)
            for (i64 j = 0; j < n; ++j) {
                CycNumber x = e[i * n + j].coerce(L) * Rat(den);
                m.set_numerators(i, j, x.numerators());
            }
        m.normalize();
        return m;
    }

    i64 size() const { return n_; }
    i64 order() const { return L_; }
    i64 denominator() const { return den_; }

    CycNumber at(i64 i, i64 j) const
    {
        std::vector<i128> acc(L_, 0);
        const i64* p = ptr(i, j);
        for (i64 k = 0; k < L_; ++k) acc[k] = p[k];
        return CycNumber::from_raw(L_, std::move(acc), den_);
    }

    CycNumber trace() const
    {
        std::vector<i128> acc(L_, 0);
        for (i64 i = 0; i < n_; ++i) {
            const i64* p = ptr(i, i);
            for (i64 k = 0; k < L_; ++k) acc[k] += p[k];
        }
        return CycNumber::from_raw(L_, std::move(acc), den_);
    }

    /// sum_i M(i, perm[i])
    CycNumber permuted_trace(const std::vector<i64>& perm) const
    {
        std::vector<i128> acc(L_, 0);
        for (i64 i = 0; i < n_; ++i) {
            const i64* p = ptr(i, perm[i]);
            for (i64 k = 0; k < L_; ++k) acc[k] += p[k];
        }
        return CycNumber::from_raw(L_, std::move(acc), den_);
    }

    /// tr(M P) for a rational matrix P given row-major.
    CycNumber trace_against(const std::vector<Rat>& P) const
    {
        i64 D = 1;
        for (const auto& r : P) D = lcm(D, r.denominator());
        std::vector<i128> acc(L_, 0);
        for (i64 i = 0; i < n_; ++i)
            for (i64 j = 0; j < n_; ++j) {
                const Rat& r = P[j * n_ + i];
                if (r.numerator() == 0) continue;
                i128 w = static_cast<i128>(r.numerator()) * (D / r.denominator());
                const i64* p = ptr(i, j);
                for (i64 k = 0; k < L_; ++k)
                    if (p[k]) acc[k] += w * p[k];
            }
        return CycNumber::from_raw(L_, std::move(acc), mul_checked(den_, D));
    }

    /// M <- M * diag(e(k_j / L))
    void mul_diag_roots(const std::vector<i64>& k)
    {
        std::vector<i128> acc(L_);
        for (i64 i = 0; i < n_; ++i)
            for (i64 j = 0; j < n_; ++j) {
                i64 s = mod(k[j], L_);
                if (s == 0) continue;
                i64* p = ptr(i, j);
                std::fill(acc.begin(), acc.end(), 0);
                for (i64 t = 0; t < L_; ++t)
                    if (p[t]) acc[(t + s) % L_] += p[t];
                detail::reduce_raw(L_, acc, p);
            }
    }

    /// M <- M * F with F(k, j) = e(f[k*n + j] / L)
    void mul_root_matrix(const std::vector<i64>& f)
    {
        std::vector<i64> out(num_.size(), 0);
        std::vector<i128> acc(L_);
        for (i64 i = 0; i < n_; ++i)
            for (i64 j = 0; j < n_; ++j) {
                std::fill(acc.begin(), acc.end(), 0);
                for (i64 k = 0; k < n_; ++k) {
                    const i64* p = ptr(i, k);
                    i64 s = mod(f[k * n_ + j], L_);
                    for (i64 t = 0; t < L_; ++t)
                        if (p[t]) {
                            i64 u = t + s;
                            if (u >= L_) u -= L_;
                            acc[u] += p[t];
                        }
                }
                detail::reduce_raw(L_, acc, out.data() + (i * n_ + j) * L_);
            }
        num_.swap(out);
    }

    void scale(const CycNumber& x)
    {
        CycNumber y = x.coerce(L_);
        const auto& c = y.numerators();
        std::vector<i128> acc(L_);
        for (i64 e = 0; e < n_ * n_; ++e) {
            i64* p = num_.data() + e * L_;
            std::fill(acc.begin(), acc.end(), 0);
            for (i64 t = 0; t < L_; ++t) {
                if (!p[t]) continue;
                for (i64 u = 0; u < L_; ++u)
                    if (c[u]) acc[(t + u) % L_] += static_cast<i128>(p[t]) * c[u];
            }
            detail::reduce_raw(L_, acc, p);
        }
        den_ = mul_checked(den_, y.denominator());
        normalize();
    }

    friend CycMatrix operator*(const CycMatrix& x, const CycMatrix& y)
    {
        if (x.n_ != y.n_ || x.L_ != y.L_) throw std::invalid_argument("CycMatrix: shape mismatch");
        const i64 n = x.n_, L = x.L_;
        CycMatrix z(n, L);
        std::vector<i128> acc(L);
        for (i64 i = 0; i < n; ++i)
            for (i64 j = 0; j < n; ++j) {
                std::fill(acc.begin(), acc.end(), 0);
                for (i64 k = 0; k < n; ++k) {
                    const i64* p = x.ptr(i, k);
                    const i64* q = y.ptr(k, j);
                    for (i64 s = 0; s < L; ++s) {
                        if (!p[s]) continue;
                        for (i64 t = 0; t < L; ++t)
                            if (q[t]) acc[(s + t) % L] += static_cast<i128>(p[s]) * q[t];
                    }
                }
                detail::reduce_raw(L, acc, z.num_.data() + (i * n + j) * L);
            }
        z.den_ = mul_checked(x.den_, y.den_);
        z.normalize();
        return z;
    }

    CycMatrix conj_transpose() const
    {
        CycMatrix z(n_, L_);
        z.den_ = den_;
        for (i64 i = 0; i < n_; ++i)
            for (i64 j = 0; j < n_; ++j) z.set_numerators(j, i, at(i, j).conj().coerce(L_) * Rat(den_));
        z.normalize();
        return z;
    }

    bool operator==(const CycMatrix& o) const
    {
        return n_ == o.n_ && L_ == o.L_ && den_ == o.den_ && num_ == o.num_;
    }
    bool operator!=(const CycMatrix& o) const { return !(*this == o); }

    bool is_identity() const { return *this == identity(n_, L_); }

    void normalize()
    {
        i64 g = den_;
        for (i64 v : num_) {
            if (g == 1) break;
            if (v) g = std::gcd(g, v < 0 ? -v : v);
        }
        bool zero = std::all_of(num_.begin(), num_.end(), [](i64 v) { return v == 0; });
        if (zero) g = den_;
        if (g > 1) {
            den_ /= g;
            for (auto& v : num_) v /= g;
        }
    }

private:
    void set_numerators(i64 i, i64 j, const CycNumber& x) { set_numerators(i, j, x.numerators()); }
    void set_numerators(i64 i, i64 j, const std::vector<i64>& c) { std::copy(c.begin(), c.end(), ptr(i, j)); }
    i64* ptr(i64 i, i64 j) { return num_.data() + (i * n_ + j) * L_; }
    const i64* ptr(i64 i, i64 j) const { return num_.data() + (i * n_ + j) * L_; }

    i64 n_ = 0, L_ = 1;
    std::vector<i64> num_;
    i64 den_ = 1;
};

}  // namespace wt1
