#pragma once

#include "arith.hpp"

#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>
#include <vector>

namespace wt1 {

/// Integer 2x2 matrix (a b; c d).
struct Mat2 {
    i64 a = 1, b = 0, c = 0, d = 1;

    i64 det() const { return narrow(static_cast<i128>(a) * d - static_cast<i128>(b) * c); }

    friend Mat2 operator*(const Mat2& x, const Mat2& y)
    {
        auto dot = [](i64 p, i64 q, i64 r, i64 s) {
            return narrow(static_cast<i128>(p) * q + static_cast<i128>(r) * s);
        };
        return {dot(x.a, y.a, x.b, y.c), dot(x.a, y.b, x.b, y.d), dot(x.c, y.a, x.d, y.c),
                dot(x.c, y.b, x.d, y.d)};
    }
    Mat2 operator-() const { return {-a, -b, -c, -d}; }
    bool operator==(const Mat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }

    /// Inverse of a determinant-one matrix.
    Mat2 inverse() const { return {d, -b, -c, a}; }

    static Mat2 T(i64 k = 1) { return {1, k, 0, 1}; }
    static Mat2 S() { return {0, -1, 1, 0}; }

    friend std::ostream& operator<<(std::ostream& os, const Mat2& m)
    {
        return os << "(" << m.a << "," << m.b << ";" << m.c << "," << m.d << ")";
    }
};

/// Element of SL_2(Z/QZ).
struct Sl2Mod {
    i64 Q = 1;
    i64 a = 1, b = 0, c = 0, d = 1;

    Sl2Mod() = default;
    Sl2Mod(i64 Q_, i64 a_, i64 b_, i64 c_, i64 d_) : Q(Q_), a(mod(a_, Q_)), b(mod(b_, Q_)), c(mod(c_, Q_)), d(mod(d_, Q_))
    {
        if (Q < 1) throw std::invalid_argument("Sl2Mod: modulus must be positive");
        if (mod(narrow(static_cast<i128>(a) * d - static_cast<i128>(b) * c), Q) != mod(1, Q))
            throw std::invalid_argument("Sl2Mod: determinant is not 1");
    }
    static Sl2Mod identity(i64 Q) { return {Q, 1, 0, 0, 1}; }
    static Sl2Mod reduce(const Mat2& g, i64 Q) { return {Q, g.a, g.b, g.c, g.d}; }

    friend Sl2Mod operator*(const Sl2Mod& x, const Sl2Mod& y)
    {
        if (x.Q != y.Q) throw std::invalid_argument("Sl2Mod: modulus mismatch");
        const i64 Q = x.Q;
        auto dot = [Q](i64 p, i64 q, i64 r, i64 s) {
            return static_cast<i64>((static_cast<i128>(p) * q + static_cast<i128>(r) * s) % Q);
        };
        return {Q, dot(x.a, y.a, x.b, y.c), dot(x.a, y.b, x.b, y.d), dot(x.c, y.a, x.d, y.c), dot(x.c, y.b, x.d, y.d)};
    }
    Sl2Mod inverse() const { return {Q, d, -b, -c, a}; }
    Sl2Mod reduce_to(i64 q) const
    {
        if (Q % q) throw std::invalid_argument("Sl2Mod: target modulus must divide Q");
        return {q, a, b, c, d};
    }
    bool operator==(const Sl2Mod& o) const { return Q == o.Q && a == o.a && b == o.b && c == o.c && d == o.d; }
    bool operator<(const Sl2Mod& o) const { return key() < o.key(); }
    i64 key() const { return ((a * Q + b) * Q + c) * Q + d; }

    friend std::ostream& operator<<(std::ostream& os, const Sl2Mod& g)
    {
        return os << "(" << g.a << "," << g.b << ";" << g.c << "," << g.d << ") mod " << g.Q;
    }
};

/**
 * Word T^{e0} S T^{e1} S ... S T^{ek} in the generators of the metaplectic group.
 * The word itself fixes the lift; the matrix value is cached.
 */
class Sl2Word {
public:
    Sl2Word() : exps_{0} {}
    explicit Sl2Word(std::vector<i64> exps) : exps_(std::move(exps))
    {
        if (exps_.empty()) exps_.push_back(0);
        value_ = evaluate_exps(exps_);
    }

    static Sl2Word S(int k = 1) { return Sl2Word(std::vector<i64>(k + 1, 0)); }
    static Sl2Word T(i64 k = 1) { return Sl2Word(std::vector<i64>{k}); }

    const std::vector<i64>& exps() const { return exps_; }
    std::size_t s_count() const { return exps_.size() - 1; }
    const Mat2& matrix() const { return value_; }
    bool empty() const { return exps_.size() == 1 && exps_[0] == 0; }

    friend Sl2Word operator*(const Sl2Word& x, const Sl2Word& y)
    {
        std::vector<i64> e = x.exps_;
        e.back() += y.exps_.front();
        e.insert(e.end(), y.exps_.begin() + 1, y.exps_.end());
        return Sl2Word(std::move(e));
    }
    Sl2Word pow(int k) const
    {
        Sl2Word r;
        for (int i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    bool operator==(const Sl2Word& o) const { return exps_ == o.exps_; }
    bool operator<(const Sl2Word& o) const { return exps_ < o.exps_; }

    friend std::ostream& operator<<(std::ostream& os, const Sl2Word& w)
    {
        for (std::size_t i = 0; i < w.exps_.size(); ++i) {
            if (i) os << " S ";
            os << "T^" << w.exps_[i];
        }
        return os;
    }

    static Mat2 evaluate_exps(const std::vector<i64>& e)
    {
        Mat2 m = Mat2::T(e[0]);
        for (std::size_t i = 1; i < e.size(); ++i) m = m * Mat2::S() * Mat2::T(e[i]);
        return m;
    }

private:
    std::vector<i64> exps_;
    Mat2 value_;
};

/// Continued-fraction decomposition with nearest-integer quotients.
inline Sl2Word word_decompose(Mat2 g)
{
    if (g.det() != 1) throw std::invalid_argument("word_decompose: determinant must be 1");
    std::vector<i64> e;
    while (g.c != 0) {
        // q = round(a / c)
        i64 num = 2 * g.a + g.c, den = 2 * g.c;
        if (den < 0) { num = -num; den = -den; }
        i64 q = num >= 0 ? num / den : -((-num + den - 1) / den);
        e.push_back(q);
        g = Mat2{g.c, g.d, narrow(static_cast<i128>(q) * g.c - g.a), narrow(static_cast<i128>(q) * g.d - g.b)};
    }
    if (g.a == 1) {
        e.push_back(g.b);
    } else {
        // -T^{-b} = S^2 T^{-b}
        e.push_back(0);
        e.push_back(0);
        e.push_back(-g.b);
    }
    return Sl2Word(std::move(e));
}

/// Deterministic lift of g to SL_2(Z).
inline Mat2 lift_to_integers(const Sl2Mod& g)
{
    const i64 Q = g.Q;
    if (Q == 1) return {};
    i64 c = g.c == 0 ? Q : g.c;
    i64 d = g.d;
    while (std::gcd(c, d) != 1) d += Q;
    auto e = egcd(c, d);  // e.x c + e.y d = 1
    // particular solution: a0 = e.y, b0 = -e.x gives a0 d - b0 c = 1
    i64 a0 = e.y, b0 = -e.x;
    // shift by t*(c, d) onto the requested residues of (a, b)
    i64 t = mod(narrow(static_cast<i128>(e.x) * (g.a - a0) + static_cast<i128>(e.y) * (g.b - b0)), Q);
    Mat2 m{narrow(a0 + static_cast<i128>(t) * c), narrow(b0 + static_cast<i128>(t) * d), c, d};
    if (m.det() != 1 || mod(m.a - g.a, Q) || mod(m.b - g.b, Q) || mod(m.c - g.c, Q) || mod(m.d - g.d, Q))
        throw std::logic_error("lift_to_integers failed");
    return m;
}

inline Sl2Word canonical_word(const Sl2Mod& g) { return word_decompose(lift_to_integers(g)); }

inline i64 group_order(i64 Q)
{
    i64 r = Q * Q * Q;
    for (i64 p : prime_divisors(Q)) r = r / (p * p) * (p * p - 1);
    return r;
}

/// [SL_2(Z) : Gamma_0(N)]
inline i64 gamma0_index(i64 N)
{
    i64 r = N;
    for (i64 p : prime_divisors(N)) r = r / p * (p + 1);
    return r;
}

/**
 * Stream over the image of Gamma_0(N) in SL_2(Z/QZ), ordered by (c, d, t).
 * A stream may be restricted to residues c with c/N = k mod parts.
 */
class Gamma0Image {
public:
    Gamma0Image(i64 N, i64 Q, i64 part = 0, i64 parts = 1) : N_(N), Q_(Q), part_(part), parts_(parts)
    {
        if (N < 1 || Q < 1 || Q % N) throw std::invalid_argument("gamma0_image: N must divide Q");
        if (parts < 1 || part < 0 || part >= parts) throw std::invalid_argument("gamma0_image: bad partition");
    }

    i64 N() const { return N_; }
    i64 Q() const { return Q_; }
    i64 size() const { return group_order(Q_) / gamma0_index(N_); }

    /// Split into independent streams by residue class of c.
    std::vector<Gamma0Image> partition(i64 parts) const
    {
        std::vector<Gamma0Image> v;
        for (i64 k = 0; k < parts; ++k) v.emplace_back(N_, Q_, k, parts);
        return v;
    }

    void for_each(const std::function<void(const Sl2Mod&)>& f) const
    {
        const i64 Q = Q_;
        for (i64 c = 0, idx = 0; c < Q; c += N_, ++idx) {
            if (idx % parts_ != part_) continue;
            for (i64 d = 0; d < Q; ++d) {
                if (std::gcd(std::gcd(c, d), Q) != 1) continue;
                Mat2 base = lift_to_integers_bottom(c, d);
                for (i64 t = 0; t < Q; ++t)
                    f(Sl2Mod(Q, base.a + t * c, base.b + t * d, c, d));
            }
        }
    }

    std::vector<Sl2Mod> materialize(i64 limit = 1000000) const
    {
        if (size() > limit) throw ResourceLimit("gamma0_image: " + std::to_string(size()) + " elements exceeds limit");
        std::vector<Sl2Mod> v;
        v.reserve(static_cast<std::size_t>(size()));
        for_each([&](const Sl2Mod& g) { v.push_back(g); });
        return v;
    }

private:
    Mat2 lift_to_integers_bottom(i64 c, i64 d) const
    {
        i64 cc = c == 0 ? Q_ : c;
        i64 dd = d;
        while (std::gcd(cc, dd) != 1) dd += Q_;
        auto e = egcd(cc, dd);
        return {mod(e.y, Q_), mod(-e.x, Q_), c, d};
    }

    i64 N_, Q_, part_, parts_;
};

inline Gamma0Image gamma0_image(i64 N, i64 Q) { return Gamma0Image(N, Q); }

inline std::vector<Sl2Mod> full_group(i64 Q) { return Gamma0Image(1, Q).materialize(); }

namespace detail {

/// Representatives of P^1(Z/N) as primitive pairs, canonical under unit scaling.
inline std::pair<i64, i64> p1_canonical(i64 c, i64 d, i64 N)
{
    std::pair<i64, i64> best{N, N};
    for (i64 u = 1; u < N || (N == 1 && u == 1); ++u) {
        if (std::gcd(u, N) != 1) continue;
        std::pair<i64, i64> v{mod(u * c, N), mod(u * d, N)};
        if (v < best) best = v;
        if (N == 1) break;
    }
    return best;
}

inline std::vector<std::pair<i64, i64>> p1_points(i64 N)
{
    std::set<std::pair<i64, i64>> s;
    for (i64 c = 0; c < N; ++c)
        for (i64 d = 0; d < N; ++d)
            if (std::gcd(std::gcd(c, d), N) == 1) s.insert(p1_canonical(c, d, N));
    if (N == 1) s.insert({0, 0});
    return {s.begin(), s.end()};
}

}  // namespace detail

/// Number of cosets Gamma_0(N) x fixed by right translation by g.
inline i64 perm_character(i64 N, const Sl2Mod& g)
{
    if (g.Q % N) throw std::invalid_argument("perm_character: N must divide the modulus");
    if (N == 1) return 1;
    i64 count = 0;
    for (i64 c = 0; c < N; ++c) {
        for (i64 d = 0; d < N; ++d) {
            if (std::gcd(std::gcd(c, d), N) != 1) continue;
            i64 w1 = mod(c * g.a + d * g.c, N), w2 = mod(c * g.b + d * g.d, N);
            // lambda with x c + y d = 1 mod N
            i64 x = 0, y = 0;
            {
                i64 cc = c == 0 ? N : c, dd = d;
                while (std::gcd(cc, dd) != 1) dd += N;
                auto e = egcd(cc, dd);
                x = e.x;
                y = e.y;
            }
            i64 lam = mod(x * w1 + y * w2, N);
            if (mod(lam * c - w1, N) == 0 && mod(lam * d - w2, N) == 0) ++count;
        }
    }
    return count / euler_phi(N);
}

/// |P^1(Z/N)|
inline i64 coset_space_size(i64 N) { return gamma0_index(N); }

/// Number of Gamma_0(p^2)-double cosets in SL_2(Z/p^2 Z), p odd.
inline i64 double_coset_count(i64 p)
{
    if (p == 2) throw std::invalid_argument("double_coset_count: p must be odd");
    if (p < 2 || prime_divisors(p) != std::vector<i64>{p}) throw std::invalid_argument("double_coset_count: p must be prime");
    const i64 N = p * p;
    auto pts = detail::p1_points(N);
    std::map<std::pair<i64, i64>, std::size_t> index;
    for (std::size_t i = 0; i < pts.size(); ++i) index[pts[i]] = i;
    std::vector<std::size_t> parent(pts.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
        return parent[i] == i ? i : parent[i] = find(parent[i]);
    };
    gamma0_image(N, N).for_each([&](const Sl2Mod& g) {
        for (std::size_t i = 0; i < pts.size(); ++i) {
            auto [c, d] = pts[i];
            auto w = detail::p1_canonical(c * g.a + d * g.c, c * g.b + d * g.d, N);
            std::size_t a = find(i), b = find(index.at(w));
            if (a != b) parent[a] = b;
        }
    });
    std::set<std::size_t> roots;
    for (std::size_t i = 0; i < pts.size(); ++i) roots.insert(find(i));
    return static_cast<i64>(roots.size());
}

/// Integer matrix congruent to g mod the p-part of Q and to I mod the rest.
inline Mat2 crt_local_lift(const Sl2Mod& g, i64 p)
{
    const i64 Q = g.Q;
    if (Q % p) throw std::invalid_argument("crt_local_lift: p must divide the modulus");
    const i64 qp = prime_part(Q, p), r = Q / qp;
    // x = 1 mod qp, 0 mod r and y = 0 mod qp, 1 mod r
    i64 ex = mod(r * inv_mod(r, qp), Q);
    i64 ey = mod(1 - ex, Q);
    auto mix = [&](i64 v, i64 id) { return mod(narrow(static_cast<i128>(v) * ex + static_cast<i128>(id) * ey), Q); };
    return lift_to_integers(Sl2Mod(Q, mix(g.a, 1), mix(g.b, 0), mix(g.c, 0), mix(g.d, 1)));
}

}  // namespace wt1
