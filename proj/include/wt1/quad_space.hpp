#pragma once

#include "arith.hpp"

#include <stdexcept>
#include <string>

namespace wt1 {

enum class QuadKind { D, L };

/**
 * @brief Cyclic finite quadratic space.
 *
 * D_m(a): group Z/2m with Q(x) = a x^2 / 4m.
 * L_m(a): group Z/m (m odd) with Q(x) = a x^2 / m.
 * L_1 is the trivial space.
 */
struct QuadSpace {
    QuadKind kind = QuadKind::L;
    i64 m = 1;
    i64 a = 1;

    static QuadSpace D(i64 m, i64 a = 1)
    {
        if (m < 1) throw std::invalid_argument("D_m needs m >= 1");
        QuadSpace s{QuadKind::D, m, mod(a, 4 * m)};
        if (std::gcd(s.a, 4 * m) != 1) throw std::invalid_argument("D_m(a) needs gcd(a, 4m) = 1");
        return s;
    }

    static QuadSpace L(i64 m, i64 a = 1)
    {
        if (m < 1 || m % 2 == 0) throw std::invalid_argument("L_m needs odd m >= 1");
        QuadSpace s{QuadKind::L, m, mod(a, m)};
        if (m > 1 && std::gcd(s.a, m) != 1) throw std::invalid_argument("L_m(a) needs gcd(a, m) = 1");
        if (m == 1) s.a = 0;
        return s;
    }

    static QuadSpace trivial() { return L(1); }

    /// |A|
    i64 size() const { return kind == QuadKind::D ? 2 * m : m; }
    /// Denominator of Q: Q(x) = q_num(x) / conductor().
    i64 conductor() const { return kind == QuadKind::D ? 4 * m : m; }
    i64 q_num(i64 x) const
    {
        i64 c = conductor();
        i64 y = mod(x, c);
        return mod(static_cast<i64>((static_cast<i128>(a) * y % c) * y % c), c);
    }
    /// B(x, y) = q_num-scale numerator of Q(x+y) - Q(x) - Q(y).
    i64 b_num(i64 x, i64 y) const
    {
        i64 c = conductor();
        return mod(static_cast<i64>(static_cast<i128>(2 * a % c) * mod(x, c) % c * mod(y, c) % c), c);
    }
    i64 neg(i64 x) const { return mod(-x, size()); }

    /// Same group with the form multiplied by u (Galois twist).
    QuadSpace twisted(i64 u) const
    {
        return kind == QuadKind::D ? D(m, a * mod(u, 4 * m)) : L(m, m == 1 ? 1 : a * mod(u, m));
    }

    std::string name() const
    {
        std::string s = (kind == QuadKind::D ? "D_" : "L_") + std::to_string(m);
        if (a != 1 && !(kind == QuadKind::L && m == 1)) s += "(" + std::to_string(a) + ")";
        return s;
    }

    bool operator==(const QuadSpace& o) const { return kind == o.kind && m == o.m && a == o.a; }
    bool operator<(const QuadSpace& o) const
    {
        if (kind != o.kind) return kind < o.kind;
        if (m != o.m) return m < o.m;
        return a < o.a;
    }
};

}  // namespace wt1
