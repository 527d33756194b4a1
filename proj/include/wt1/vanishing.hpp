#pragma once

#include "arith.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wt1 {

/// (r, s, t) with r^2 (M/m) + s^2 t = 0 mod 4M.
struct ExponentWitness {
    i64 r = 0, s = 0, t = 0;

    bool valid(i64 m, i64 M) const
    {
        if (r <= 0 || r >= m || t <= 0 || M % t || M % m) return false;
        const i128 Q = 4 * static_cast<i128>(M);
        i128 v = static_cast<i128>(r) * r * (M / m) + static_cast<i128>(s) * s * t;
        return v % Q == 0;
    }
};

struct ExponentResult {
    i64 m = 0, M = 0;
    std::optional<ExponentWitness> witness;  // empty means Vanishes

    bool vanishes() const { return !witness; }
    std::string verdict() const { return vanishes() ? "Vanishes" : "Inconclusive"; }
};

/// Lexicographically least (r, s, t) solving the congruence, if any.
inline ExponentResult exponent_criterion(i64 m, i64 M)
{
    if (m < 1 || M < 1 || M % m) throw std::invalid_argument("exponent_criterion: need m | M");
    ExponentResult res{m, M, std::nullopt};
    const i64 Q = 4 * M, mp = M / m;
    const auto ts = divisors(M);
    for (i64 r = 1; r < m; ++r) {
        i64 lhs = mod(static_cast<i64>(static_cast<i128>(r) * r % Q * mp % Q), Q);
        for (i64 s = 0; s < Q; ++s) {
            i64 s2 = static_cast<i64>(static_cast<i128>(s) * s % Q);
            for (i64 t : ts) {
                if ((lhs + static_cast<i128>(s2) * t) % Q == 0) {
                    res.witness = ExponentWitness{r, s, t};
                    return res;
                }
            }
        }
    }
    return res;
}

struct ExpsappRow {
    i64 m, a, M;
    ExponentResult result;
};

/// The families (2, 2^a), (3, 3^a), (4, 2^a) for 0 <= a <= a_max; M = lcm(m, base^a).
inline std::vector<ExpsappRow> expsapp_suite(int a_max)
{
    if (a_max < 0) throw std::invalid_argument("expsapp_suite: a_max must be non-negative");
    std::vector<ExpsappRow> rows;
    for (auto [m, base] : {std::pair<i64, i64>{2, 2}, {3, 3}, {4, 2}})
        for (int a = 0; a <= a_max; ++a) {
            i64 M = lcm(m, ipow(base, a));
            rows.push_back({m, a, M, exponent_criterion(m, M)});
        }
    return rows;
}

inline bool expsapp_all_vanish(const std::vector<ExpsappRow>& rows)
{
    for (const auto& r : rows)
        if (!r.result.vanishes()) return false;
    return true;
}

}  // namespace wt1
