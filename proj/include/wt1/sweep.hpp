#pragma once

#include "dimension.hpp"
#include "umbral.hpp"
#include "vanishing.hpp"

namespace wt1 {

enum class SweepMethod { Lemma, Exponent, Dimension, Skipped };

inline std::string to_string(SweepMethod m)
{
    switch (m) {
    case SweepMethod::Lemma: return "lemma";
    case SweepMethod::Exponent: return "exponent";
    case SweepMethod::Dimension: return "dimension";
    case SweepMethod::Skipped: return "skipped";
    }
    return "?";
}

struct SweepRow {
    ClassRecord record;
    SweepMethod method = SweepMethod::Skipped;
    std::optional<i64> dim;  // when computed
    bool vanishes = false;
    i64 cost = 0;  // elements touched or estimated
};

/// Local group elements needed by the exact backend at level N with modulus 4M.
inline i64 estimated_cost(i64 N, i64 M)
{
    i64 c = 0;
    const i64 Q = 4 * M;
    for (i64 p : prime_divisors(Q)) c += group_order(prime_part(Q, p)) / gamma0_index(prime_part(N, p));
    return c;
}

/// Settles J_{1,m}(N_g) for every levels row by the cheapest applicable test.
inline std::vector<SweepRow> umbral_sweep(const UmbralDataSet& ds, i64 budget)
{
    std::vector<SweepRow> out;
    for (const auto& rec : ds.levels) {
        SweepRow row;
        row.record = rec;
        const i64 m = rec.m, N = rec.N_g;
        if (lemma_hypotheses(m, N)) {
            row.method = SweepMethod::Lemma;
            row.vanishes = true;
            out.push_back(row);
            continue;
        }
        const i64 M = default_M(m, N);
        if (exponent_criterion(m, M).vanishes()) {
            row.method = SweepMethod::Exponent;
            row.vanishes = true;
            out.push_back(row);
            continue;
        }
        row.cost = estimated_cost(N, M);
        if (row.cost > budget) {
            out.push_back(row);
            continue;
        }
        auto r = dim_j1(DimQuery{m, N, M, Backend::Exact, budget});
        row.method = SweepMethod::Dimension;
        row.dim = r.value;
        row.vanishes = r.value == 0;
        out.push_back(row);
    }
    return out;
}

}  // namespace wt1
