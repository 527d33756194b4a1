#pragma once

#include "weil.hpp"

#include <chrono>
#include <complex>
#include <map>
#include <string>
#include <vector>

namespace wt1 {

enum class Backend { Exact, Float, CrtFloat };

inline std::string to_string(Backend b)
{
    switch (b) {
    case Backend::Exact: return "exact";
    case Backend::Float: return "float";
    case Backend::CrtFloat: return "crt-float";
    }
    return "?";
}

inline Backend parse_backend(const std::string& s)
{
    if (s == "exact") return Backend::Exact;
    if (s == "float") return Backend::Float;
    if (s == "crt-float") return Backend::CrtFloat;
    throw std::invalid_argument("unknown backend: " + s);
}

struct DimQuery {
    i64 m = 1;
    i64 N = 1;
    i64 M = 0;  // 0 selects the least admissible value
    Backend backend = Backend::Exact;
    i64 budget = 10000000;  // element ceiling
};

struct DimResult {
    i64 value = 0;
    i64 M = 0;
    Backend backend = Backend::Exact;
    double raw_real = 0, raw_imag = 0;  // pre-snap accumulated value
    double elapsed = 0;
    i64 elements = 0;
};

/// Smallest M with m | M and N | 4M.
inline i64 default_M(i64 m, i64 N) { return lcm(m, N / std::gcd(N, i64{4})); }

inline bool admissible_M(i64 m, i64 N, i64 M) { return M > 0 && M % m == 0 && (4 * M) % N == 0; }

/// Divisors m' of M with M/m' squarefree.
inline std::vector<i64> admissible_mprimes(i64 M)
{
    std::vector<i64> v;
    for (i64 d : divisors(M))
        if (squarefree(M / d)) v.push_back(d);
    return v;
}

/// The p-local constituent of D_k(a): D_{k_2}(a k/k_2) at p = 2, L_{k_p}(a k/k_p) at odd p.
inline QuadSpace local_space(i64 k, i64 a, i64 p)
{
    const i64 kp = prime_part(k, p);
    if (p == 2) return QuadSpace::D(kp, a * (k / kp));
    return QuadSpace::L(kp, a * (k / kp));
}

namespace detail {

struct LocalGroup {
    i64 p, Q, N;
    std::vector<Sl2Mod> elems;
    std::vector<Sl2Word> words;
};

inline LocalGroup local_group(i64 p, i64 Q, i64 N, i64 budget)
{
    LocalGroup g{p, Q, N, {}, {}};
    g.elems = gamma0_image(N, Q).materialize(budget);
    g.words.reserve(g.elems.size());
    for (const auto& e : g.elems) g.words.push_back(canonical_word(e));
    return g;
}

template <class V>
struct LocalValues {
    std::vector<V> tr, trn;
};

inline LocalValues<CycNumber> exact_local_values(const LocalGroup& g, const QuadSpace& A)
{
    LocalValues<CycNumber> v;
    if (A.size() == 1) {
        v.tr.assign(g.elems.size(), CycNumber::integer(1, 1));
        v.trn = v.tr;
        return v;
    }
    const auto& rep = weil_rep(A);
    for (const auto& w : g.words) {
        CycMatrix M = rep.evaluate(w);
        v.tr.push_back(M.trace());
        v.trn.push_back(M.permuted_trace(rep.negation()));
    }
    return v;
}

inline LocalValues<std::complex<double>> float_local_values(const LocalGroup& g, const QuadSpace& A)
{
    LocalValues<std::complex<double>> v;
    if (A.size() == 1) {
        v.tr.assign(g.elems.size(), 1.0);
        v.trn = v.tr;
        return v;
    }
    FloatWeilRep rep(A);
    for (const auto& w : g.words) {
        auto M = rep.evaluate(w);
        v.tr.push_back(rep.trace(M));
        v.trn.push_back(rep.trace_neg(M));
    }
    return v;
}

inline i64 snap_integer(std::complex<double> z, double tol, const std::string& what)
{
    double r = std::round(z.real());
    if (std::abs(z.real() - r) > tol || std::abs(z.imag()) > tol)
        throw std::logic_error(what + ": accumulated value " + std::to_string(z.real()) + "+" +
                               std::to_string(z.imag()) + "i is not within tolerance of an integer");
    return static_cast<i64>(r);
}

inline i64 exact_integer(const CycNumber& x, const std::string& what)
{
    auto r = x.as_rational();
    if (!r || r->denominator() != 1) {
        std::ostringstream os;
        os << what << ": accumulated value " << x << " is not a rational integer";
        throw std::logic_error(os.str());
    }
    return r->numerator();
}

}  // namespace detail

/**
 * dim J_{1,m}(N) as sum over m' of <theta_m^- theta_{m'}^+, 1_N>, averaged over
 * the image of Gamma_0(N) in SL_2(Z/4M).
 */
inline DimResult dim_j1(DimQuery q)
{
    auto t0 = std::chrono::steady_clock::now();
    if (q.m < 1 || q.N < 1) throw std::invalid_argument("dim_j1: m and N must be positive");
    if (q.M == 0) q.M = default_M(q.m, q.N);
    if (!admissible_M(q.m, q.N, q.M)) throw std::invalid_argument("dim_j1: need m | M and N | 4M");
    const i64 Q = 4 * q.M;
    const auto mps = admissible_mprimes(q.M);
    DimResult res;
    res.M = q.M;
    res.backend = q.backend;

    if (q.backend == Backend::Float) {
        auto H = gamma0_image(q.N, Q);
        if (H.size() > q.budget)
            throw ResourceLimit("dim_j1: |H| = " + std::to_string(H.size()) + " exceeds budget");
        FloatWeilRep rm(QuadSpace::D(q.m));
        std::vector<FloatWeilRep> rps;
        for (i64 mp : mps) rps.emplace_back(QuadSpace::D(mp));
        std::complex<double> acc = 0;
        H.for_each([&](const Sl2Mod& g) {
            Sl2Word w = canonical_word(g);
            auto Mm = rm.evaluate(w);
            std::complex<double> minus = 0.5 * (rm.trace(Mm) - rm.trace_neg(Mm));
            std::complex<double> plus = 0;
            for (const auto& r : rps) {
                auto Mp = r.evaluate(w);
                plus += 0.5 * (r.trace(Mp) + r.trace_neg(Mp));
            }
            acc += minus * plus;
        });
        acc /= static_cast<double>(H.size());
        res.raw_real = acc.real();
        res.raw_imag = acc.imag();
        res.value = detail::snap_integer(acc, 1e-6, "dim_j1");
        res.elements = H.size();
    } else {
        // local groups at each prime dividing 4M
        std::vector<detail::LocalGroup> groups;
        i64 total = 1, local_total = 0;
        for (i64 p : prime_divisors(Q)) {
            i64 Qp = prime_part(Q, p), Np = prime_part(q.N, p);
            i64 size = group_order(Qp) / gamma0_index(Np);
            local_total += size;
            total *= size;
        }
        if (q.backend == Backend::CrtFloat && total > q.budget)
            throw ResourceLimit("dim_j1: |H| = " + std::to_string(total) + " exceeds budget");
        if (local_total > q.budget)
            throw ResourceLimit("dim_j1: local groups exceed budget");
        for (i64 p : prime_divisors(Q)) groups.push_back(detail::local_group(p, prime_part(Q, p), prime_part(q.N, p), q.budget));
        res.elements = total;

        if (q.backend == Backend::Exact) {
            CycNumber sum = CycNumber::integer(1, 0);
            std::map<std::pair<i64, QuadSpace>, detail::LocalValues<CycNumber>> cache;
            auto values = [&](std::size_t gi, const QuadSpace& A) -> const detail::LocalValues<CycNumber>& {
                auto key = std::make_pair(static_cast<i64>(gi), A);
                auto it = cache.find(key);
                if (it == cache.end()) it = cache.emplace(key, detail::exact_local_values(groups[gi], A)).first;
                return it->second;
            };
            for (i64 mp : mps)
                for (int s = 0; s < 2; ++s)
                    for (int sp = 0; sp < 2; ++sp) {
                        CycNumber prod = CycNumber::rational(1, Rat(s ? -1 : 1, 4));
                        for (std::size_t gi = 0; gi < groups.size(); ++gi) {
                            i64 p = groups[gi].p;
                            const auto& X = values(gi, local_space(q.m, 1, p));
                            const auto& Y = values(gi, local_space(mp, 1, p));
                            const auto& xs = s ? X.trn : X.tr;
                            const auto& ys = sp ? Y.trn : Y.tr;
                            CycNumber local = CycNumber::integer(1, 0);
                            for (std::size_t i = 0; i < xs.size(); ++i) local += xs[i] * ys[i];
                            prod *= local * Rat(1, static_cast<i64>(xs.size()));
                        }
                        sum += prod;
                    }
            res.value = detail::exact_integer(sum, "dim_j1");
            res.raw_real = static_cast<double>(res.value);
        } else {
            // full sweep over the CRT product with table lookups
            struct Combo {
                double sign;
                std::vector<const std::vector<std::complex<double>>*> x, y;
            };
            std::map<std::pair<std::size_t, QuadSpace>, detail::LocalValues<std::complex<double>>> cache;
            auto values = [&](std::size_t gi, const QuadSpace& A) -> const detail::LocalValues<std::complex<double>>& {
                auto key = std::make_pair(gi, A);
                auto it = cache.find(key);
                if (it == cache.end()) it = cache.emplace(key, detail::float_local_values(groups[gi], A)).first;
                return it->second;
            };
            std::vector<Combo> combos;
            for (i64 mp : mps)
                for (int s = 0; s < 2; ++s)
                    for (int sp = 0; sp < 2; ++sp) {
                        Combo c{s ? -0.25 : 0.25, {}, {}};
                        for (std::size_t gi = 0; gi < groups.size(); ++gi) {
                            const auto& X = values(gi, local_space(q.m, 1, groups[gi].p));
                            const auto& Y = values(gi, local_space(mp, 1, groups[gi].p));
                            c.x.push_back(s ? &X.trn : &X.tr);
                            c.y.push_back(sp ? &Y.trn : &Y.tr);
                        }
                        combos.push_back(std::move(c));
                    }
            const std::size_t P = groups.size();
            std::vector<std::size_t> idx(P, 0);
            std::complex<double> acc = 0;
            for (;;) {
                std::complex<double> v = 0;
                for (const auto& c : combos) {
                    std::complex<double> t = c.sign;
                    for (std::size_t k = 0; k < P; ++k) t *= (*c.x[k])[idx[k]] * (*c.y[k])[idx[k]];
                    v += t;
                }
                acc += v;
                std::size_t k = 0;
                while (k < P && ++idx[k] == groups[k].elems.size()) idx[k++] = 0;
                if (k == P) break;
            }
            acc /= static_cast<double>(total);
            res.raw_real = acc.real();
            res.raw_imag = acc.imag();
            res.value = detail::snap_integer(acc, 1e-6, "dim_j1");
        }
    }
    if (res.value < 0) throw std::logic_error("dim_j1: negative dimension");
    res.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

inline DimResult dim_j1(i64 m, i64 N, i64 M = 0, Backend b = Backend::Exact)
{
    return dim_j1(DimQuery{m, N, M, b});
}

/// (1/|H|) sum_{g in H} h1(w_g) h2(w_g), H the image of Gamma_0(N) in SL_2(Z/Q), exact.
inline CycNumber inner_product(const CharacterHandle& h1, const CharacterHandle& h2, i64 N, i64 Q,
                               i64 budget = 1000000)
{
    auto H = gamma0_image(N, Q);
    if (H.size() > budget) throw ResourceLimit("inner_product: |H| exceeds budget");
    CycNumber acc = CycNumber::integer(1, 0);
    H.for_each([&](const Sl2Mod& g) {
        Sl2Word w = canonical_word(g);
        acc += evaluate_character(h1, w) * evaluate_character(h2, w);
    });
    return acc * Rat(1, H.size());
}

/// (1/|G|) sum_{g in SL_2(Z/Q)} h1 h2 (g) 1_N(g), the unreduced definition.
inline CycNumber inner_product_full(const CharacterHandle& h1, const CharacterHandle& h2, i64 N, i64 Q)
{
    auto G = gamma0_image(1, Q);
    CycNumber acc = CycNumber::integer(1, 0);
    G.for_each([&](const Sl2Mod& g) {
        i64 f = perm_character(N, g);
        if (f == 0) return;
        Sl2Word w = canonical_word(g);
        acc += evaluate_character(h1, w) * evaluate_character(h2, w) * Rat(f);
    });
    return acc * Rat(1, G.size());
}

/// Floating inner product of theta^{s}_k(a) theta^{s'}_{k'}(a') against 1_N over SL_2(Z/Q).
inline std::complex<double> inner_product_float(const CharacterHandle& h1, const CharacterHandle& h2, i64 N, i64 Q,
                                                i64 budget = 10000000)
{
    for (const auto* h : {&h1, &h2})
        if (h->kind != CharKind::ThetaFull && h->kind != CharKind::ThetaPlus && h->kind != CharKind::ThetaMinus)
            throw std::invalid_argument("inner_product_float: theta handles only");
    auto H = gamma0_image(N, Q);
    if (H.size() > budget) throw ResourceLimit("inner_product_float: |H| exceeds budget");
    FloatWeilRep r1(h1.space()), r2(h2.space());
    auto val = [](const CharacterHandle& h, const FloatWeilRep& r, const FloatWeilRep::Matrix& M) {
        if (h.kind == CharKind::ThetaFull) return r.trace(M);
        return 0.5 * (r.trace(M) + static_cast<double>(h.sign) * r.trace_neg(M));
    };
    std::complex<double> acc = 0;
    H.for_each([&](const Sl2Mod& g) {
        Sl2Word w = canonical_word(g);
        acc += val(h1, r1, r1.evaluate(w)) * val(h2, r2, r2.evaluate(w));
    });
    return acc / static_cast<double>(H.size());
}

/// Syntactic hypotheses of the general vanishing lemma.
inline bool lemma_hypotheses(i64 m, i64 N)
{
    for (i64 x : {m, N}) {
        for (auto [p, e] : factorize(x))
            if (p % 4 == 3 && e >= 3) return false;
    }
    {
        std::map<i64, int> e;
        for (auto [p, k] : factorize(m)) e[p] += k;
        for (auto [p, k] : factorize(N)) e[p] += k;
        for (auto [p, k] : e)
            if (p % 4 == 3 && k >= 3) return false;
    }
    bool a = m % 2 == 1 && N % 64 != 0;
    bool b = m % 8 == 4 && N % 64 != 0;
    bool c = m % 32 != 0 && N % 32 != 0;
    return a || b || c;
}

}  // namespace wt1
