#pragma once

#include "weil.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <ostream>

namespace wt1 {

using cplx = std::complex<double>;

inline cplx e_of(cplx x)
{
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::exp(cplx(0, two_pi) * x);
}

/// Kernel r^{[alpha]}_{1/2}(gamma, tau), summing k < depth with principal-branch half powers.
inline cplx kernel_r(double alpha, const Mat2& g, cplx tau, int depth)
{
    if (depth < 1) throw std::invalid_argument("kernel_r: depth must be positive");
    if (tau.imag() <= 0) throw std::invalid_argument("kernel_r: tau must lie in the upper half plane");
    if (g.c == 0) return 1.0;
    constexpr double pi = 3.14159265358979323846264338327950;
    const cplx j = static_cast<double>(g.c) * (static_cast<double>(g.c) * tau + static_cast<double>(g.d));
    const cplx z = cplx(0, -2 * pi * alpha) / j;
    if (z == cplx(0)) return 0.0;
    const cplx root = std::sqrt(z);
    cplx zk = 1.0, sum = 0.0;
    for (int k = 0; k < depth; ++k) {
        sum += zk * root / std::tgamma(k + 1.5);
        zk *= z;
    }
    return e_of(alpha / j) * sum;
}

/// One representative per coset with c = 0 mod n, 0 <= c < K, |d| < K^2; a = d^{-1} mod c least nonnegative.
inline std::vector<Mat2> coset_reps(i64 n, i64 K)
{
    if (n < 1 || K < 1) throw std::invalid_argument("coset_reps: n and K must be positive");
    std::vector<Mat2> reps{Mat2{}};
    const i64 K2 = K * K;
    for (i64 c = n; c < K; c += n)
        for (i64 d = -K2 + 1; d < K2; ++d) {
            if (std::gcd(c, d) != 1) continue;
            i64 a = c == 1 ? 0 : inv_mod(mod(d, c), c);
            i64 b = (a * d - 1) / c;
            reps.push_back({a, b, c, d});
        }
    return reps;
}

/// Least K at which a representative enters coset_reps(n, K).
inline i64 entry_level(const Mat2& g)
{
    if (g.c == 0) return 1;
    i64 d = g.d < 0 ? -g.d : g.d;
    i64 k = static_cast<i64>(std::sqrt(static_cast<double>(d)));
    while (k * k <= d) ++k;
    while (k > 1 && (k - 1) * (k - 1) > d) --k;
    return std::max(g.c + 1, k);
}

/// Sign relating the word's metaplectic lift to the principal branch of sqrt(c tau + d).
inline int principal_sign(const Sl2Word& w)
{
    const cplx tau0(0.0, 1.0);
    cplx t = tau0, u = 1.0;
    const auto& e = w.exps();
    for (std::size_t i = e.size(); i-- > 0;) {
        t += static_cast<double>(e[i]);
        if (i > 0) {
            u *= std::sqrt(t);
            t = -1.0 / t;
        }
    }
    const Mat2& g = w.matrix();
    cplx ratio = u / std::sqrt(static_cast<double>(g.c) * tau0 + static_cast<double>(g.d));
    if (std::abs(ratio - 1.0) < 1e-6) return 1;
    if (std::abs(ratio + 1.0) < 1e-6) return -1;
    throw std::logic_error("principal_sign: lift is not a square root of c tau + d");
}

namespace detail {

/// Exact rho_A(w) v for v in Z[zeta_L]^{|A|}, accumulating in Z[x]/(x^L - 1); returns reduced entries.
inline std::vector<CycNumber> apply_word_exact(const WeilRep& rep, const Sl2Word& w,
                                               std::vector<std::vector<i128>> v)
{
    const i64 n = rep.dim(), L = rep.order();
    const auto& q = rep.q_numerators();
    const auto& f = rep.s_kernel();
    auto apply_t = [&](i64 k) {
        if (k == 0) return;
        const i64 kk = mod(k, L);
        for (i64 x = 0; x < n; ++x) {
            i64 s = static_cast<i64>(static_cast<i128>(kk) * q[x] % L);
            if (s) std::rotate(v[x].rbegin(), v[x].rbegin() + s, v[x].rend());
        }
    };
    const auto& e = w.exps();
    int s_count = 0;
    apply_t(e.back());
    for (std::size_t i = e.size() - 1; i-- > 0;) {
        std::vector<std::vector<i128>> nv(n, std::vector<i128>(L, 0));
        for (i64 y = 0; y < n; ++y)
            for (i64 x = 0; x < n; ++x) {
                const i64 sh = f[x * n + y];
                const auto& src = v[x];
                auto& dst = nv[y];
                for (i64 j = 0; j < L; ++j) {
                    if (!src[j]) continue;
                    i64 t = j + sh;
                    if (t >= L) t -= L;
                    dst[t] += src[j];
                    if (dst[t] > (i128(1) << 120) || dst[t] < -(i128(1) << 120)) throw OverflowError("apply_word_exact");
                }
            }
        v = std::move(nv);
        ++s_count;
        apply_t(e[i]);
    }
    CycNumber scale = CycNumber::integer(L, 1);
    for (int i = 0; i < s_count; ++i) scale *= rep.s_scalar();
    std::vector<CycNumber> out;
    out.reserve(n);
    for (i64 x = 0; x < n; ++x) out.push_back(CycNumber::from_raw(L, v[x], 1) * scale);
    return out;
}

}  // namespace detail

/// Column j of the exact Weil matrix of the principal-branch multiplier on the odd basis e_j - e_{-j}.
inline std::vector<CycNumber> odd_multiplier_column(i64 m, const Mat2& g, i64 j)
{
    const auto& rep = detail::weil_rep(QuadSpace::D(m));
    const i64 n = rep.dim(), L = rep.order();
    std::vector<std::vector<i128>> v(n, std::vector<i128>(L, 0));
    v[mod(j, n)][0] += 1;
    v[mod(-j, n)][0] -= 1;
    Sl2Word w = word_decompose(g);
    auto col = detail::apply_word_exact(rep, w, std::move(v));
    const int eps = principal_sign(w);
    std::vector<CycNumber> out;
    for (i64 i = 1; i < m; ++i) out.push_back(eps > 0 ? col[i] : CycNumber::integer(L, 0) - col[i]);
    return out;
}

/// Maps gamma to an (m-1) x (m-1) matrix on the basis indexed 1..m-1.
using Multiplier = std::function<Eigen::MatrixXcd(const Mat2&)>;

/**
 * Theta_m multiplier on the odd part: nu_{ij}(gamma) = rho(gamma)_{i,j} - rho(gamma)_{i,-j},
 * with the word's lift matched to the principal branch. Exact zeros map to exact zeros.
 */
inline Multiplier theta_odd_multiplier(i64 m, bool transpose = false)
{
    if (m < 2) throw std::invalid_argument("theta_odd_multiplier: m must be at least 2");
    return [m, transpose](const Mat2& g) {
        Eigen::MatrixXcd M(m - 1, m - 1);
        for (i64 j = 1; j < m; ++j) {
            auto col = odd_multiplier_column(m, g, j);
            for (i64 i = 1; i < m; ++i) M(i - 1, j - 1) = col[i - 1].to_complex<double>();
        }
        if (transpose) M.transposeInPlace();
        return M;
    };
}

struct RademacherParams {
    i64 n = 1;
    i64 m = 1;
    i64 K = 1;
    int depth = 20;
    Multiplier multiplier;

    RademacherParams(i64 n_, i64 m_, i64 K_, int depth_ = 20, Multiplier mult = {})
        : n(n_), m(m_), K(K_), depth(depth_), multiplier(mult ? std::move(mult) : theta_odd_multiplier(m_))
    {
        if (n < 1 || m < 2 || K < 1 || depth < 1) throw std::invalid_argument("RademacherParams: bad parameters");
        Eigen::MatrixXcd t = multiplier(Mat2::T());
        const cplx want = e_of(1.0 / (4.0 * static_cast<double>(m)));
        if (t.rows() != m - 1 || t.cols() != m - 1) throw std::invalid_argument("multiplier has the wrong size");
        if (std::abs(t(0, 0) - want) > 1e-12) throw std::invalid_argument("multiplier: nu_11(T) != e(1/4m)");
        Eigen::MatrixXcd id = multiplier(Mat2{});
        if (!id.isIdentity(1e-12)) throw std::invalid_argument("multiplier: nu(identity) != 1");
    }
};

/// Summand for one coset representative, as an (m-1)-vector.
inline Eigen::VectorXcd rademacher_term(const RademacherParams& p, const Mat2& g, cplx tau)
{
    const double inv4m = 1.0 / (4.0 * static_cast<double>(p.m));
    const cplx ctd = static_cast<double>(g.c) * tau + static_cast<double>(g.d);
    const cplx gt = (static_cast<double>(g.a) * tau + static_cast<double>(g.b)) / ctd;
    cplx scalar = e_of(-inv4m * gt) / std::sqrt(ctd) * kernel_r(-inv4m, g, tau, p.depth);
    Eigen::MatrixXcd nu = p.multiplier(g);
    return nu.col(0) * scalar;
}

/// Partial sum over coset_reps(n, K).
inline Eigen::VectorXcd truncated_sum(const RademacherParams& p, cplx tau)
{
    if (tau.imag() <= 0) throw std::invalid_argument("truncated_sum: tau must lie in the upper half plane");
    Eigen::VectorXcd s = Eigen::VectorXcd::Zero(p.m - 1);
    for (const auto& g : coset_reps(p.n, p.K)) s += rademacher_term(p, g, tau);
    return s;
}

/// Partial sums for every K' = 1..K from one pass over coset_reps(n, K).
inline std::vector<Eigen::VectorXcd> truncated_sums(const RademacherParams& p, cplx tau)
{
    std::vector<Eigen::VectorXcd> by_level(p.K + 1, Eigen::VectorXcd::Zero(p.m - 1));
    for (const auto& g : coset_reps(p.n, p.K)) by_level[entry_level(g)] += rademacher_term(p, g, tau);
    std::vector<Eigen::VectorXcd> out;
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(p.m - 1);
    for (i64 k = 1; k <= p.K; ++k) {
        acc += by_level[k];
        out.push_back(acc);
    }
    return out;
}

/// Rows K,component,real,imag,cauchy_delta; components are labelled 1..m-1.
inline void write_diagnostics_csv(std::ostream& os, const std::vector<Eigen::VectorXcd>& sums)
{
    os << "K,component,real,imag,cauchy_delta\n";
    os.precision(17);
    for (std::size_t k = 0; k < sums.size(); ++k)
        for (Eigen::Index i = 0; i < sums[k].size(); ++i) {
            double delta = k == 0 ? 0.0 : std::abs(sums[k](i) - sums[k - 1](i));
            os << (k + 1) << "," << (i + 1) << "," << sums[k](i).real() << "," << sums[k](i).imag() << "," << delta << "\n";
        }
}

}  // namespace wt1
