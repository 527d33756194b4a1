#pragma once

#include "cyclotomic.hpp"
#include "quad_space.hpp"
#include "sl2.hpp"

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <complex>
#include <map>
#include <memory>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace wt1 {

using BigRat = boost::multiprecision::cpp_rational;

/**
 * @brief Weil representation of a cyclic quadratic space, exact.
 *
 * rho(T) e^x = e(Q(x)) e^x and rho(S) e^x = (G/|A|) sum_y e(-B(x,y)) e^y,
 * with G the Gauss sum, so that G/|A| = sigma_A |A|^{-1/2}. Matrices act on
 * column vectors; rho(S)_{yx} is the coefficient of e^y in rho(S) e^x.
 */
class WeilRep {
public:
    explicit WeilRep(const QuadSpace& A)
        : A_(A), n_(A.size()), L_(A.conductor()), tq_(n_), fneg_(n_ * n_), neg_(n_)
    {
        gauss_sigma(A_);  // rejects malformed spaces
        for (i64 x = 0; x < n_; ++x) {
            tq_[x] = A_.q_num(x);
            neg_[x] = A_.neg(x);
            for (i64 y = 0; y < n_; ++y) fneg_[x * n_ + y] = mod(-A_.b_num(x, y), L_);
        }
        CycNumber G = gauss_sum(A_);
        s_scale_ = G * Rat(1, n_);
        pair_scale_ = s_scale_ * s_scale_;
    }

    const QuadSpace& space() const { return A_; }
    i64 dim() const { return n_; }
    i64 order() const { return L_; }
    const std::vector<i64>& negation() const { return neg_; }
    /// Numerators of Q(x) over the conductor.
    const std::vector<i64>& q_numerators() const { return tq_; }
    /// F(x, y) = -B(x, y) numerators, row-major.
    const std::vector<i64>& s_kernel() const { return fneg_; }
    const CycNumber& s_scalar() const { return s_scale_; }

    CycMatrix T(i64 k = 1) const
    {
        CycMatrix m = CycMatrix::identity(n_, L_);
        m.mul_diag_roots(t_exponents(k));
        return m;
    }
    CycMatrix S() const { return evaluate(Sl2Word::S()); }

    CycMatrix evaluate(const Sl2Word& w) const
    {
        const auto& e = w.exps();
        CycMatrix m = CycMatrix::identity(n_, L_);
        m.mul_diag_roots(t_exponents(e[0]));
        int pending = 0;
        for (std::size_t i = 1; i < e.size(); ++i) {
            m.mul_root_matrix(fneg_);
            if (++pending == 2) {
                m.scale(pair_scale_);
                pending = 0;
            }
            if (e[i]) m.mul_diag_roots(t_exponents(e[i]));
        }
        if (pending) m.scale(s_scale_);
        return m;
    }

    CycNumber trace(const Sl2Word& w) const { return evaluate(w).trace(); }
    /// tr(rho(w) N), N e^x = e^{-x}
    CycNumber trace_neg(const Sl2Word& w) const { return evaluate(w).permuted_trace(neg_); }

private:
    std::vector<i64> t_exponents(i64 k) const
    {
        std::vector<i64> v(n_);
        i64 kk = mod(k, L_);
        for (i64 x = 0; x < n_; ++x) v[x] = static_cast<i64>(static_cast<i128>(kk) * tq_[x] % L_);
        return v;
    }

    QuadSpace A_;
    i64 n_, L_;
    std::vector<i64> tq_, fneg_, neg_;
    CycNumber s_scale_, pair_scale_;
};

/// Floating-point counterpart of WeilRep.
class FloatWeilRep {
public:
    using Matrix = Eigen::MatrixXcd;

    explicit FloatWeilRep(const QuadSpace& A) : A_(A), n_(A.size()), tdiag_(n_), S_(n_, n_)
    {
        const i64 c = A.conductor();
        const double two_pi = 6.283185307179586476925286766559;
        auto root = [&](i64 num) {
            double t = two_pi * static_cast<double>(mod(num, c)) / static_cast<double>(c);
            return std::complex<double>(std::cos(t), std::sin(t));
        };
        std::complex<double> s = gauss_sum(A).to_complex<double>() / static_cast<double>(n_);
        for (i64 x = 0; x < n_; ++x) {
            tdiag_[x] = root(A.q_num(x));
            for (i64 y = 0; y < n_; ++y) S_(y, x) = s * root(-A.b_num(x, y));
        }
        tq_.resize(n_);
        for (i64 x = 0; x < n_; ++x) tq_[x] = A.q_num(x);
        neg_.resize(n_);
        for (i64 x = 0; x < n_; ++x) neg_[x] = A.neg(x);
    }

    const QuadSpace& space() const { return A_; }
    i64 dim() const { return n_; }
    const Matrix& S() const { return S_; }

    Matrix evaluate(const Sl2Word& w) const
    {
        const auto& e = w.exps();
        Matrix m = Matrix::Identity(n_, n_);
        apply_t(m, e[0]);
        for (std::size_t i = 1; i < e.size(); ++i) {
            m = m * S_;
            apply_t(m, e[i]);
        }
        return m;
    }

    std::complex<double> trace(const Matrix& m) const { return m.trace(); }
    std::complex<double> trace_neg(const Matrix& m) const
    {
        std::complex<double> s = 0;
        for (i64 i = 0; i < n_; ++i) s += m(i, neg_[i]);
        return s;
    }

private:
    void apply_t(Matrix& m, i64 k) const
    {
        if (k == 0) return;
        const i64 c = A_.conductor();
        const double two_pi = 6.283185307179586476925286766559;
        i64 kk = mod(k, c);
        for (i64 x = 0; x < n_; ++x) {
            double t = two_pi * static_cast<double>(static_cast<i128>(kk) * tq_[x] % c) / static_cast<double>(c);
            m.col(x) *= std::complex<double>(std::cos(t), std::sin(t));
        }
    }

    QuadSpace A_;
    i64 n_;
    std::vector<std::complex<double>> tdiag_;
    Matrix S_;
    std::vector<i64> tq_, neg_;
};

/// O_m = {a mod 2m : a^2 = 1 mod 4m}
inline std::vector<i64> orthogonal_group(i64 m)
{
    std::vector<i64> v;
    for (i64 a = 0; a < 2 * m; ++a)
        if (mod(a * a, 4 * m) == mod(1, 4 * m)) v.push_back(a);
    if (m == 1 && v.empty()) v.push_back(1);
    return v;
}

/// Permutation matrix e^r -> e^{ar} on Z/2m, row-major.
inline std::vector<Rat> om_action(i64 m, i64 a)
{
    const i64 n = 2 * m;
    std::vector<Rat> P(n * n, Rat(0));
    for (i64 r = 0; r < n; ++r) P[mod(a * r, n) * n + r] = 1;
    return P;
}

/// U_d : Theta_{m'} -> Theta_{m' d^2}, column r holds the image of theta_{m',r}.
inline std::vector<std::vector<Rat>> u_d_map(i64 mp, i64 d)
{
    const i64 m = mp * d * d;
    std::vector<std::vector<Rat>> U(2 * m, std::vector<Rat>(2 * mp, Rat(0)));
    for (i64 r = 0; r < 2 * mp; ++r)
        for (i64 rr = 0; rr < 2 * m; ++rr)
            if (mod(rr - d * r, 2 * mp * d) == 0) U[rr][r] = 1;
    return U;
}

namespace detail {

using RatMatrix = std::vector<BigRat>;  // n x n row-major

inline RatMatrix identity_rat(i64 n)
{
    RatMatrix I(n * n, BigRat(0));
    for (i64 i = 0; i < n; ++i) I[i * n + i] = 1;
    return I;
}

/// Orthogonal projector onto the span of the given real vectors.
inline RatMatrix span_projector(i64 n, const std::vector<std::vector<BigRat>>& vecs)
{
    std::vector<std::vector<BigRat>> basis;
    std::vector<BigRat> norms;
    for (auto v : vecs) {
        for (std::size_t b = 0; b < basis.size(); ++b) {
            BigRat dot = 0;
            for (i64 i = 0; i < n; ++i) dot += v[i] * basis[b][i];
            if (dot == 0) continue;
            BigRat f = dot / norms[b];
            for (i64 i = 0; i < n; ++i) v[i] -= f * basis[b][i];
        }
        BigRat nn = 0;
        for (i64 i = 0; i < n; ++i) nn += v[i] * v[i];
        if (nn == 0) continue;
        basis.push_back(v);
        norms.push_back(nn);
    }
    RatMatrix P(n * n, BigRat(0));
    for (std::size_t b = 0; b < basis.size(); ++b)
        for (i64 i = 0; i < n; ++i) {
            if (basis[b][i] == 0) continue;
            for (i64 j = 0; j < n; ++j) P[i * n + j] += basis[b][i] * basis[b][j] / norms[b];
        }
    return P;
}

inline RatMatrix mul(i64 n, const RatMatrix& x, const RatMatrix& y)
{
    RatMatrix z(n * n, BigRat(0));
    for (i64 i = 0; i < n; ++i)
        for (i64 k = 0; k < n; ++k) {
            if (x[i * n + k] == 0) continue;
            for (i64 j = 0; j < n; ++j) z[i * n + j] += x[i * n + k] * y[k * n + j];
        }
    return z;
}

inline std::vector<Rat> to_small(const RatMatrix& x)
{
    std::vector<Rat> v;
    v.reserve(x.size());
    for (const auto& r : x) {
        auto nu = boost::multiprecision::numerator(r), de = boost::multiprecision::denominator(r);
        v.emplace_back(nu.convert_to<i64>(), de.convert_to<i64>());
    }
    return v;
}

}  // namespace detail

/// Projector onto Theta_m^new.
inline std::vector<Rat> new_part_projector(i64 m)
{
    const i64 n = 2 * m;
    std::vector<std::vector<BigRat>> vecs;
    for (i64 d = 2; d * d <= m; ++d) {
        if (m % (d * d)) continue;
        auto U = u_d_map(m / (d * d), d);
        for (std::size_t r = 0; r < U[0].size(); ++r) {
            std::vector<BigRat> v(n);
            for (i64 i = 0; i < n; ++i) v[i] = BigRat(U[i][r].numerator(), U[i][r].denominator());
            vecs.push_back(std::move(v));
        }
    }
    auto P = detail::span_projector(n, vecs);
    auto I = detail::identity_rat(n);
    for (i64 i = 0; i < n * n; ++i) I[i] -= P[i];
    return detail::to_small(I);
}

/// Signs of a in O_m at each prime p | m: a = eps_p mod 2 m_p.
inline std::map<i64, int> om_local_signs(i64 m, i64 a)
{
    std::map<i64, int> s;
    for (i64 p : prime_divisors(m)) {
        i64 mp = prime_part(m, p);
        s[p] = mod(a - 1, 2 * mp) == 0 ? 1 : -1;
    }
    return s;
}

/// The element a mod 2m with a = -1 mod 2 m_p and a = 1 mod 2m/m_p.
inline i64 om_prime_element(i64 m, i64 p)
{
    i64 mp = prime_part(m, p);
    for (i64 a = 1; a < 2 * m; a += 2)
        if (mod(a + 1, 2 * mp) == 0 && mod(a - 1, 2 * m / mp) == 0) return a;
    return 1;
}

/// A character of O_m, stored as values in the order of orthogonal_group(m).
struct OmCharacter {
    i64 m = 1;
    std::vector<int> values;

    /// Character with alpha(p) = signs[p] for primes p | m (absent primes default to +1).
    static OmCharacter from_prime_signs(i64 m, const std::map<i64, int>& signs)
    {
        OmCharacter al{m, {}};
        for (i64 a : orthogonal_group(m)) {
            int v = 1;
            for (auto [p, e] : om_local_signs(m, a)) {
                auto it = signs.find(p);
                if (e == -1 && it != signs.end()) v *= it->second;
            }
            al.values.push_back(v);
        }
        return al;
    }

    int operator()(i64 a) const
    {
        auto O = orthogonal_group(m);
        for (std::size_t i = 0; i < O.size(); ++i)
            if (O[i] == mod(a, 2 * m)) return values.at(i);
        throw std::invalid_argument("OmCharacter: element not in O_m");
    }

    /// alpha(p) in the prime-evaluation convention.
    int at_prime(i64 p) const { return m % p ? 1 : (*this)(om_prime_element(m, p)); }

    void validate() const
    {
        auto O = orthogonal_group(m);
        if (values.size() != O.size()) throw std::invalid_argument("OmCharacter: wrong number of values");
        for (std::size_t i = 0; i < O.size(); ++i) {
            if (values[i] != 1 && values[i] != -1) throw std::invalid_argument("OmCharacter: values must be +-1");
            if (O[i] == 1 && values[i] != 1) throw std::invalid_argument("OmCharacter: alpha(1) must be 1");
            for (std::size_t j = 0; j < O.size(); ++j) {
                i64 ab = mod(O[i] * O[j], 2 * m);
                if ((*this)(ab) != values[i] * values[j])
                    throw std::invalid_argument("OmCharacter: not a homomorphism");
            }
        }
    }

    static std::vector<OmCharacter> all(i64 m)
    {
        std::vector<OmCharacter> v;
        auto ps = prime_divisors(m);
        for (std::size_t mask = 0; mask < (std::size_t(1) << ps.size()); ++mask) {
            std::map<i64, int> s;
            for (std::size_t i = 0; i < ps.size(); ++i) s[ps[i]] = (mask >> i) & 1 ? -1 : 1;
            v.push_back(from_prime_signs(m, s));
        }
        return v;
    }

    bool operator==(const OmCharacter& o) const { return m == o.m && values == o.values; }
    bool operator<(const OmCharacter& o) const { return std::tie(m, values) < std::tie(o.m, o.values); }
};

inline std::vector<Rat> alpha_projector(const OmCharacter& al)
{
    const i64 n = 2 * al.m;
    auto O = orthogonal_group(al.m);
    detail::RatMatrix P(n * n, BigRat(0));
    for (std::size_t i = 0; i < O.size(); ++i) {
        auto A = om_action(al.m, O[i]);
        for (i64 k = 0; k < n * n; ++k)
            if (A[k].numerator() != 0) P[k] += BigRat(al.values[i], static_cast<i64>(O.size()));
    }
    return detail::to_small(P);
}

/// Projector onto the complement of the image of L_{p^{k-2}} in L_{p^k}.
inline std::vector<Rat> lambda_new_projector(i64 p, int k)
{
    const i64 n = ipow(p, k);
    if (k < 2) {
        std::vector<Rat> I(n * n, Rat(0));
        for (i64 i = 0; i < n; ++i) I[i * n + i] = 1;
        return I;
    }
    const i64 small = ipow(p, k - 2), mid = ipow(p, k - 1);
    std::vector<std::vector<BigRat>> vecs;
    for (i64 y = 0; y < small; ++y) {
        std::vector<BigRat> v(n, BigRat(0));
        for (i64 yy = y; yy < mid; yy += small) v[mod(p * yy, n)] = 1;
        vecs.push_back(std::move(v));
    }
    auto P = detail::span_projector(n, vecs);
    auto I = detail::identity_rat(n);
    for (i64 i = 0; i < n * n; ++i) I[i] -= P[i];
    return detail::to_small(I);
}

/// (I + sign N) / 2 on a cyclic group of order n.
inline std::vector<Rat> sign_projector(i64 n, int sign)
{
    std::vector<Rat> P(n * n, Rat(0));
    for (i64 x = 0; x < n; ++x) {
        P[x * n + x] += Rat(1, 2);
        P[mod(-x, n) * n + x] += Rat(sign, 2);
    }
    return P;
}

inline std::vector<Rat> mul_rat(i64 n, const std::vector<Rat>& x, const std::vector<Rat>& y)
{
    std::vector<Rat> z(n * n, Rat(0));
    for (i64 i = 0; i < n; ++i)
        for (i64 k = 0; k < n; ++k) {
            if (x[i * n + k].numerator() == 0) continue;
            for (i64 j = 0; j < n; ++j)
                if (y[k * n + j].numerator() != 0) z[i * n + j] += x[i * n + k] * y[k * n + j];
        }
    return z;
}

enum class CharKind { ThetaFull, ThetaPlus, ThetaMinus, NuNew, LambdaNew };

/**
 * @brief Symbolic character of a Weil-type module, with Galois twist.
 *
 * Theta kinds use D_m(twist); NuNew uses D_m(twist) with alpha; LambdaNew
 * uses L_{p^k}(twist) with sign.
 */
struct CharacterHandle {
    CharKind kind = CharKind::ThetaFull;
    i64 m = 1;
    i64 p = 0;
    int k = 0;
    int sign = 1;
    OmCharacter alpha;
    i64 twist = 1;

    static CharacterHandle theta(i64 m, i64 twist = 1) { return {CharKind::ThetaFull, m, 0, 0, 1, {}, twist}; }
    static CharacterHandle theta_pm(i64 m, int sign, i64 twist = 1)
    {
        return {sign > 0 ? CharKind::ThetaPlus : CharKind::ThetaMinus, m, 0, 0, sign, {}, twist};
    }
    static CharacterHandle nu(const OmCharacter& al, i64 twist = 1)
    {
        al.validate();
        return {CharKind::NuNew, al.m, 0, 0, 1, al, twist};
    }
    static CharacterHandle lambda(i64 p, int k, int sign, i64 twist = 1)
    {
        if (p == 2) throw std::invalid_argument("lambda_character: p must be odd");
        if (prime_divisors(p) != std::vector<i64>{p} || k < 1) throw std::invalid_argument("lambda_character: bad prime power");
        if (twist % p == 0) throw std::invalid_argument("lambda_character: twist must be coprime to p");
        return {CharKind::LambdaNew, ipow(p, k), p, k, sign, {}, twist};
    }

    QuadSpace space() const
    {
        return kind == CharKind::LambdaNew ? QuadSpace::L(m, twist) : QuadSpace::D(m, twist);
    }

    std::string name() const
    {
        std::string t = twist == 1 ? "" : "[" + std::to_string(twist) + "]";
        switch (kind) {
        case CharKind::ThetaFull: return "theta_" + std::to_string(m) + t;
        case CharKind::ThetaPlus: return "theta+_" + std::to_string(m) + t;
        case CharKind::ThetaMinus: return "theta-_" + std::to_string(m) + t;
        case CharKind::NuNew: {
            std::string s = "nu_" + std::to_string(m) + "^(";
            for (std::size_t i = 0; i < alpha.values.size(); ++i) s += alpha.values[i] > 0 ? "+" : "-";
            return s + ")" + t;
        }
        case CharKind::LambdaNew: return "lambda" + std::string(sign > 0 ? "+" : "-") + "_" + std::to_string(m) + t;
        }
        return "?";
    }
};

inline CharacterHandle new_alpha_character(const OmCharacter& al) { return CharacterHandle::nu(al); }
inline CharacterHandle lambda_character(i64 p, int k, int sign, i64 twist = 1)
{
    return CharacterHandle::lambda(p, k, sign, twist);
}

namespace detail {

inline const WeilRep& weil_rep(const QuadSpace& A)
{
    static std::shared_mutex mu;
    static std::map<QuadSpace, std::unique_ptr<WeilRep>> cache;
    {
        std::shared_lock lock(mu);
        auto it = cache.find(A);
        if (it != cache.end()) return *it->second;
    }
    auto rep = std::make_unique<WeilRep>(A);
    std::unique_lock lock(mu);
    auto [it, inserted] = cache.emplace(A, std::move(rep));
    return *it->second;
}

/// Projector for a handle (null for the full trace).
inline const std::vector<Rat>& handle_projector(const CharacterHandle& h)
{
    using Key = std::tuple<int, i64, int, std::vector<int>>;
    static std::shared_mutex mu;
    static std::map<Key, std::vector<Rat>> cache;
    Key key{static_cast<int>(h.kind), h.m, h.sign, h.alpha.values};
    {
        std::shared_lock lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    std::vector<Rat> P;
    switch (h.kind) {
    case CharKind::ThetaFull: {
        P.assign(4 * h.m * h.m, Rat(0));
        for (i64 i = 0; i < 2 * h.m; ++i) P[i * 2 * h.m + i] = 1;
        break;
    }
    case CharKind::ThetaPlus:
    case CharKind::ThetaMinus: P = sign_projector(2 * h.m, h.sign); break;
    case CharKind::NuNew: P = mul_rat(2 * h.m, new_part_projector(h.m), alpha_projector(h.alpha)); break;
    case CharKind::LambdaNew: P = mul_rat(h.m, sign_projector(h.m, h.sign), lambda_new_projector(h.p, h.k)); break;
    }
    std::unique_lock lock(mu);
    return cache.emplace(key, std::move(P)).first->second;
}

}  // namespace detail

/// Exact matrix rho(w) for a space.
inline CycMatrix weil_matrix(const QuadSpace& A, const Sl2Word& w) { return detail::weil_rep(A).evaluate(w); }

inline std::pair<CycMatrix, CycMatrix> weil_generators(const QuadSpace& A)
{
    const auto& r = detail::weil_rep(A);
    return {r.T(), r.S()};
}

/// Character value on a word; Theta_m traces are traces of the D_m matrices.
inline CycNumber evaluate_character(const CharacterHandle& h, const Sl2Word& w)
{
    const auto& rep = detail::weil_rep(h.space());
    CycMatrix M = rep.evaluate(w);
    switch (h.kind) {
    case CharKind::ThetaFull: return M.trace();
    case CharKind::ThetaPlus:
    case CharKind::ThetaMinus: {
        CycNumber t = M.trace(), tn = M.permuted_trace(rep.negation());
        return (h.sign > 0 ? t + tn : t - tn) * Rat(1, 2);
    }
    default: return M.trace_against(detail::handle_projector(h));
    }
}

/// Expected value of theta_m^{sign}(S^k) from the Gauss-sum trace law.
inline CycNumber gauss_trace_law(i64 m, int sign, int k)
{
    // (-i)^k zeta^{sign k}, zeta = e(1/8)
    CycNumber base = embed_root(8, -2 * k + sign * k);
    if (k % 2 == 0) return base * Rat(m + sign);
    if (m % 2 == 0) return base;
    return CycNumber(8);
}

/// Dimensions of the i^a eigenspaces (a = 0..3) of S on Theta_m^s (x) Theta_{m'}^{s'}.
inline std::array<i64, 4> s_eigenspace_dims(i64 m, i64 mp, int sign, int signp)
{
    std::array<CycNumber, 4> prod;
    for (int k = 0; k < 4; ++k) {
        Sl2Word w = Sl2Word::S(k);
        prod[k] = evaluate_character(CharacterHandle::theta_pm(m, sign), w) *
                  evaluate_character(CharacterHandle::theta_pm(mp, signp), w);
    }
    std::array<i64, 4> out{};
    for (int a = 0; a < 4; ++a) {
        CycNumber s = CycNumber::integer(4, 0);
        for (int k = 0; k < 4; ++k) s += embed_root(4, -a * k) * prod[k];
        s = s * Rat(1, 4);
        auto r = s.as_rational();
        if (!r || r->denominator() != 1 || r->numerator() < 0)
            throw std::logic_error("s_eigenspace_dims: non-integral eigenspace dimension");
        out[a] = r->numerator();
    }
    return out;
}

/// Local constituents of nu_m^alpha: the 2-part first, then odd primes ascending.
struct PPart {
    i64 p;  // 2 or an odd prime
    i64 modulus;  // 4 m_2 for p = 2, m_p otherwise
    CharacterHandle handle;
};

inline std::vector<PPart> p_part_decomposition(const CharacterHandle& h)
{
    if (h.kind != CharKind::NuNew) throw std::invalid_argument("p_part_decomposition: expects a nu handle");
    const i64 m = h.m;
    std::vector<PPart> out;
    const i64 m2 = prime_part(m, 2);
    const i64 a2 = mod(h.twist * inv_mod(m / m2, 4 * m2), 4 * m2);
    const int s2 = h.alpha.at_prime(2);
    if (m2 <= 2)
        out.push_back({2, 4 * m2, CharacterHandle::theta_pm(m2, s2, a2)});
    else
        out.push_back({2, 4 * m2, CharacterHandle::nu(OmCharacter::from_prime_signs(m2, {{2, s2}}), a2)});
    for (auto [p, e] : factorize(m)) {
        if (p == 2) continue;
        const i64 mp = ipow(p, e);
        const i64 ap = mod(h.twist * inv_mod(4 * m / mp, mp), mp);
        out.push_back({p, mp, CharacterHandle::lambda(p, e, h.alpha.at_prime(p), ap)});
    }
    return out;
}

/// Product of local values: the 2-part on w itself, odd parts on CRT-local lifts.
inline CycNumber evaluate_p_parts(const std::vector<PPart>& parts, const Sl2Word& w, i64 m)
{
    const i64 Q = 4 * m;
    Sl2Mod g = Sl2Mod::reduce(w.matrix(), Q);
    CycNumber v = CycNumber::integer(1, 1);
    for (const auto& part : parts) {
        if (part.p == 2) {
            v *= evaluate_character(part.handle, w);
        } else {
            Sl2Word lw = word_decompose(crt_local_lift(g, part.p));
            v *= evaluate_character(part.handle, lw);
        }
    }
    return v;
}

}  // namespace wt1
