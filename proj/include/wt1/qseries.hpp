#pragma once

#include "arith.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wt1 {

using Coeff = boost::multiprecision::cpp_rational;

inline std::string coeff_string(const Coeff& c)
{
    return numerator(c).str() + "/" + denominator(c).str();
}

/**
 * @brief Truncated expansion sum c(n, l) q^{n/d} y^{l/2}.
 *
 * Terms with q-exponent >= order are unknown. Keys store n over the
 * denominator d and the y-exponent doubled.
 */
class FourierJacobiSeries {
public:
    using Key = std::pair<i64, i64>;  // (n, 2l)

    FourierJacobiSeries() = default;
    FourierJacobiSeries(i64 d, Rat order) : d_(d), order_(order)
    {
        if (d < 1) throw std::invalid_argument("series denominator must be positive");
    }

    static FourierJacobiSeries constant(const Coeff& c, Rat order)
    {
        FourierJacobiSeries s(1, order);
        if (c != 0 && order > Rat(0)) s.terms_[{0, 0}] = c;
        return s;
    }

    i64 denominator() const { return d_; }
    Rat order() const { return order_; }
    const std::map<Key, Coeff>& terms() const { return terms_; }
    std::optional<i64> index() const { return index_; }
    FourierJacobiSeries& tag_index(i64 m)
    {
        for (const auto& [k, c] : terms_)
            if (k.second % 2) throw std::logic_error("index tag needs integral y-exponents");
        index_ = m;
        return *this;
    }
    bool empty() const { return terms_.empty(); }

    /// Add c q^{e} y^{l2/2}; terms at or beyond the order are dropped.
    void add_term(Rat e, i64 l2, const Coeff& c)
    {
        if (e >= order_ || c == 0) return;
        Rat n = e * Rat(d_);
        if (n.denominator() != 1) throw std::invalid_argument("q-exponent not representable over series denominator");
        auto& slot = terms_[{n.numerator(), l2}];
        slot += c;
        if (slot == 0) terms_.erase({n.numerator(), l2});
    }

    Coeff coeff(Rat e, i64 l2) const
    {
        if (e >= order_) throw std::out_of_range("coefficient requested outside truncation window");
        Rat n = e * Rat(d_);
        if (n.denominator() != 1) return 0;
        auto it = terms_.find({n.numerator(), l2});
        return it == terms_.end() ? Coeff(0) : it->second;
    }

    Rat exponent(const Key& k) const { return Rat(k.first, d_); }

    /// Lowest q-exponent present; the order itself for an empty series.
    Rat valuation() const
    {
        Rat v = order_;
        for (const auto& [k, c] : terms_) v = std::min(v, exponent(k));
        return v;
    }

    /// Same series over denominator d2 (d | d2).
    FourierJacobiSeries with_denominator(i64 d2) const
    {
        if (d2 % d_) throw std::invalid_argument("with_denominator: target must be a multiple");
        FourierJacobiSeries s(d2, order_);
        for (const auto& [k, c] : terms_) s.terms_[{k.first * (d2 / d_), k.second}] = c;
        s.index_ = index_;
        return s;
    }

    FourierJacobiSeries truncate(Rat order) const
    {
        if (order > order_) throw std::logic_error("truncate: cannot extend the truncation window");
        FourierJacobiSeries s(d_, order);
        for (const auto& [k, c] : terms_)
            if (exponent(k) < order) s.terms_.emplace(k, c);
        s.index_ = index_;
        return s;
    }

    /// y -> 1; requires integral y-exponents.
    FourierJacobiSeries specialize_y1() const
    {
        FourierJacobiSeries s(d_, order_);
        for (const auto& [k, c] : terms_) {
            if (k.second % 2) throw std::logic_error("specialize_y1: half-integral y-exponent");
            s.add_term(exponent(k), 0, c);
        }
        return s;
    }

    nlohmann::json to_json() const
    {
        nlohmann::json j;
        j["denominator"] = d_;
        j["order"] = std::to_string(order_.numerator()) + "/" + std::to_string(order_.denominator());
        auto arr = nlohmann::json::array();
        for (const auto& [k, c] : terms_) arr.push_back({k.first, k.second, coeff_string(c)});
        j["terms"] = arr;
        return j;
    }

    friend FourierJacobiSeries operator+(const FourierJacobiSeries& a, const FourierJacobiSeries& b)
    {
        return combine(a, b, 1);
    }
    friend FourierJacobiSeries operator-(const FourierJacobiSeries& a, const FourierJacobiSeries& b)
    {
        return combine(a, b, -1);
    }
    friend FourierJacobiSeries operator*(const Coeff& c, const FourierJacobiSeries& a)
    {
        FourierJacobiSeries s(a.d_, a.order_);
        if (c == 0) return s;
        for (const auto& [k, v] : a.terms_) s.terms_[k] = c * v;
        return s;
    }
    FourierJacobiSeries operator-() const { return Coeff(-1) * *this; }

    friend FourierJacobiSeries operator*(const FourierJacobiSeries& a, const FourierJacobiSeries& b)
    {
        const i64 d = lcm(a.d_, b.d_);
        Rat order = std::min(a.order_ + b.valuation(), b.order_ + a.valuation());
        FourierJacobiSeries s(d, order);
        const i64 fa = d / a.d_, fb = d / b.d_;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) {
                i64 n = ka.first * fa + kb.first * fb;
                if (Rat(n, d) >= order) continue;
                Key k{n, ka.second + kb.second};
                auto& slot = s.terms_[k];
                slot += ca * cb;
                if (slot == 0) s.terms_.erase(k);
            }
        return s;
    }

    /// Equality on the common truncation window.
    friend bool agree(const FourierJacobiSeries& a, const FourierJacobiSeries& b)
    {
        Rat w = std::min(a.order_, b.order_);
        auto diff = a.truncate(w) - b.truncate(w);
        return diff.empty();
    }

private:
    static FourierJacobiSeries combine(const FourierJacobiSeries& a, const FourierJacobiSeries& b, int sign)
    {
        const i64 d = lcm(a.d_, b.d_);
        FourierJacobiSeries s = a.with_denominator(d).truncate(std::min(a.order_, b.order_));
        s.index_.reset();
        FourierJacobiSeries t = b.with_denominator(d);
        for (const auto& [k, c] : t.terms_) {
            if (t.exponent(k) >= s.order_) continue;
            auto& slot = s.terms_[k];
            slot += sign > 0 ? c : Coeff(-c);
            if (slot == 0) s.terms_.erase(k);
        }
        return s;
    }

    i64 d_ = 1;
    Rat order_{0};
    std::map<Key, Coeff> terms_;
    std::optional<i64> index_;
};

using Series = FourierJacobiSeries;

/// theta_{m,r}(tau, z) = sum_k q^{(2km+r)^2/4m} y^{2km+r}
inline Series theta_expansion(i64 m, i64 r, Rat order)
{
    if (m < 1) throw std::invalid_argument("theta_expansion: m must be positive");
    if (order <= Rat(0)) throw std::invalid_argument("theta_expansion: order must be positive");
    Series s(4 * m, order);
    const i64 r0 = mod(r, 2 * m);
    for (i64 l = r0; Rat(l * l, 4 * m) < order; l += 2 * m) s.add_term(Rat(l * l, 4 * m), 2 * l, 1);
    for (i64 l = r0 - 2 * m; Rat(l * l, 4 * m) < order; l -= 2 * m) s.add_term(Rat(l * l, 4 * m), 2 * l, 1);
    return s;
}

/// theta_{m,-r} + sign * theta_{m,r}
inline Series theta_pm(i64 m, i64 r, int sign, Rat order)
{
    if (sign != 1 && sign != -1) throw std::invalid_argument("theta_pm: sign must be +1 or -1");
    Series s = theta_expansion(m, -r, order) + Coeff(sign) * theta_expansion(m, r, order);
    return s;
}

/// eta = sum_k (-1)^k q^{(6k+1)^2/24}
inline Series eta_expansion(Rat order)
{
    Series s(24, order);
    for (i64 k = 0;; ++k) {
        bool any = false;
        for (i64 kk : {k, -k - 1}) {
            i64 e = 6 * kk + 1;
            if (Rat(e * e, 24) < order) {
                s.add_term(Rat(e * e, 24), 0, (kk % 2 == 0) ? 1 : -1);
                any = true;
            }
        }
        if (!any) break;
    }
    return s;
}

inline Series rescale_tau(const Series& s, i64 h)
{
    if (h < 1) throw std::invalid_argument("rescale_tau: h must be positive");
    Series t(s.denominator(), s.order() * Rat(h));
    for (const auto& [k, c] : s.terms()) t.add_term(s.exponent(k) * Rat(h), k.second, c);
    return t;
}

/// y -> y^h for rational h; the rescaled y-exponents must stay half-integral.
inline Series rescale_z(const Series& s, Rat h)
{
    Series t(s.denominator(), s.order());
    for (const auto& [k, c] : s.terms()) {
        Rat l2 = Rat(k.second) * h;
        if (l2.denominator() != 1) throw std::invalid_argument("rescale_z: y-exponent leaves the half-integers");
        t.add_term(s.exponent(k), l2.numerator(), c);
    }
    return t;
}

inline Series rescale(const Series& s, i64 h_tau, i64 h_z) { return rescale_z(rescale_tau(s, h_tau), Rat(h_z)); }

inline Series series_mul(const Series& a, const Series& b) { return a * b; }

/// Inverse of a series whose lowest q-power is a single monomial.
inline Series series_invert(const Series& s)
{
    if (s.empty()) throw std::domain_error("series_invert: zero series");
    const Rat v = s.valuation();
    std::vector<std::pair<Series::Key, Coeff>> lead;
    for (const auto& [k, c] : s.terms())
        if (s.exponent(k) == v) lead.emplace_back(k, c);
    if (lead.size() != 1) throw std::domain_error("series_invert: leading term is not a monomial");
    const auto [k0, c0] = lead.front();
    const i64 d = s.denominator();
    const Rat rel_order = s.order() - v;  // window of the normalized series 1 + u

    // u = s / (c0 q^v y^l0) - 1
    Series u(d, rel_order);
    for (const auto& [k, c] : s.terms())
        if (k != k0) u.add_term(s.exponent(k) - v, k.second - k0.second, c / c0);
    Rat gap = u.valuation();
    Series inv = Series::constant(1, rel_order).with_denominator(d);
    Series power = Series::constant(1, rel_order).with_denominator(d);
    for (Rat e = gap; e < rel_order; e += gap) {
        power = (-u) * power;
        power = power.truncate(std::min(power.order(), rel_order));
        inv = inv + power;
    }
    inv = inv.truncate(rel_order);
    Series out(d, rel_order - v);
    for (const auto& [k, c] : inv.terms()) out.add_term(inv.exponent(k) - v, k.second - k0.second, c / c0);
    return out;
}

/// Q_{a,b} = eta^{-1} prod theta^-_{2,1}(tau, c z / 2), c in {a, b, a+b}
inline Series theta_quark(i64 a, i64 b, Rat order)
{
    if (a < 1 || b < 1) throw std::invalid_argument("theta_quark: a, b must be positive");
    Series prod = series_invert(eta_expansion(order + Rat(1)));
    for (i64 c : {a, b, a + b}) prod = prod * rescale_z(theta_pm(2, 1, -1, order + Rat(1)), Rat(c, 2));
    if (prod.order() < order) throw std::logic_error("theta_quark: internal window too small");
    Series q = prod.truncate(order);
    q.tag_index(a * a + a * b + b * b);
    return q;
}

enum class FormName { Xi1_12, Xi1_8, Xi9_3A, Xi9_6A, SUnary, SE8 };

inline FormName parse_form(const std::string& s)
{
    static const std::map<std::string, FormName> names{{"xi_1_12", FormName::Xi1_12}, {"xi_1_8", FormName::Xi1_8},
                                                       {"xi9_3A", FormName::Xi9_3A},  {"xi9_6A", FormName::Xi9_6A},
                                                       {"S_unary", FormName::SUnary}, {"S_E8_component", FormName::SE8}};
    auto it = names.find(s);
    if (it == names.end()) throw std::invalid_argument("unknown form: " + s);
    return it->second;
}

/// S_{m,r} = sum_k (2km+r) q^{(2km+r)^2/4m}
inline Series unary_theta(i64 m, i64 r, Rat order)
{
    Series s(4 * m, order);
    const i64 r0 = mod(r, 2 * m);
    for (i64 l = r0; Rat(l * l, 4 * m) < order; l += 2 * m) s.add_term(Rat(l * l, 4 * m), 0, l);
    for (i64 l = r0 - 2 * m; Rat(l * l, 4 * m) < order; l -= 2 * m) s.add_term(Rat(l * l, 4 * m), 0, l);
    return s;
}

/**
 * Named weight-one forms and unary theta series.
 * S_unary takes (m, r) in args; S_E8_component takes i in {1, 2}.
 */
inline Series explicit_form(FormName f, Rat order, std::vector<i64> args = {})
{
    switch (f) {
    case FormName::Xi1_12: {
        Series e = rescale_tau(eta_expansion(order / Rat(6) + Rat(1)), 6);
        Series t = rescale(theta_pm(2, 1, -1, order / Rat(6) + Rat(1)), 6, 6);
        return (e * t).truncate(order).tag_index(12);
    }
    case FormName::Xi1_8: {
        Series a = theta_expansion(8, 4, order + Rat(1)).specialize_y1();
        Series b = theta_pm(8, 4, -1, order + Rat(1));
        return (a * b).truncate(order).tag_index(8);
    }
    case FormName::Xi9_3A:
    case FormName::Xi9_6A: {
        Rat w = order + Rat(1);
        Series t33 = theta_expansion(3, 3, w).specialize_y1();
        Series t30 = theta_expansion(3, 0, w).specialize_y1();
        Series a = t33 * theta_pm(9, 3, -1, w);
        Series b = t30 * theta_pm(9, 6, -1, w);
        Series s = f == FormName::Xi9_3A ? a - b : a + b;
        return s.truncate(order).tag_index(9);
    }
    case FormName::SUnary:
        if (args.size() != 2) throw std::invalid_argument("S_unary needs (m, r)");
        return unary_theta(args[0], args[1], order);
    case FormName::SE8: {
        if (args.size() != 1 || (args[0] != 1 && args[0] != 2)) throw std::invalid_argument("S_E8_component needs i in {1, 2}");
        std::vector<i64> rs = args[0] == 1 ? std::vector<i64>{1, 11, 19, 29} : std::vector<i64>{7, 13, 17, 23};
        Series s(120, order);
        for (i64 r : rs) s = s + unary_theta(30, r, order);
        return s;
    }
    }
    throw std::invalid_argument("unknown form");
}

inline Series explicit_form(const std::string& name, Rat order, std::vector<i64> args = {})
{
    return explicit_form(parse_form(name), order, std::move(args));
}

/// Components h_r, r mod 2m, each a y-free series.
using VectorSeries = std::map<i64, Series>;

/**
 * Theta decomposition of an index-m expansion. Component r is known below
 * order - l_r^2/4m, l_r the smallest representative of r.
 */
inline VectorSeries theta_decompose(const Series& s, i64 m)
{
    if (m < 1) throw std::invalid_argument("theta_decompose: m must be positive");
    const i64 d = lcm(s.denominator(), 4 * m);
    VectorSeries h;
    for (i64 r = 0; r < 2 * m; ++r) {
        i64 l = r <= m ? r : r - 2 * m;
        h.emplace(r, Series(d, s.order() - Rat(l * l, 4 * m)));
    }
    for (const auto& [k, c] : s.terms()) {
        if (k.second % 2) throw std::domain_error("theta_decompose: half-integral y-exponent");
        i64 l = k.second / 2;
        i64 r = mod(l, 2 * m);
        Rat e = s.exponent(k) - Rat(l * l, 4 * m);
        auto& comp = h.at(r);
        if (e >= comp.order()) continue;
        i64 lr = r <= m ? r : r - 2 * m;
        if (l == lr) {
            comp.add_term(e, 0, c);
        }
    }
    // every term of s must be predicted by its component, and conversely
    for (const auto& [k, c] : s.terms()) {
        i64 l = k.second / 2;
        i64 r = mod(l, 2 * m);
        Rat e = s.exponent(k) - Rat(l * l, 4 * m);
        const auto& comp = h.at(r);
        if (e < comp.order() && comp.coeff(e, 0) != c)
            throw std::domain_error("theta_decompose: inconsistent index-" + std::to_string(m) + " support at y^" +
                                    std::to_string(l));
    }
    for (const auto& [r, comp] : h)
        for (const auto& [k, c] : comp.terms()) {
            Rat e = comp.exponent(k);
            i64 lr = r <= m ? r : r - 2 * m;
            for (int dir : {1, -1})
                for (i64 l = lr + (dir > 0 ? 2 * m : -2 * m);; l += dir * 2 * m) {
                    Rat es = e + Rat(l * l, 4 * m);
                    if (es >= s.order()) break;
                    if (s.coeff(es, 2 * l) != c)
                        throw std::domain_error("theta_decompose: missing term at y^" + std::to_string(l));
                }
        }
    return h;
}

/// sum_r h_r theta_{m,r}, truncated to order.
inline Series theta_recompose(const VectorSeries& v, i64 m, Rat order)
{
    Series s(4 * m, order);
    for (const auto& [r, h] : v) {
        if (h.empty()) continue;
        Rat need = order - h.valuation();
        Series t = h * theta_expansion(m, r, need > Rat(0) ? need : Rat(1, 4 * m));
        if (t.order() < order) throw std::logic_error("theta_recompose: component window too small");
        s = s + t.truncate(order);
    }
    for (const auto& [r, h] : v) {
        i64 l = r <= m ? r : r - 2 * m;
        if (h.order() + Rat(l * l, 4 * m) < order) throw std::logic_error("theta_recompose: component window too small");
    }
    return s;
}

/**
 * Checks s(tau, z + lambda tau) q^{m lambda^2} y^{2 m lambda} = s on the window
 * where both sides are known.
 */
inline bool elliptic_transform_check(const Series& s, i64 m, i64 lambda)
{
    if (lambda == 0) return true;
    auto image = [&](Rat e, i64 l) { return std::make_pair(e + Rat(lambda * l + m * lambda * lambda), l + 2 * m * lambda); };
    std::size_t compared = 0;
    for (const auto& [k, c] : s.terms()) {
        if (k.second % 2) throw std::domain_error("elliptic_transform_check: half-integral y-exponent");
        i64 l = k.second / 2;
        auto [e2, l2] = image(s.exponent(k), l);
        if (e2 < s.order()) {
            ++compared;
            if (s.coeff(e2, 2 * l2) != c) return false;
        }
        // preimage of this term
        i64 lp = l - 2 * m * lambda;
        Rat ep = s.exponent(k) - Rat(lambda * lp + m * lambda * lambda);
        if (ep < s.order()) {
            ++compared;
            if (s.coeff(ep, 2 * lp) != c) return false;
        }
    }
    if (compared == 0 && !s.empty()) throw std::domain_error("elliptic_transform_check: empty comparison window");
    return true;
}

}  // namespace wt1
