// Acceptance harness: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <wt1/wt1.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace wt1;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Check = std::function<Outcome()>;

class Notes {
public:
    void fail(const std::string& s)
    {
        pass_ = false;
        add(s);
    }
    void add(const std::string& s) { os_ << (first_ ? "" : "; ") << s, first_ = false; }
    Outcome done() const { return {pass_, os_.str()}; }

private:
    bool pass_ = true, first_ = true;
    std::ostringstream os_;
};

Series zero_like(const Series& s) { return Series(s.denominator(), s.order()); }

Outcome qseries_identities()
{
    Notes n;
    // xi_{1,12}: (y^-6 - y^6) q, nothing else below q^7
    Series x12 = explicit_form(FormName::Xi1_12, Rat(8));
    Series lead12 = zero_like(x12);
    lead12.add_term(Rat(1), -12, Coeff(1));
    lead12.add_term(Rat(1), 12, Coeff(-1));
    if (!agree((x12 - lead12).truncate(Rat(7)), zero_like(x12).truncate(Rat(7)))) n.fail("xi_1_12 below q^7");
    bool beyond = false;
    for (const auto& [k, c] : (x12 - lead12).terms())
        if (x12.exponent(k) >= Rat(7)) beyond = true;
    if (!beyond) n.fail("xi_1_12 has no term at or beyond q^7 in window 8");
    // xi_{1,8}
    Series x8 = explicit_form(FormName::Xi1_8, Rat(5));
    Series lead8 = zero_like(x8);
    lead8.add_term(Rat(1), -8, Coeff(1));
    lead8.add_term(Rat(1), 8, Coeff(-1));
    if (!agree(x8, lead8)) n.fail("xi_1_8 leading term");
    // theta_{8,4}(tau, 0) = eta(8 tau)^2 / eta(4 tau)
    Series th = theta_expansion(8, 4, Rat(10)).specialize_y1();
    Series e = eta_expansion(Rat(12));
    Series quot = rescale_tau(e, 8) * rescale_tau(e, 8) * series_invert(rescale_tau(e, 4));
    if (quot.order() < Rat(10) || !agree(th, quot.truncate(Rat(10)))) n.fail("theta_{8,4} eta quotient");
    // Q_{1,1}(3 tau, 3 z) against xi^(9)_{3A}
    Series q = rescale(theta_quark(1, 1, Rat(4)), 3, 3);
    Series x9 = explicit_form(FormName::Xi9_3A, Rat(10));
    int sign = 0;
    if (agree(q + x9, zero_like(x9))) sign = -1;
    else if (agree(q - x9, zero_like(x9))) sign = 1;
    if (!sign) n.fail("Q_{1,1}(3 tau, 3 z) not proportional to xi9_3A");
    else n.add("constant " + std::to_string(sign) + " to q^" + to_string(std::min(q.order(), x9.order())));
    return n.done();
}

Outcome gauss_trace()
{
    Notes n;
    int checked = 0;
    for (i64 m = 1; m <= 12; ++m)
        for (int s : {1, -1})
            for (int k = 0; k < 8; ++k, ++checked) {
                auto v = evaluate_character(CharacterHandle::theta_pm(m, s), Sl2Word::S(k));
                if (!(v - gauss_trace_law(m, s, k)).is_zero())
                    n.fail("m=" + std::to_string(m) + " s=" + std::to_string(s) + " k=" + std::to_string(k));
            }
    n.add(std::to_string(checked) + " values");
    return n.done();
}

Outcome representation_relations()
{
    Notes n;
    for (i64 m = 1; m <= 12; ++m) {
        const auto A = QuadSpace::D(m);
        const std::string tag = "m=" + std::to_string(m);
        if (weil_matrix(A, Sl2Word::S(2)) != weil_matrix(A, Sl2Word(std::vector<i64>{0, 1, 1, 1})))
            n.fail(tag + " S^2 != (ST)^3");
        if (!weil_matrix(A, Sl2Word::S(8)).is_identity()) n.fail(tag + " S^8 != 1");
        auto [T, S] = weil_generators(A);
        if (!(S * S.conj_transpose()).is_identity() || !(T * T.conj_transpose()).is_identity())
            n.fail(tag + " not unitary");
        const i64 d = 2 * m, L = S.order();
        for (i64 a : orthogonal_group(m)) {
            std::vector<CycNumber> e(d * d, CycNumber::integer(L, 0));
            for (i64 x = 0; x < d; ++x) e[mod(a * x, d) * d + x] = CycNumber::integer(L, 1);
            auto P = CycMatrix::from_entries(d, L, e);
            if (P * S != S * P || P * T != T * P) n.fail(tag + " not O_m-equivariant at a=" + std::to_string(a));
        }
    }
    std::mt19937_64 rng(20240601);
    int words = 0;
    for (i64 m : {4, 9, 12})
        for (const auto& al : OmCharacter::all(m)) {
            auto h = CharacterHandle::nu(al);
            auto parts = p_part_decomposition(h);
            for (int t = 0; t < 100; ++t, ++words) {
                std::vector<i64> ex;
                const int len = 1 + static_cast<int>(rng() % 6);
                for (int i = 0; i < len; ++i) ex.push_back(static_cast<i64>(rng() % (8 * m)) - 4 * m);
                Sl2Word w(ex);
                if (!(evaluate_character(h, w) - evaluate_p_parts(parts, w, m)).is_zero())
                    n.fail(h.name() + " p-part mismatch");
            }
        }
    n.add(std::to_string(words) + " random words reconstructed");
    return n.done();
}

Outcome level_one()
{
    Notes n;
    for (i64 m = 1; m <= 10; ++m) {
        auto r = dim_j1(m, 1, m, Backend::Exact);
        if (r.value != 0) n.fail("dim(" + std::to_string(m) + ",1) = " + std::to_string(r.value));
    }
    return n.done();
}

Outcome exponent_suite()
{
    Notes n;
    if (!expsapp_all_vanish(expsapp_suite(6))) n.fail("suite (2,2^a),(3,3^a),(4,2^a) does not vanish");
    for (auto [m, M] : std::vector<std::pair<i64, i64>>{{8, 8}, {9, 9}}) {
        auto r = exponent_criterion(m, M);
        const std::string tag = "(" + std::to_string(m) + "," + std::to_string(M) + ")";
        if (r.vanishes() || !r.witness || !r.witness->valid(m, M)) n.fail(tag + " lacks a valid witness");
        else
            n.add(tag + " witness " + std::to_string(r.witness->r) + "," + std::to_string(r.witness->s) + "," +
                  std::to_string(r.witness->t));
    }
    return n.done();
}

Outcome mp2_inner_products()
{
    Notes n;
    double worst = 0;
    int count = 0;
    for (i64 k : {1, 2, 4, 8})
        for (i64 kp : {1, 2, 4, 8})
            for (i64 a : {1, 3, 5, 7})
                for (i64 ap : {a, (a + 4) % 8}) {
                    auto v = inner_product_float(CharacterHandle::theta_pm(k, -1, a), CharacterHandle::theta_pm(kp, 1, ap), 16, 64);
                    worst = std::max(worst, std::abs(v));
                    ++count;
                }
    for (i64 a : {1, 3, 5, 7})
        for (i64 ap : {a, (a + 4) % 8}) {
            auto v = inner_product_float(CharacterHandle::theta_pm(4, -1, a), CharacterHandle::theta_pm(4, 1, ap), 32, 64);
            worst = std::max(worst, std::abs(v));
            ++count;
        }
    if (worst > 1e-6) n.fail("max |<,>| too large");
    std::ostringstream os;
    os << count << " products, max |value| " << worst;
    n.add(os.str());
    return n.done();
}

Outcome sl2_p_squared()
{
    Notes n;
    for (i64 p : {3, 5}) {
        const i64 Q = p * p;
        const std::string tag = "p=" + std::to_string(p);
        if (double_coset_count(p) != 4) n.fail(tag + " double cosets " + std::to_string(double_coset_count(p)));
        auto G = gamma0_image(Q, Q);
        i64 s = 0;
        G.for_each([&](const Sl2Mod& g) { s += perm_character(Q, g); });
        if (Rat(s, G.size()) != Rat(4)) n.fail(tag + " <1,1> = " + to_string(Rat(s, G.size())));
        if (coset_space_size(Q) != Q + p) n.fail(tag + " coset space size");
    }
    return n.done();
}

Outcome headline_vanishing()
{
    Notes n;
    for (auto [m, N, M] : std::vector<std::array<i64, 3>>{{3, 144, 36}, {6, 36, 18}, {30, 36, 90}}) {
        auto r = dim_j1(DimQuery{m, N, M, Backend::CrtFloat, i64{1} << 40});
        std::ostringstream os;
        os << "dim(" << m << "," << N << ")=" << r.value << " [" << r.elapsed << "s]";
        if (r.value != 0) n.fail(os.str());
        else n.add(os.str());
    }
    return n.done();
}

Outcome positive_controls()
{
    Notes n;
    for (auto [m, N, M] : std::vector<std::array<i64, 3>>{{8, 32, 8}, {9, 9, 9}}) {
        auto r = dim_j1(m, N, M, Backend::Exact);
        std::string s = "dim(" + std::to_string(m) + "," + std::to_string(N) + ")=" + std::to_string(r.value);
        if (r.value < 1) n.fail(s);
        else n.add(s);
    }
    return n.done();
}

Outcome m_independence()
{
    Notes n;
    std::set<i64> vals;
    for (i64 M : {2, 4, 8}) vals.insert(dim_j1(2, 8, M, Backend::Exact).value);
    if (vals.size() != 1) n.fail("dim(2,8) depends on M");
    int pairs = 0;
    for (i64 m = 1; m <= 6; ++m)
        for (i64 M = m; M <= 12; M += m, ++pairs) {
            if (!exponent_criterion(m, M).vanishes()) continue;
            auto d = dim_j1(m, 4 * M, M, Backend::Exact);
            if (d.value != 0)
                n.fail("criterion vanishes but dim(" + std::to_string(m) + "," + std::to_string(4 * M) + ")=" +
                       std::to_string(d.value));
        }
    n.add(std::to_string(pairs) + " (m, M) pairs");
    return n.done();
}

Outcome umbral_tables()
{
    Notes n;
    auto ds = load_dataset();
    auto dec = verify_decompositions(ds);
    auto aud = coefficient_parity_audit(ds);
    for (const auto& s : dec.issues) n.fail(s);
    for (const auto& s : aud.issues) n.fail(s);
    for (const auto& row : ds.coeffs)
        if (!grading_holds(row.r, row.D)) n.fail("grading r=" + std::to_string(row.r) + " D=" + std::to_string(row.D));
    n.add(std::to_string(dec.checked) + " decomposition rows");
    return n.done();
}

Outcome block_structure()
{
    Notes n;
    auto gens = gamma0_3_generators();
    if (generated_order(gens, 36) != gamma0_image(3, 36).size()) n.fail("generators do not generate Gamma_0(3) mod 36");
    if (!block_structure_check(gens)) n.fail("block structure fails on generators");
    RademacherParams p(3, 9, 20);
    auto sums = truncated_sums(p, cplx(0.1, 1.2));
    for (std::size_t k = 0; k < sums.size(); ++k)
        if (sums[k](2) != cplx(0) || sums[k](5) != cplx(0)) n.fail("K=" + std::to_string(k + 1) + " components 3/6 nonzero");
    n.add(std::to_string(coset_reps(3, 20).size()) + " representatives");
    return n.done();
}

Outcome rademacher_scaffolding()
{
    Notes n;
    const cplx tau(0.1, 1.2);
    RademacherParams p(1, 9, 1);
    Eigen::VectorXcd s = truncated_sum(p, tau);
    Eigen::VectorXcd want = Eigen::VectorXcd::Zero(8);
    want(0) = e_of(-tau / 36.0);
    const double err = (s - want).norm();
    if (err > 1e-14) n.fail("K=1 sum off by " + std::to_string(err));
    double worst = 0;
    for (const auto& g : coset_reps(1, 6))
        worst = std::max(worst, std::abs(kernel_r(-1.0 / 36, g, tau, 20) - kernel_r(-1.0 / 36, g, tau, 40)));
    if (worst > 1e-12) n.fail("depth doubling differs by " + std::to_string(worst));
    std::ostringstream os;
    os << "K=1 error " << err << ", depth 20 vs 40 " << worst;
    n.add(os.str());
    return n.done();
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, Check>> criteria{
        {"q-series identities", qseries_identities},
        {"Gauss-trace law", gauss_trace},
        {"representation relations", representation_relations},
        {"level-one vanishing", level_one},
        {"exponent-criterion suite", exponent_suite},
        {"Mp2(Z/64) inner products", mp2_inner_products},
        {"SL2(Z/p^2) structure", sl2_p_squared},
        {"headline vanishing", headline_vanishing},
        {"positive controls", positive_controls},
        {"M-independence and consistency", m_independence},
        {"umbral table reproduction", umbral_tables},
        {"block structure", block_structure},
        {"Rademacher scaffolding", rademacher_scaffolding},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failures += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << " (" << dt << "s)";
        if (!o.detail.empty()) std::cout << ": " << o.detail;
        std::cout << std::endl;
    }
    return failures ? 1 : 0;
}
