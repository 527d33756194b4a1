#include <wt1/rademacher.hpp>

#include <gtest/gtest.h>

#include <sstream>

using namespace wt1;

namespace {
const cplx kTau(0.1, 1.2);
}

TEST(Rademacher, CosetRepresentatives)
{
    auto r = coset_reps(1, 2);
    ASSERT_EQ(r.size(), 8u);
    EXPECT_EQ(r[0], Mat2{});
    for (const auto& g : coset_reps(3, 10)) {
        EXPECT_EQ(g.det(), 1);
        EXPECT_EQ(g.c % 3, 0);
    }
}

TEST(Rademacher, EntryLevel)
{
    for (i64 K = 1; K <= 8; ++K)
        for (const auto& g : coset_reps(2, K)) EXPECT_LE(entry_level(g), K);
}

TEST(Rademacher, KOneIsLeadingTerm)
{
    RademacherParams p(1, 9, 1);
    Eigen::VectorXcd s = truncated_sum(p, kTau);
    EXPECT_LT(std::abs(s(0) - e_of(-kTau / 36.0)), 1e-14);
    for (int i = 1; i < 8; ++i) EXPECT_EQ(s(i), cplx(0));
}

TEST(Rademacher, KernelDepthConverges)
{
    Mat2 g{1, 0, 3, 1};
    EXPECT_LT(std::abs(kernel_r(-1.0 / 36, g, kTau, 20) - kernel_r(-1.0 / 36, g, kTau, 40)), 1e-12);
    EXPECT_EQ(kernel_r(-1.0 / 36, Mat2{}, kTau, 20), cplx(1));
    EXPECT_THROW(kernel_r(0.1, g, cplx(0, -1), 20), std::invalid_argument);
}

TEST(Rademacher, Gamma03ComponentsVanish)
{
    RademacherParams p(3, 9, 8);
    for (const auto& v : truncated_sums(p, kTau)) {
        EXPECT_EQ(v(2), cplx(0));
        EXPECT_EQ(v(5), cplx(0));
    }
}

TEST(Rademacher, PartialSumsAgreeWithDirectSums)
{
    RademacherParams p(3, 9, 7);
    auto sums = truncated_sums(p, kTau);
    for (i64 K : {1, 4, 7}) {
        RademacherParams q(3, 9, K);
        EXPECT_LT((sums[K - 1] - truncated_sum(q, kTau)).norm(), 1e-12) << K;
    }
}

TEST(Rademacher, TransposedMultiplierIsCosetInvariant)
{
    RademacherParams p(3, 9, 5, 20, theta_odd_multiplier(9, true));
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(8), b = a;
    for (const auto& g : coset_reps(3, 5)) {
        a += rademacher_term(p, g, kTau);
        b += rademacher_term(p, Mat2{g.a + 2 * g.c, g.b + 2 * g.d, g.c, g.d}, kTau);
    }
    EXPECT_LT((a - b).norm(), 1e-12);
}

TEST(Rademacher, MultiplierChecks)
{
    auto bad = [](const Mat2&) { return Eigen::MatrixXcd::Identity(8, 8).eval(); };
    EXPECT_THROW(RademacherParams(1, 9, 2, 20, bad), std::invalid_argument);
    EXPECT_THROW(RademacherParams(1, 1, 2), std::invalid_argument);
}

TEST(Rademacher, DiagnosticsCsv)
{
    RademacherParams p(1, 3, 2);
    std::ostringstream os;
    write_diagnostics_csv(os, truncated_sums(p, kTau));
    std::string s = os.str();
    EXPECT_EQ(s.rfind("K,component,real,imag,cauchy_delta\n", 0), 0u);
    EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 5);
}
