#include <wt1/dimension.hpp>

#include <gtest/gtest.h>

using namespace wt1;

TEST(Dimension, DefaultModulus)
{
    EXPECT_EQ(default_M(3, 144), 36);
    EXPECT_EQ(default_M(6, 36), 18);
    EXPECT_EQ(default_M(30, 36), 90);
    EXPECT_TRUE(admissible_M(2, 8, 4));
    EXPECT_FALSE(admissible_M(2, 8, 1));
    EXPECT_THROW(dim_j1(2, 8, 3), std::invalid_argument);
}

TEST(Dimension, SmallLevelOne)
{
    for (i64 m = 1; m <= 6; ++m) EXPECT_EQ(dim_j1(m, 1, m).value, 0) << m;
}

TEST(Dimension, PositiveControl) { EXPECT_EQ(dim_j1(9, 9, 9).value, 1); }

TEST(Dimension, BackendsAgree)
{
    for (auto [m, N] : std::vector<std::pair<i64, i64>>{{9, 9}, {2, 8}, {3, 12}}) {
        i64 e = dim_j1(m, N, 0, Backend::Exact).value;
        EXPECT_EQ(dim_j1(m, N, 0, Backend::CrtFloat).value, e) << m << " " << N;
        EXPECT_EQ(dim_j1(m, N, 0, Backend::Float).value, e) << m << " " << N;
    }
}

TEST(Dimension, MIndependence)
{
    i64 v = dim_j1(2, 8, 2).value;
    EXPECT_EQ(dim_j1(2, 8, 4).value, v);
    EXPECT_EQ(dim_j1(2, 8, 8).value, v);
}

TEST(Dimension, HeadlineCrtFloat)
{
    auto r = dim_j1(DimQuery{6, 36, 18, Backend::CrtFloat, i64{1} << 40});
    EXPECT_EQ(r.value, 0);
    EXPECT_EQ(r.M, 18);
    EXPECT_LT(std::abs(r.raw_real), 1e-6);
}

TEST(Dimension, BudgetEnforced)
{
    EXPECT_THROW(dim_j1(DimQuery{3, 144, 36, Backend::Float, 10}), ResourceLimit);
}

TEST(Dimension, BackendNames)
{
    EXPECT_EQ(parse_backend("crt-float"), Backend::CrtFloat);
    EXPECT_EQ(to_string(Backend::Exact), "exact");
    EXPECT_THROW(parse_backend("gpu"), std::invalid_argument);
}

TEST(Dimension, InnerProducts)
{
    // k = 4 is orthogonal at level 32, k = 8 is not
    EXPECT_NEAR(std::abs(inner_product_float(CharacterHandle::theta_pm(4, -1, 1), CharacterHandle::theta_pm(4, 1, 1), 32, 64)),
                0.0, 1e-9);
    EXPECT_NEAR(std::abs(inner_product_float(CharacterHandle::theta_pm(8, -1, 1), CharacterHandle::theta_pm(8, 1, 1), 32, 64)),
                1.0, 1e-9);
}

TEST(Dimension, LemmaHypotheses)
{
    EXPECT_TRUE(lemma_hypotheses(2, 1));
    EXPECT_FALSE(lemma_hypotheses(9, 9));
}
