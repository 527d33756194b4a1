#include <wt1/vanishing.hpp>

#include <gtest/gtest.h>

using namespace wt1;

TEST(Vanishing, SuiteVanishes) { EXPECT_TRUE(expsapp_all_vanish(expsapp_suite(6))); }

TEST(Vanishing, Witnesses)
{
    auto a = exponent_criterion(8, 8);
    ASSERT_TRUE(a.witness);
    EXPECT_EQ(a.verdict(), "Inconclusive");
    EXPECT_TRUE(a.witness->valid(8, 8));
    EXPECT_EQ(a.witness->r, 4);
    auto b = exponent_criterion(9, 9);
    ASSERT_TRUE(b.witness);
    EXPECT_TRUE(b.witness->valid(9, 9));
    EXPECT_EQ(b.witness->r, 3);
}

TEST(Vanishing, IndexOneAlwaysVanishes)
{
    for (i64 M = 1; M <= 20; ++M) EXPECT_TRUE(exponent_criterion(1, M).vanishes());
}

TEST(Vanishing, RequiresDivisibility) { EXPECT_THROW(exponent_criterion(3, 4), std::invalid_argument); }

TEST(Vanishing, InvalidWitnessRejected)
{
    EXPECT_FALSE((ExponentWitness{1, 1, 1}).valid(8, 8));
    EXPECT_FALSE((ExponentWitness{8, 0, 1}).valid(8, 8));
}
