#include <wt1/sl2.hpp>

#include <gtest/gtest.h>

using namespace wt1;

TEST(Sl2, GroupOrders)
{
    EXPECT_EQ(group_order(2), 6);
    EXPECT_EQ(group_order(9), 648);
    EXPECT_EQ(gamma0_index(36), 72);
    EXPECT_EQ(gamma0_image(3, 36).size(), 7776);
}

TEST(Sl2, WordDecompositionRoundTrip)
{
    for (Mat2 g : {Mat2{1, 0, 3, 1}, Mat2{5, 2, 7, 3}, Mat2{-4, 3, -11, 8}, Mat2{0, -1, 1, 0}}) {
        Sl2Word w = word_decompose(g);
        EXPECT_EQ(w.matrix(), g) << g;
    }
}

TEST(Sl2, StreamMatchesOrder)
{
    auto G = gamma0_image(4, 16);
    i64 n = 0;
    G.for_each([&](const Sl2Mod& g) {
        EXPECT_EQ(g.c % 4, 0);
        ++n;
    });
    EXPECT_EQ(n, G.size());
}

TEST(Sl2, CanonicalWordReducesCorrectly)
{
    gamma0_image(1, 12).for_each([&](const Sl2Mod& g) {
        Sl2Mod h = Sl2Mod::reduce(canonical_word(g).matrix(), 12);
        EXPECT_EQ(h.key(), g.key());
    });
}

TEST(Sl2, CosetStructure)
{
    EXPECT_EQ(coset_space_size(9), 12);
    EXPECT_EQ(double_coset_count(3), 4);
    EXPECT_THROW(double_coset_count(4), std::invalid_argument);
    EXPECT_EQ(perm_character(9, Sl2Mod::identity(9)), 12);
}

TEST(Sl2, MaterializeRespectsLimit)
{
    EXPECT_THROW(gamma0_image(1, 64).materialize(1000), ResourceLimit);
}
