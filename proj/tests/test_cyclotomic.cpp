#include <wt1/cyclotomic.hpp>

#include <gtest/gtest.h>

using namespace wt1;

TEST(Cyclotomic, RootsSumToZero)
{
    CycNumber s = CycNumber::integer(12, 0);
    for (i64 j = 0; j < 12; ++j) s += CycNumber::root(12, j);
    EXPECT_TRUE(s.is_zero());
}

TEST(Cyclotomic, CanonicalFormIsUnique)
{
    // zeta_8 + zeta_8^3 = i sqrt 2 computed two ways
    CycNumber a = CycNumber::root(8, 1) + CycNumber::root(8, 3);
    CycNumber b = CycNumber::root(4, 1) * (CycNumber::root(8, 1) + CycNumber::root(8, 7));
    EXPECT_TRUE((a - b).is_zero());
}

TEST(Cyclotomic, ConjugationAndNorm)
{
    CycNumber z = CycNumber::root(7, 3) + CycNumber::integer(7, 2);
    CycNumber n = z * z.conj();
    auto c = n.to_complex<double>();
    EXPECT_NEAR(c.imag(), 0.0, 1e-12);
    EXPECT_NEAR(c.real(), std::norm(z.to_complex<double>()), 1e-12);
}

TEST(Cyclotomic, RationalRoundTrip)
{
    CycNumber x = CycNumber::rational(5, Rat(3, 4));
    ASSERT_TRUE(x.as_rational());
    EXPECT_EQ(*x.as_rational(), Rat(3, 4));
    EXPECT_FALSE(CycNumber::root(5, 1).as_rational());
}

TEST(Cyclotomic, GaloisActsOnRoots)
{
    EXPECT_TRUE((CycNumber::root(9, 2).galois(4) - CycNumber::root(9, 8)).is_zero());
    EXPECT_THROW(CycNumber::root(9, 1).galois(3), std::domain_error);
}

TEST(Cyclotomic, GaussSumOfD1)
{
    // G(D_1) = sum_x e(-x^2/4) = 1 - i
    auto g = gauss_sum(QuadSpace::D(1)).to_complex<double>();
    EXPECT_NEAR(g.real(), 1.0, 1e-12);
    EXPECT_NEAR(g.imag(), -1.0, 1e-12);
}
