#include <wt1/qseries.hpp>

#include <gtest/gtest.h>

using namespace wt1;

namespace {
Series zero_like(const Series& s) { return Series(s.denominator(), s.order()); }
}  // namespace

TEST(QSeries, EtaPentagonal)
{
    // q^{1/24} (1 - q - q^2 + q^5 + q^7 - ...)
    Series e = eta_expansion(Rat(8));
    EXPECT_EQ(e.coeff(Rat(1, 24), 0), Coeff(1));
    EXPECT_EQ(e.coeff(Rat(25, 24), 0), Coeff(-1));
    EXPECT_EQ(e.coeff(Rat(49, 24), 0), Coeff(-1));
    EXPECT_EQ(e.coeff(Rat(73, 24), 0), Coeff(0));
    EXPECT_EQ(e.coeff(Rat(121, 24), 0), Coeff(1));
}

TEST(QSeries, ThetaSeriesSupport)
{
    Series t = theta_expansion(2, 1, Rat(10));
    EXPECT_EQ(t.coeff(Rat(1, 8), 2), Coeff(1));
    EXPECT_EQ(t.coeff(Rat(9, 8), -6), Coeff(1));
    EXPECT_EQ(t.coeff(Rat(9, 8), 6), Coeff(0));
    EXPECT_THROW(t.coeff(Rat(10), 0), std::out_of_range);
}

TEST(QSeries, Xi18Leading)
{
    Series x = explicit_form(FormName::Xi1_8, Rat(5));
    Series lead = zero_like(x);
    lead.add_term(Rat(1), -8, Coeff(1));
    lead.add_term(Rat(1), 8, Coeff(-1));
    EXPECT_TRUE(agree(x, lead));
}

TEST(QSeries, ThetaEtaQuotient)
{
    Series th = theta_expansion(8, 4, Rat(10)).specialize_y1();
    Series e = eta_expansion(Rat(12));
    Series q = rescale_tau(e, 8) * rescale_tau(e, 8) * series_invert(rescale_tau(e, 4));
    EXPECT_GE(q.order(), Rat(10));
    EXPECT_TRUE(agree(th, q));
}

TEST(QSeries, QuarkRescaleIsMinusXi9)
{
    Series q = rescale(theta_quark(1, 1, Rat(4)), 3, 3);
    Series x = explicit_form(FormName::Xi9_3A, Rat(10));
    EXPECT_TRUE(agree(q + x, zero_like(x)));
    EXPECT_FALSE(agree(q - x, zero_like(x)));
}

TEST(QSeries, ThetaDecompositionRoundTrip)
{
    Series x = explicit_form(FormName::Xi9_3A, Rat(6));
    auto h = theta_decompose(x, 9);
    EXPECT_TRUE(agree(theta_recompose(h, 9, Rat(6)), x));
    EXPECT_TRUE(elliptic_transform_check(x, 9, 1));
}

TEST(QSeries, Xi18ComponentsAreThetaNull)
{
    auto h = theta_decompose(explicit_form(FormName::Xi1_8, Rat(6)), 8);
    Series t = theta_expansion(8, 4, Rat(6)).specialize_y1();
    ASSERT_TRUE(h.count(4) && h.count(12));
    EXPECT_TRUE(agree(h.at(4), -t));
    EXPECT_TRUE(agree(h.at(12), t));
}

TEST(QSeries, UnaryTheta)
{
    Series s = explicit_form(FormName::SUnary, Rat(7), {4, 1});
    Series want(16, Rat(7));
    want.add_term(Rat(1, 16), 0, Coeff(1));
    want.add_term(Rat(49, 16), 0, Coeff(-7));
    want.add_term(Rat(81, 16), 0, Coeff(9));
    EXPECT_TRUE(agree(s, want));
}

TEST(QSeries, JsonLayout)
{
    auto j = explicit_form(FormName::Xi1_8, Rat(2)).to_json();
    EXPECT_EQ(j["order"], "2/1");
    ASSERT_EQ(j["terms"].size(), 2u);
    EXPECT_EQ(j["terms"][0][2], "1/1");
    EXPECT_EQ(j["terms"][1][2], "-1/1");
}

TEST(QSeries, UnknownFormRejected) { EXPECT_THROW(parse_form("xi_2_7"), std::invalid_argument); }
