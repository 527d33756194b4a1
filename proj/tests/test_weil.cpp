#include <wt1/weil.hpp>

#include <gtest/gtest.h>

using namespace wt1;

TEST(Weil, SSquaredEqualsSTCubed)
{
    for (i64 m = 1; m <= 6; ++m) {
        auto A = QuadSpace::D(m);
        EXPECT_EQ(weil_matrix(A, Sl2Word::S(2)), weil_matrix(A, Sl2Word(std::vector<i64>{0, 1, 1, 1}))) << m;
        EXPECT_TRUE(weil_matrix(A, Sl2Word::S(8)).is_identity()) << m;
    }
}

TEST(Weil, Unitary)
{
    auto [T, S] = weil_generators(QuadSpace::D(5));
    EXPECT_TRUE((S * S.conj_transpose()).is_identity());
    EXPECT_TRUE((T * T.conj_transpose()).is_identity());
}

TEST(Weil, GaussTraceLaw)
{
    for (i64 m = 1; m <= 8; ++m)
        for (int s : {1, -1})
            for (int k = 0; k < 8; ++k) {
                auto v = evaluate_character(CharacterHandle::theta_pm(m, s), Sl2Word::S(k));
                EXPECT_TRUE((v - gauss_trace_law(m, s, k)).is_zero()) << m << " " << s << " " << k;
            }
}

TEST(Weil, DegreesOfThetaParts)
{
    auto id = Sl2Word::T(0);
    auto deg = [&](const CharacterHandle& h) { return *evaluate_character(h, id).as_rational(); };
    EXPECT_EQ(deg(CharacterHandle::theta(9)), Rat(18));
    EXPECT_EQ(deg(CharacterHandle::theta_pm(9, 1)), Rat(10));
    EXPECT_EQ(deg(CharacterHandle::theta_pm(9, -1)), Rat(8));
}

TEST(Weil, OrthogonalGroup)
{
    EXPECT_EQ(orthogonal_group(6), (std::vector<i64>{1, 5, 7, 11}));
    EXPECT_EQ(OmCharacter::all(6).size(), 4u);
}

TEST(Weil, PPartReconstruction)
{
    std::vector<Sl2Word> words{Sl2Word::S(), Sl2Word::T(3), Sl2Word(std::vector<i64>{2, -1, 5}),
                               Sl2Word(std::vector<i64>{1, 4, -3, 2})};
    for (i64 m : {6, 9, 12})
        for (const auto& al : OmCharacter::all(m)) {
            auto h = CharacterHandle::nu(al);
            auto parts = p_part_decomposition(h);
            for (const auto& w : words)
                EXPECT_TRUE((evaluate_character(h, w) - evaluate_p_parts(parts, w, m)).is_zero()) << h.name();
        }
}

TEST(Weil, LambdaRejectsEvenPrime)
{
    EXPECT_THROW(CharacterHandle::lambda(2, 1, 1), std::invalid_argument);
    EXPECT_THROW(CharacterHandle::lambda(9, 1, 1), std::invalid_argument);
}
