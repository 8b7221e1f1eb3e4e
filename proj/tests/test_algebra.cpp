#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace schouten;

namespace {

MultiVector mv(const char* text) { return parse_multivector(text); }

int sgn(int e) { return (e & 1) ? -1 : 1; }

}  // namespace

TEST(Rational, TextAlwaysCarriesDenominator)
{
    EXPECT_EQ(to_text(Rational(3)), "3/1");
    EXPECT_EQ(to_text(Rational(-3, 2)), "-3/2");
    EXPECT_EQ(to_text(Rational(0)), "0/1");
    EXPECT_EQ(parse_rational(" 6/4 "), Rational(3, 2));
    EXPECT_EQ(parse_rational("-7"), Rational(-7));
    EXPECT_THROW(parse_rational("1/0"), ParseError);
    EXPECT_THROW(parse_rational("1/2/3"), ParseError);
    EXPECT_THROW(parse_rational(""), ParseError);
}

TEST(MultiVector, MonomialTextRoundTrip)
{
    const MonomialMV m = parse_monomial("-3/2 * x[1,1] d[1,2]");
    EXPECT_EQ(m.coeff, Rational(-3, 2));
    EXPECT_EQ(to_text(m), "-3/2 * x[1,1] d[1,2]");
    EXPECT_THROW(parse_monomial("1/1 * x[1,1] d[2,1]"), ParseError);
    EXPECT_THROW(parse_monomial("1/1 * x[1,1] d[3]"), ParseError);
    EXPECT_THROW(parse_monomial("1/1 * x[1,-1] d[1]"), ParseError);
    EXPECT_THROW(parse_monomial("1/1 x[1,1] d[1]"), ParseError);
    const MultiVector v = mv("2/1 * x[1,0] d[1] + -1/1 * x[0,1] d[2]");
    EXPECT_EQ(parse_multivector(to_text(v)), v);
    EXPECT_EQ(to_text(MultiVector(2)), "0");
}

TEST(MultiVector, NormalizationMergesAndDropsZeros)
{
    const Generator g = parse_generator("x[1,0] d[1]");
    const MultiVector v(2, {{Rational(2), g}, {Rational(-2), g}, {Rational(1), parse_generator("x[0,0] d[2]")}});
    EXPECT_EQ(v.terms().size(), 1u);
    const MultiVector again(2, v.terms());
    EXPECT_EQ(again, v);
}

TEST(Wedge, Examples)
{
    EXPECT_EQ(wedge_mv(mv("1 * x[0,0] d[1]"), mv("1 * x[0,0] d[2]")), mv("1 * x[0,0] d[1,2]"));
    EXPECT_EQ(wedge_mv(mv("1 * x[0,0] d[2]"), mv("1 * x[0,0] d[1]")), mv("-1 * x[0,0] d[1,2]"));
    EXPECT_TRUE(wedge_mv(mv("1 * x[0,0] d[1]"), mv("1 * x[0,0] d[1]")).is_zero());
    EXPECT_EQ(wedge_mv(mv("1 * x[1,0] d[1]"), mv("1 * x[0,0] d[2]")), mv("1 * x[1,0] d[1,2]"));
}

TEST(Wedge, AssociativeAndGradedCommutative)
{
    Rng rng(11);
    for (int s = 0; s < 300; ++s) {
        const int n = uniform_int(rng, 1, 4);
        const MultiVector a = random_monomial(rng, n, 3), b = random_monomial(rng, n, 3), c = random_monomial(rng, n, 3);
        EXPECT_EQ(wedge_mv(wedge_mv(a, b), c), wedge_mv(a, wedge_mv(b, c)));
        const int pa = a.terms().front().gen.alpha.size(), pb = b.terms().front().gen.alpha.size();
        EXPECT_EQ(wedge_mv(a, b), wedge_mv(b, a) * from_int(sgn(pa * pb)));
    }
}

TEST(Bracket, Examples)
{
    EXPECT_TRUE(schouten_bracket(mv("1 * x[0,0] d[1]"), mv("1 * x[0,0] d[2]")).is_zero());
    EXPECT_EQ(schouten_bracket(mv("1 * x[1,0] d[2]"), mv("1 * x[0,1] d[1]")), mv("1 * x[1,0] d[1] + -1 * x[0,1] d[2]"));
    EXPECT_EQ(schouten_bracket(mv("1 * x[0,0] d[1]"), mv("1 * x[1,1] d[1,2]")), mv("1 * x[0,1] d[1,2]"));
    EXPECT_EQ(schouten_bracket(mv("1 * x[1,1] d[1,2]"), mv("1 * x[0,0] d[1]")), mv("-1 * x[0,1] d[1,2]"));
}

TEST(Bracket, VectorFieldsActOnFunctions)
{
    // [X, f] = X(f): x1^2 d2 applied to x1 x2^3 is 3 x1^3 x2^2
    const Generator x{MultiIndex{2, 0}, DirectionSet{2}};
    const Generator f{MultiIndex{1, 3}, DirectionSet{}};
    const auto terms = bracket_generators(x, f);
    ASSERT_EQ(terms.size(), 1u);
    EXPECT_EQ(terms[0].first, (Generator{MultiIndex{3, 2}, DirectionSet{}}));
    EXPECT_EQ(terms[0].second, 3);
}

TEST(Bracket, MatchesClassicalExpansion)
{
    Rng rng(5);
    for (int s = 0; s < 250; ++s) {
        const int n = uniform_int(rng, 1, 3);
        const MultiVector a = random_monomial(rng, n, 3), b = random_monomial(rng, n, 3);
        ASSERT_EQ(oracle::convert(schouten_bracket(a, b)), oracle::bracket(a, b)) << to_text(a) << " , " << to_text(b);
    }
}

TEST(Bracket, GradedAntisymmetryAndCyclicJacobi)
{
    Rng rng(17);
    for (int s = 0; s < 250; ++s) {
        const int n = uniform_int(rng, 1, 3);
        const MultiVector a = random_monomial(rng, n, 4), b = random_monomial(rng, n, 4), c = random_monomial(rng, n, 4);
        const int x = bidegree(a).i, y = bidegree(b).i, z = bidegree(c).i;
        EXPECT_EQ(schouten_bracket(a, b), schouten_bracket(b, a) * from_int(sgn(1 + x * y)));
        const MultiVector cyc = schouten_bracket(schouten_bracket(a, b), c) * from_int(sgn(x * z))
                                + schouten_bracket(schouten_bracket(b, c), a) * from_int(sgn(y * x))
                                + schouten_bracket(schouten_bracket(c, a), b) * from_int(sgn(z * y));
        EXPECT_TRUE(cyc.is_zero()) << to_text(a) << " | " << to_text(b) << " | " << to_text(c);
    }
}

TEST(Bracket, BiderivationOfWedge)
{
    Rng rng(23);
    for (int s = 0; s < 200; ++s) {
        const int n = uniform_int(rng, 2, 3);
        const MultiVector p = random_monomial(rng, n, 3), q = random_monomial(rng, n, 3), r = random_monomial(rng, n, 3);
        const int pd = bidegree(p).i, qa = q.terms().front().gen.alpha.size();
        EXPECT_EQ(schouten_bracket(p, wedge_mv(q, r)),
                  wedge_mv(schouten_bracket(p, q), r) + wedge_mv(q, schouten_bracket(p, r)) * from_int(sgn(pd * qa)));
    }
}

TEST(Bracket, BidegreeIsAdditive)
{
    Rng rng(29);
    int nonzero = 0;
    for (int s = 0; s < 300; ++s) {
        const int n = uniform_int(rng, 1, 3);
        const MultiVector a = random_monomial(rng, n, 4), b = random_monomial(rng, n, 4);
        const MultiVector c = schouten_bracket(a, b);
        if (c.is_zero())
            continue;
        ++nonzero;
        EXPECT_EQ(bidegree(c), (Bidegree{bidegree(a).i + bidegree(b).i, bidegree(a).j + bidegree(b).j}));
    }
    EXPECT_GT(nonzero, 100);
}

TEST(Bracket, BilinearAndDimensionChecked)
{
    const MultiVector a = mv("1 * x[1,0] d[2] + 2 * x[0,2] d[1]");
    const MultiVector b = mv("1 * x[0,1] d[1,2]");
    EXPECT_EQ(schouten_bracket(a, b),
              schouten_bracket(mv("1 * x[1,0] d[2]"), b) + schouten_bracket(mv("2 * x[0,2] d[1]"), b));
    EXPECT_THROW(schouten_bracket(mv("1 * x[1] d[1]"), b), DimensionMismatch);
}

TEST(Bidegree, Examples)
{
    EXPECT_EQ(bidegree(mv("1 * x[2,0] d[1]")), (Bidegree{0, 1}));
    EXPECT_EQ(bidegree(mv("1 * x[0,0] d[1,2]")), (Bidegree{1, -1}));
    EXPECT_THROW(bidegree(mv("1 * x[1,0] d[1] + 1 * x[0,0] d[1,2]")), std::invalid_argument);
    EXPECT_THROW(bidegree(MultiVector(2)), std::invalid_argument);
}

TEST(ScaleByCoordinate, Examples)
{
    EXPECT_EQ(scale_by_coordinate(1, mv("1 * x[0,0] d[2]")), mv("1 * x[1,0] d[2]"));
    EXPECT_EQ(scale_by_coordinate(2, mv("1 * x[0,1] d[1]")), mv("1 * x[0,2] d[1]"));
    EXPECT_TRUE(scale_by_coordinate(1, MultiVector(2)).is_zero());
    EXPECT_THROW(scale_by_coordinate(3, mv("1 * x[0,1] d[1]")), std::out_of_range);
}
