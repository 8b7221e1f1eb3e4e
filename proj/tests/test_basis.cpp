#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace schouten;

TEST(Basis, Examples)
{
    const auto b1 = enumerate_basis(2, 1, 0, 0);
    ASSERT_EQ(b1.size(), 4u);
    std::set<std::string> words;
    for (const auto& w : b1.words())
        words.insert(to_text(w));
    EXPECT_EQ(words, (std::set<std::string>{"x[1,0] d[1]", "x[0,1] d[1]", "x[1,0] d[2]", "x[0,1] d[2]"}));
    EXPECT_EQ(enumerate_basis(2, 2, 0, 0).size(), 18u);
    for (int h = -3; h <= 3; ++h)
        EXPECT_EQ(enumerate_basis(1, 2, 1, h).size(), 0u);
}

TEST(Basis, GeneratorCountFormula)
{
    // dim X^a_b(R^n) = C(n, a) * C(b + n - 1, n - 1)
    for (int n = 1; n <= 4; ++n)
        for (int a = 1; a <= n; ++a)
            for (int b = 0; b <= 5; ++b)
                EXPECT_EQ(BigInt(generators_of(n, a, b).size()), binomial(n, a) * binomial(b + n - 1, n - 1));
}

TEST(Basis, BruteForceMultisetOracle)
{
    for (int n = 1; n <= 2; ++n)
        for (int m = 1; m <= 3; ++m)
            for (int w = 0; w <= 2; ++w)
                for (int h = -3; h <= 3; ++h)
                    EXPECT_EQ(static_cast<long>(enumerate_basis(n, m, w, h).size()), oracle::count_words(n, m, w, h))
                        << n << " " << m << " " << w << " " << h;
}

TEST(Basis, GeneratingFunctionOracle)
{
    constexpr int max_m = 4, max_w = 3, max_h = 4;
    for (int n = 1; n <= 3; ++n) {
        const auto table = oracle::generating_function(n, max_m, max_w, max_h);
        for (int m = 1; m <= max_m; ++m)
            for (int w = 0; w <= max_w; ++w)
                for (int h = -max_h; h <= max_h; ++h) {
                    const long want = h < -m ? 0 : table[m][w][static_cast<std::size_t>(h + max_m)];
                    EXPECT_EQ(chain_dimension(n, m, w, h), BigInt(want)) << n << " " << m << " " << w << " " << h;
                    if (want < 400000)
                        EXPECT_EQ(static_cast<long>(enumerate_basis(n, m, w, h).size()), want);
                }
    }
}

TEST(Basis, SortedDistinctAndWeighted)
{
    const auto b = enumerate_basis(3, 3, 1, 1);
    for (std::size_t k = 0; k < b.size(); ++k) {
        EXPECT_EQ(weight_signature(b[k]), (WeightSignature{3, 1, 1}));
        EXPECT_EQ(b.find(b[k]), k);
        if (k)
            EXPECT_LT(b[k - 1], b[k]);
        const auto f = b[k].factors();
        const auto canon = canonicalize_word({f.begin(), f.end()});
        ASSERT_TRUE(canon);
        EXPECT_EQ(canon->sign, 1);
    }
}

TEST(Basis, FiniteBeyondBound)
{
    for (int n = 1; n <= 3; ++n)
        for (int w = 0; w <= 2; ++w)
            for (int h = -2; h <= 3; ++h) {
                const int top = max_arity(n, w, h);
                const int bound = emptiness_bound(n, w, h);
                EXPECT_LT(top, bound);
                for (int m = top + 1; m <= bound + 3; ++m)
                    EXPECT_EQ(chain_dimension(n, m, w, h), 0) << n << " " << m << " " << w << " " << h;
                if (top > 0)
                    EXPECT_NE(chain_dimension(n, top, w, h), 0);
            }
    const int dims[] = {4, 18, 60, 120, 156, 134, 68, 15};
    EXPECT_EQ(max_arity(2, 0, 0), 8);
    for (int m = 1; m <= 8; ++m)
        EXPECT_EQ(chain_dimension(2, m, 0, 0), dims[m - 1]);
}

TEST(Basis, CoordinatesRoundTrip)
{
    const auto b = std::make_shared<const BasisIndex>(enumerate_basis(2, 2, 1, 1));
    Rng rng(2);
    std::vector<Rational> v(b->size());
    for (auto& x : v)
        x = Rational(uniform_int(rng, -3, 3));
    const Chain c = vector_to_chain(v, *b);
    EXPECT_EQ(chain_to_vector(c, *b), v);
    EXPECT_EQ(chain_to_vector(Chain{}, *b), std::vector<Rational>(b->size()));
    Chain stray;
    stray.add_raw({parse_generator("x[0,0] d[1]"), parse_generator("x[0,0] d[2]")}, Rational(1));
    EXPECT_THROW(chain_to_vector(stray, *b), WeightMismatch);
}
