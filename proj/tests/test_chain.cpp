#include <algorithm>
#include <numeric>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace schouten;

namespace {

Generator gen(const char* text) { return parse_generator(text); }

/// Super-sign of reordering `raw` into the order given by `perm` (raw[perm[k]] at slot k),
/// by bubbling adjacent transpositions.
int permutation_sign(std::vector<Generator> raw, std::vector<std::size_t> perm)
{
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = 0; j + 1 < perm.size() - i; ++j)
            if (perm[j] > perm[j + 1]) {
                std::swap(perm[j], perm[j + 1]);
                sign *= swap_sign(raw[perm[j]].odd(), raw[perm[j + 1]].odd());
            }
    return sign;
}

}  // namespace

TEST(Canonicalize, Examples)
{
    const auto a = canonicalize_word({gen("x[0,0] d[2]"), gen("x[0,0] d[1]")});
    ASSERT_TRUE(a);
    EXPECT_EQ(a->sign, -1);
    EXPECT_EQ(to_text(a->word), "x[0,0] d[1] ; x[0,0] d[2]");

    const auto pp = canonicalize_word({gen("x[0,0] d[1,2]"), gen("x[0,0] d[1,2]")});
    ASSERT_TRUE(pp);
    EXPECT_EQ(pp->sign, 1);
    EXPECT_EQ(pp->word.arity(), 2u);

    EXPECT_FALSE(canonicalize_word({gen("x[1,0] d[1]"), gen("x[1,0] d[1]")}));
    EXPECT_THROW(canonicalize_word({}), std::invalid_argument);
}

TEST(Canonicalize, SwapLaw)
{
    EXPECT_EQ(swap_sign(false, false), -1);
    EXPECT_EQ(swap_sign(true, false), -1);
    EXPECT_EQ(swap_sign(false, true), -1);
    EXPECT_EQ(swap_sign(true, true), 1);
}

TEST(Canonicalize, PermutationsAgreeWithSuperParity)
{
    Rng rng(3);
    for (int s = 0; s < 200; ++s) {
        const int n = uniform_int(rng, 2, 3);
        const std::size_t k = static_cast<std::size_t>(uniform_int(rng, 2, 4));
        std::vector<Generator> raw;
        for (std::size_t i = 0; i < k; ++i)
            raw.push_back(random_generator(rng, n, 2));
        const auto base = canonicalize_word(raw);
        std::vector<std::size_t> perm(k);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            std::vector<Generator> shuffled;
            for (auto p : perm)
                shuffled.push_back(raw[p]);
            const auto got = canonicalize_word(shuffled);
            ASSERT_EQ(bool(got), bool(base));
            if (!base)
                continue;
            EXPECT_EQ(got->word, base->word);
            EXPECT_EQ(got->sign, base->sign * permutation_sign(raw, perm));
            const auto f = got->word.factors();
            const auto again = canonicalize_word({f.begin(), f.end()});
            ASSERT_TRUE(again);
            EXPECT_EQ(again->sign, 1);
            EXPECT_EQ(again->word, got->word);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
}

TEST(Canonicalize, FactorOrderIsByDegreeThenLex)
{
    const auto w = canonicalize_word({gen("x[0,0] d[1,2]"), gen("x[2,0] d[1]"), gen("x[0,1] d[1]"), gen("x[0,0] d[2]")});
    ASSERT_TRUE(w);
    EXPECT_EQ(to_text(w->word), "x[0,0] d[2] ; x[0,1] d[1] ; x[2,0] d[1] ; x[0,0] d[1,2]");
}

TEST(WedgeChain, Examples)
{
    const Chain d1 = as_chain(parse_multivector("1 * x[0,0] d[1]"));
    const Chain sum = as_chain(parse_multivector("1 * x[1,0] d[1] + 1 * x[0,1] d[2]"));
    const Chain got = wedge_chain(d1, sum);
    Chain want;
    want.add_raw({gen("x[0,0] d[1]"), gen("x[1,0] d[1]")}, Rational(1));
    want.add_raw({gen("x[0,0] d[1]"), gen("x[0,1] d[2]")}, Rational(1));
    EXPECT_EQ(got, want);
    EXPECT_TRUE(wedge_chain(d1, d1).is_zero());

    const Chain six = wedge_chain(as_chain(parse_multivector("2 * x[0,0] d[1]")), as_chain(parse_multivector("3 * x[1,0] d[2]")));
    ASSERT_EQ(six.size(), 1u);
    EXPECT_EQ(six.terms().begin()->second, Rational(6));
}

TEST(WedgeChain, Associative)
{
    Rng rng(8);
    for (int s = 0; s < 200; ++s) {
        const int n = uniform_int(rng, 2, 3);
        const Chain a = as_chain(random_monomial(rng, n, 2)), b = as_chain(random_monomial(rng, n, 2)),
                    c = as_chain(random_monomial(rng, n, 2));
        EXPECT_EQ(wedge_chain(wedge_chain(a, b), c), wedge_chain(a, wedge_chain(b, c)));
    }
}

TEST(WeightSignature, Examples)
{
    const auto w1 = canonicalize_word({gen("x[0,0] d[1]"), gen("x[0,0] d[2]")});
    EXPECT_EQ(weight_signature(w1->word), (WeightSignature{2, 0, -2}));
    const auto pp = canonicalize_word({gen("x[1,1] d[1,2]"), gen("x[1,1] d[1,2]")});
    EXPECT_EQ(weight_signature(pp->word), (WeightSignature{2, 2, 2}));
    const auto single = canonicalize_word({gen("x[2,0] d[1]")});
    EXPECT_EQ(weight_signature(single->word), (WeightSignature{1, 0, 1}));
}

TEST(ChainText, RoundTrip)
{
    Rng rng(13);
    Chain c;
    for (int s = 0; s < 20; ++s) {
        std::vector<Generator> raw{random_generator(rng, 3, 3), random_generator(rng, 3, 3), random_generator(rng, 3, 3)};
        c.add_raw(raw, make_rational(uniform_int(rng, -9, 9), uniform_int(rng, 1, 5)));
    }
    Chain back;
    for (const auto& line : to_text_lines(c))
        parse_chain_term(line, back);
    EXPECT_EQ(back, c);
    EXPECT_EQ(chain_from_json(chain_to_json(c)), c);
    EXPECT_THROW(parse_chain_term("1/1 x[0] d[1]", back), ParseError);
    EXPECT_THROW(parse_chain_term("1/1 | x[0] d[1] ; x[0,0] d[1]", back), ParseError);
}

TEST(ChainText, DocumentFormats)
{
    const Chain a = parse_chain_document("# comment\n\n1/2 | x[1,1] d[1,2] ; x[1,1] d[1,2]  # tail\n");
    const Chain b = parse_chain_document(R"([{"coeff": "1/2", "factors": [{"beta": [1,1], "alpha": [1,2]}, {"beta": [1,1], "alpha": [1,2]}]}])");
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.size(), 1u);
    EXPECT_THROW(parse_chain_document("[{\"coeff\": \"1\"}]"), ParseError);
    EXPECT_THROW(parse_chain_document("[1, 2"), ParseError);
}
