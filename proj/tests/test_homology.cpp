#include <numeric>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace schouten;

namespace {

SparseMatrixQ random_sparse(Rng& rng, std::size_t rows, std::size_t cols, int density_pct)
{
    SparseMatrixQ m(rows, cols);
    for (std::size_t c = 0; c < cols; ++c) {
        SparseMatrixQ::Column col;
        for (std::size_t r = 0; r < rows; ++r)
            if (uniform_int(rng, 0, 99) < density_pct)
                col.emplace_back(r, make_rational(uniform_int(rng, -4, 4), uniform_int(rng, 1, 3)));
        m.set_column(c, std::move(col));
    }
    return m;
}

std::vector<std::size_t> shuffled(Rng& rng, std::size_t n)
{
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

}  // namespace

TEST(Rank, Trivial)
{
    EXPECT_EQ(rank_exact(SparseMatrixQ::identity(5)), 5u);
    EXPECT_EQ(rank_exact(SparseMatrixQ(3, 7)), 0u);
    EXPECT_TRUE(kernel_basis(SparseMatrixQ::identity(4)).empty());
    const auto k = kernel_basis(SparseMatrixQ(2, 3));
    EXPECT_EQ(k.size(), 3u);
}

TEST(Rank, MatchesDenseOracleOnRandomMatrices)
{
    Rng rng(47);
    for (int s = 0; s < 150; ++s) {
        const auto rows = static_cast<std::size_t>(uniform_int(rng, 1, 14));
        const auto cols = static_cast<std::size_t>(uniform_int(rng, 1, 14));
        SparseMatrixQ m = random_sparse(rng, rows, cols, uniform_int(rng, 5, 60));
        if (s % 3 == 0 && cols > 2) {
            // force dependent columns
            auto col = m.column(0);
            for (auto& [r, v] : col)
                v *= 3;
            for (const auto& [r, v] : m.column(1))
                col.emplace_back(r, v);
            m.set_column(cols - 1, col);
        }
        const std::size_t r = rank_exact(m);
        EXPECT_EQ(r, oracle::dense_rank(oracle::to_dense(m)));
        EXPECT_EQ(rank_exact(m.transposed()), r);
        EXPECT_EQ(rank_exact(m.permuted(shuffled(rng, rows), shuffled(rng, cols))), r);
        const auto ker = kernel_basis(m);
        EXPECT_EQ(ker.size() + r, cols);
        for (const auto& v : ker)
            for (const auto& x : m.apply(v))
                EXPECT_EQ(x, 0);
    }
}

TEST(Rank, BoundaryMatrixAgainstDenseOracle)
{
    for (auto [m, w, h] : {std::tuple{2, 0, 0}, {3, 0, 0}, {2, 1, 1}, {3, 1, 1}, {2, 0, 2}, {3, 2, 2}}) {
        const auto d = boundary_matrix(2, m, w, h);
        EXPECT_EQ(rank_exact(d.matrix), oracle::dense_rank(oracle::to_dense(d.matrix))) << m << w << h;
    }
}

TEST(Rank, ModularIsALowerBound)
{
    Rng rng(53);
    for (int s = 0; s < 150; ++s) {
        const auto rows = static_cast<std::size_t>(uniform_int(rng, 1, 12));
        const auto cols = static_cast<std::size_t>(uniform_int(rng, 1, 12));
        SparseMatrixQ m(rows, cols);
        for (std::size_t c = 0; c < cols; ++c) {
            SparseMatrixQ::Column col;
            for (std::size_t r = 0; r < rows; ++r)
                if (uniform_int(rng, 0, 99) < 40)
                    col.emplace_back(r, from_int(uniform_int(rng, -6, 6)));
            m.set_column(c, std::move(col));
        }
        const std::size_t exact = rank_exact(m);
        EXPECT_EQ(rank_mod_prime(m), exact);
        // a tiny prime can only lose rank
        const auto small = rank_mod_prime(m, 5);
        ASSERT_TRUE(small);
        EXPECT_LE(*small, exact);
    }
    SparseMatrixQ diag(2, 2);
    diag.set_column(0, {{0, Rational(5)}});
    diag.set_column(1, {{1, Rational(1)}});
    EXPECT_EQ(rank_mod_prime(diag, 5), 1u);
    diag.set_column(1, {{1, make_rational(1, 5)}});
    EXPECT_FALSE(rank_mod_prime(diag, 5));
}

TEST(Rank, ModularAgreesWithExactOnTheGrid)
{
    for (int n = 1; n <= 3; ++n)
        for (int w = 0; w <= 2; ++w)
            for (int h = -3; h <= 3; ++h)
                for (int m = 1; m <= (n == 3 ? 3 : 4); ++m) {
                    const auto d = boundary_matrix(n, m, w, h);
                    EXPECT_EQ(rank_mod_prime(d.matrix), rank_exact(d.matrix)) << n << " " << m << " " << w << " " << h;
                }
}

TEST(Kernel, VectorsAreCycles)
{
    const auto d = boundary_matrix(2, 3, 1, 1);
    const auto ker = kernel_basis(d.matrix);
    EXPECT_EQ(ker.size() + rank_exact(d.matrix), d.matrix.cols());
    for (const auto& v : ker)
        EXPECT_TRUE(boundary(vector_to_chain(v, *d.domain)).is_zero());
}

TEST(Betti, Examples)
{
    EXPECT_EQ(betti(2, 2, 1, 1).betti, 0u);
    EXPECT_EQ(betti(2, 1, 0, 2).betti, 0u);
    EXPECT_EQ(betti(2, 2, 0, 1).betti, 0u);
    const auto r = betti(2, 3, 0, 0);
    EXPECT_EQ(r.dim_m, 60u);
    EXPECT_EQ(r.rank_out + r.rank_in + r.betti, r.dim_m);
    // regression values
    EXPECT_EQ(r.rank_out, 14u);
    EXPECT_EQ(r.rank_in, 46u);
    EXPECT_EQ(r.betti, 0u);
}

TEST(Betti, NonzeroClassesTakeTheExactPath)
{
    // the modular ranks do not fill C_5 here, so both ranks come from exact elimination
    const auto r = betti(2, 5, 0, 0);
    EXPECT_EQ(r.rank_out, rank_exact(boundary_matrix(2, 5, 0, 0).matrix));
    EXPECT_EQ(r.rank_in, rank_exact(boundary_matrix(2, 6, 0, 0).matrix));
    EXPECT_EQ(r.betti, 2u);  // regression value
}

TEST(Betti, IndependentOfBasisOrder)
{
    for (auto [m, w, h] : {std::tuple{2, 0, 0}, {3, 0, 0}, {2, 1, 1}, {4, 1, 1}, {2, 2, 2}})
        EXPECT_EQ(betti(2, m, w, h, BasisOrder::canonical), betti(2, m, w, h, BasisOrder::reversed));
}

TEST(Betti, HomologyEulerEqualsChainEuler)
{
    for (auto [w, h] : {std::pair{0, 0}, {1, 1}, {0, 1}, {1, 0}, {1, 2}}) {
        BigInt chi = 0;
        for (int m = 0; m <= max_arity(2, w, h); ++m)
            chi += BigInt((m % 2 ? -1 : 1) * static_cast<long>(betti(2, m, w, h).betti));
        EXPECT_EQ(chi, euler_characteristic(2, w, h)) << w << " " << h;
    }
}

TEST(Euler, Examples)
{
    EXPECT_EQ(euler_characteristic(2, 0, 0), 0);
    EXPECT_EQ(euler_characteristic(2, 1, 1), 0);
    EXPECT_EQ(euler_characteristic(1, 1, 0), 0);
    EXPECT_EQ(max_arity(1, 1, 0), 0);
}

TEST(Poisson, Examples)
{
    EXPECT_TRUE(is_poisson(parse_multivector("1 * x[0,0] d[1,2]")));
    EXPECT_TRUE(is_poisson(parse_multivector("1 * x[1,1] d[1,2]")));
    // x3 d1^d2 + x1 d2^d3 + x2 d3^d1, the last written as -x2 d1^d3
    const MultiVector lp = parse_multivector("1 * x[0,0,1] d[1,2] + 1 * x[1,0,0] d[2,3] + -1 * x[0,1,0] d[1,3]");
    EXPECT_TRUE(is_poisson(lp));
    EXPECT_TRUE(schouten_bracket(lp, lp).is_zero());
    const MultiVector bad = parse_multivector("1 * x[0,0,1] d[1,2] + 1 * x[0,0,0] d[2,3] + 1 * x[1,0,0] d[1,3]");
    EXPECT_EQ(is_poisson(bad), schouten_bracket(bad, bad).is_zero());
    EXPECT_THROW(is_poisson(parse_multivector("1 * x[0,0] d[1]")), std::invalid_argument);
}

TEST(Poisson, AgreesWithBracketOnRandomBivectors)
{
    Rng rng(53);
    int nonpoisson = 0;
    for (int s = 0; s < 60; ++s) {
        std::vector<MonomialMV> terms;
        for (int t = 0; t < 3; ++t) {
            Generator g = random_generator(rng, 3, 2, 2);
            while (g.alpha.size() != 2)
                g = random_generator(rng, 3, 2, 2);
            terms.push_back({random_nonzero(rng, 3), g});
        }
        const MultiVector pi(3, terms);
        if (pi.is_zero())
            continue;
        const bool p = is_poisson(pi);
        nonpoisson += !p;
        EXPECT_EQ(p, schouten_bracket(pi, pi).is_zero());
    }
    EXPECT_GT(nonpoisson, 0);
}
