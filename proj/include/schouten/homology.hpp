#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "schouten/basis.hpp"
#include "schouten/boundary.hpp"
#include "schouten/chain.hpp"
#include "schouten/multivector.hpp"
#include "schouten/sparse_matrix.hpp"

namespace schouten {

/// Dimensions and ranks around C_m^{(w,h)}; betti = dim_m - rank_out - rank_in.
struct HomologyReport {
    int n = 0;
    int m = 0;
    int w = 0;
    int h = 0;
    std::size_t dim_m = 0;
    std::size_t dim_m_minus_1 = 0;
    std::size_t dim_m_plus_1 = 0;
    std::size_t rank_out = 0;  // rank d : C_m -> C_{m-1}
    std::size_t rank_in = 0;   // rank d : C_{m+1} -> C_m
    std::size_t betti = 0;

    friend bool operator==(const HomologyReport&, const HomologyReport&) = default;
};

enum class BasisOrder { canonical, reversed };

/// b_m^{(w,h)} = dim ker(d_m) - rank(d_{m+1}) over Q, m >= 0.
///
/// Ranks mod p are lower bounds and d o d = 0 caps rank_out + rank_in at dim_m, so when the
/// modular ranks already fill dim_m they are the exact ranks. Otherwise both ranks are
/// recomputed by exact elimination.
inline HomologyReport betti(int n, int m, int w, int h, BasisOrder order = BasisOrder::canonical)
{
    if (m < 0)
        throw std::invalid_argument("homological degree must be >= 0");
    auto make = [&](int k) {
        auto b = chain_basis(n, k, w, h);
        return std::make_shared<const BasisIndex>(order == BasisOrder::reversed ? b.reversed() : std::move(b));
    };
    const auto here = make(m);
    const auto above = make(m + 1);
    HomologyReport r{n, m, w, h};
    r.dim_m = here->size();
    r.dim_m_plus_1 = above->size();
    SparseMatrixQ out_matrix;
    if (m >= 1) {
        const auto below = make(m - 1);
        r.dim_m_minus_1 = below->size();
        out_matrix = boundary_matrix(here, below).matrix;
    }
    const SparseMatrixQ in_matrix = boundary_matrix(above, here).matrix;
    const auto out_mod = m >= 1 ? rank_mod_prime(out_matrix) : std::optional<std::size_t>(0);
    const auto in_mod = rank_mod_prime(in_matrix);
    if (out_mod && in_mod && *out_mod + *in_mod == r.dim_m) {
        r.rank_out = *out_mod;
        r.rank_in = *in_mod;
    } else {
        r.rank_out = m >= 1 ? rank_exact(out_matrix) : 0;
        r.rank_in = rank_exact(in_matrix);
    }
    if (r.rank_out + r.rank_in > r.dim_m)
        throw InvariantViolation("ranks exceed the chain dimension: d o d != 0");
    r.betti = r.dim_m - r.rank_out - r.rank_in;
    return r;
}

/// sum_{m >= 0} (-1)^m dim C_m^{(w,h)} over the complete finite range, C_0 the ground field.
inline BigInt euler_characteristic(int n, int w, int h)
{
    const int top = max_arity(n, w, h);
    const int bound = emptiness_bound(n, w, h);
    for (int m = top + 1; m <= bound; ++m)
        if (chain_dimension(n, m, w, h) != 0)
            throw InvariantViolation("C_" + std::to_string(m) + " nonzero above the computed top arity");
    BigInt chi = 0;
    for (int m = 0; m <= top; ++m) {
        const BigInt d = chain_dimension(n, m, w, h);
        chi += (m % 2 == 0) ? d : BigInt(-d);
    }
    return chi;
}

/// pi is Poisson iff d(pi ^^ pi) = [pi, pi] = 0.
inline bool is_poisson(const MultiVector& pi)
{
    if (pi.is_zero())
        return true;
    for (const auto& t : pi.terms())
        if (t.gen.alpha.size() != 2)
            throw std::invalid_argument("is_poisson expects a bivector field");
    const Chain square = wedge_chain(as_chain(pi), as_chain(pi));
    return boundary(square).is_zero();
}

}  // namespace schouten
