#pragma once

// The boundary operator on chains, by the left-action recursion
//
//   d(A_0 ^^ A_1 ^^ ... ^^ A_m) = -A_0 ^^ d(A_1 ^^ ... ^^ A_m) + A_0 . (A_1 ^^ ... ^^ A_m)
//   A_0 . (A_1 ^^ ... ^^ A_m)   = sum_i (-1)^(a_0 * sum_{s<i} a_s) A_1 ^^ ... ^^ [A_0, A_i] ^^ ... ^^ A_m
//
// with d(single generator) = 0, so d(A ^^ B) = [A, B]. The recursion runs on raw factor
// lists; every produced word is canonicalized immediately.

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "schouten/basis.hpp"
#include "schouten/chain.hpp"
#include "schouten/errors.hpp"
#include "schouten/multivector.hpp"
#include "schouten/parallel.hpp"
#include "schouten/sparse_matrix.hpp"

namespace schouten {

namespace detail {

/// A_0 . (rest), integer coefficients, A_0 a single generator.
inline void left_action_into(const Generator& a0, std::span<const Generator> rest, std::int64_t scale, IntegerChain& out)
{
    const int deg0 = a0.g_degree();
    int preceding = 0;  // sum of g-degrees of the factors before position i
    std::vector<Generator> raw(rest.begin(), rest.end());
    for (std::size_t i = 0; i < rest.size(); ++i) {
        const int sign = ((deg0 * preceding) & 1) ? -1 : 1;
        for (const auto& [g, c] : bracket_generators(a0, rest[i])) {
            raw[i] = g;
            out.add_raw(raw, scale * sign * c);
        }
        raw[i] = rest[i];
        preceding += rest[i].g_degree();
    }
}

inline void boundary_into(std::span<const Generator> factors, std::int64_t scale, IntegerChain& out)
{
    if (factors.size() <= 1)
        return;
    const Generator& a0 = factors.front();
    const auto rest = factors.subspan(1);
    IntegerChain inner;
    boundary_into(rest, 1, inner);
    std::vector<Generator> raw;
    for (const auto& [w, c] : inner.terms()) {
        raw.assign(1, a0);
        raw.insert(raw.end(), w.factors().begin(), w.factors().end());
        out.add_raw(raw, -scale * c);
    }
    left_action_into(a0, rest, scale, out);
}

}  // namespace detail

/// d of a single factor list (any order; the result is expressed in canonical words).
inline IntegerChain boundary_word(std::span<const Generator> factors)
{
    IntegerChain out;
    detail::boundary_into(factors, 1, out);
    return out;
}

inline IntegerChain boundary_word(const WedgeWord& word) { return boundary_word(word.factors()); }

/// Linear extension of d to rational chains.
inline Chain boundary(const Chain& c)
{
    Chain out;
    for (const auto& [w, coeff] : c.terms()) {
        const IntegerChain dw = boundary_word(w);
        for (const auto& [u, v] : dw.terms())
            out.add(u, coeff * from_int(v));
    }
    return out;
}

/// A_0 . word for a multivector A_0 homogeneous in |alpha| (its g-degree fixes the signs).
inline Chain left_action(const MultiVector& a0, const WedgeWord& word)
{
    if (a0.is_zero())
        return {};
    const int a = a0.terms().front().gen.alpha.size();
    for (const auto& t : a0.terms())
        if (t.gen.alpha.size() != a)
            throw std::invalid_argument("left action needs A_0 homogeneous in multivector degree; split it first");
    if (word.arity() > 0 && word.dim() != a0.dim())
        throw DimensionMismatch("left action across ambient dimensions");
    Chain out;
    for (const auto& t : a0.terms()) {
        IntegerChain part;
        detail::left_action_into(t.gen, word.factors(), 1, part);
        for (const auto& [w, v] : part.terms())
            out.add(w, t.coeff * from_int(v));
    }
    return out;
}

/// Ground-field basis C_0^{(w,h)}: the empty word in block (0,0), nothing elsewhere.
inline BasisIndex ground_basis(int n, int w, int h)
{
    std::vector<WedgeWord> words;
    if (w == 0 && h == 0)
        words.emplace_back();
    return BasisIndex(n, WeightSignature{0, w, h}, std::move(words));
}

/// Basis of C_m^{(w,h)} for any m >= 0.
inline BasisIndex chain_basis(int n, int m, int w, int h)
{
    return m == 0 ? ground_basis(n, w, h) : enumerate_basis(n, m, w, h);
}

/// d : C_m^{(w,h)} -> C_{m-1}^{(w,h)} in the given bases.
struct BoundaryMatrix {
    SparseMatrixQ matrix;
    std::shared_ptr<const BasisIndex> domain;
    std::shared_ptr<const BasisIndex> codomain;
};

/// Column j holds the coordinates of d(domain word j). A word outside the codomain basis
/// means d broke weight preservation, which is a bug: InvariantViolation.
inline BoundaryMatrix boundary_matrix(std::shared_ptr<const BasisIndex> domain, std::shared_ptr<const BasisIndex> codomain)
{
    const auto& dom = *domain;
    const auto& cod = *codomain;
    if (cod.signature().m + 1 != dom.signature().m || cod.signature().w != dom.signature().w
        || cod.signature().h != dom.signature().h)
        throw std::invalid_argument("boundary matrix needs bases of C_m and C_{m-1} in the same block");
    BoundaryMatrix out{SparseMatrixQ(cod.size(), dom.size()), domain, codomain};
    if (dom.signature().m <= 1)
        return out;  // d vanishes on single generators
    std::vector<SparseMatrixQ::Column> columns(dom.size());
    parallel_for(dom.size(), [&](std::size_t k) {
        const IntegerChain image = boundary_word(dom[k]);
        for (const auto& [w, v] : image.terms()) {
            const auto row = cod.find(w);
            if (!row)
                throw InvariantViolation("d(" + to_text(dom[k]) + ") produced " + to_text(w)
                                         + " outside the codomain block");
            columns[k].emplace_back(*row, from_int(v));
        }
    });
    for (std::size_t k = 0; k < columns.size(); ++k)
        out.matrix.set_column(k, std::move(columns[k]));
    return out;
}

inline BoundaryMatrix boundary_matrix(int n, int m, int w, int h)
{
    if (m < 1)
        throw std::invalid_argument("boundary matrix needs m >= 1");
    return boundary_matrix(std::make_shared<const BasisIndex>(chain_basis(n, m, w, h)),
                           std::make_shared<const BasisIndex>(chain_basis(n, m - 1, w, h)));
}

}  // namespace schouten
