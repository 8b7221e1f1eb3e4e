#pragma once

// Batch checks behind `verify` and the acceptance suite. Each returns the number of
// cases examined and, on failure, a witness that reproduces it.

#include <atomic>
#include <cstddef>
#include <limits>
#include <mutex>
#include <optional>
#include <string>

#include "schouten/basis.hpp"
#include "schouten/boundary.hpp"
#include "schouten/chain.hpp"
#include "schouten/homotopy.hpp"
#include "schouten/multivector.hpp"
#include "schouten/parallel.hpp"
#include "schouten/random.hpp"

namespace schouten {

struct CheckResult {
    std::size_t checked = 0;
    std::optional<std::string> witness;  // first failure

    bool ok() const { return !witness.has_value(); }
};

namespace detail {

/// Runs `probe(k)` for k < count in parallel; keeps the failure with the smallest k so the
/// witness does not depend on scheduling.
template <typename Probe>
CheckResult first_failure(std::size_t count, Probe probe)
{
    std::mutex mu;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    std::string witness;
    parallel_for(count, [&](std::size_t k) {
        if (auto w = probe(k)) {
            std::lock_guard lock(mu);
            if (k < best) {
                best = k;
                witness = std::move(*w);
            }
        }
    });
    CheckResult r{count, std::nullopt};
    if (best != std::numeric_limits<std::size_t>::max())
        r.witness = std::move(witness);
    return r;
}

inline IntegerChain boundary_int(const IntegerChain& c)
{
    IntegerChain out;
    for (const auto& [w, v] : c.terms()) {
        const IntegerChain dw = boundary_word(w);
        for (const auto& [u, x] : dw.terms())
            out.add(u, v * x);
    }
    return out;
}

}  // namespace detail

/// d(d(word)) = 0 for every basis word of C_m^{(w,h)}.
inline CheckResult check_dsq(int n, int m, int w, int h)
{
    if (m < 2)
        return {};
    const auto basis = enumerate_basis(n, m, w, h);
    return detail::first_failure(basis.size(), [&](std::size_t k) -> std::optional<std::string> {
        const IntegerChain dd = detail::boundary_int(boundary_word(basis[k]));
        if (dd.is_zero())
            return std::nullopt;
        return "d(d(" + to_text(basis[k]) + ")) has " + std::to_string(dd.size()) + " nonzero terms, e.g. "
               + to_text(dd.terms().begin()->first);
    });
}

/// Every term of d(word) has signature (m - 1, w, h).
inline CheckResult check_weights(int n, int m, int w, int h)
{
    const auto basis = enumerate_basis(n, m, w, h);
    const WeightSignature target{m - 1, w, h};
    return detail::first_failure(basis.size(), [&](std::size_t k) -> std::optional<std::string> {
        const IntegerChain d = boundary_word(basis[k]);
        for (const auto& [u, v] : d.terms())
            if (weight_signature(u) != target)
                return "d(" + to_text(basis[k]) + ") contains " + to_text(u) + " of the wrong weight";
        return std::nullopt;
    });
}

/// Graded antisymmetry and graded Jacobi on seeded random monomials, plus bidegree
/// additivity of the bracket. `samples` pairs and `samples` triples.
inline CheckResult check_bracket_identities(int n, std::uint64_t seed, std::size_t samples = 200, int max_beta = 4)
{
    Rng rng(seed);
    CheckResult r;
    const auto sign = [](int e) { return (e & 1) ? -1 : 1; };
    for (std::size_t s = 0; s < samples && r.ok(); ++s) {
        const MultiVector p = random_monomial(rng, n, max_beta);
        const MultiVector q = random_monomial(rng, n, max_beta);
        const MultiVector t = random_monomial(rng, n, max_beta);
        const int dp = bidegree(p).i, dq = bidegree(q).i;
        ++r.checked;
        const MultiVector pq = schouten_bracket(p, q);
        if (pq != schouten_bracket(q, p) * from_int(-sign(dp * dq)))
            r.witness = "antisymmetry fails for P = " + to_text(p) + ", Q = " + to_text(q);
        else if (!pq.is_zero()) {
            const Bidegree b = bidegree(pq), bp = bidegree(p), bq = bidegree(q);
            if (b.i != bp.i + bq.i || b.j != bp.j + bq.j)
                r.witness = "bidegree not additive for P = " + to_text(p) + ", Q = " + to_text(q);
        }
        if (!r.ok())
            break;
        // [P,[Q,T]] = [[P,Q],T] + (-1)^{pq} [Q,[P,T]]
        const MultiVector lhs = schouten_bracket(p, schouten_bracket(q, t));
        const MultiVector rhs = schouten_bracket(pq, t) + schouten_bracket(q, schouten_bracket(p, t)) * from_int(sign(dp * dq));
        if (lhs != rhs)
            r.witness = "Jacobi fails for P = " + to_text(p) + ", Q = " + to_text(q) + ", T = " + to_text(t);
    }
    return r;
}

/// Psi-structure report as a check result (violations become the witness).
inline CheckResult check_psi_structure(int n, int w)
{
    const auto rep = verify_psi_structure(n, w);
    CheckResult r{rep.words_checked, std::nullopt};
    if (!rep.ok())
        r.witness = rep.violations.front().word + ": " + rep.violations.front().detail;
    return r;
}

}  // namespace schouten
