#pragma once

// Seeded samplers for randomized checks. Everything goes through std::mt19937_64 so a
// seed reproduces the same samples with a given standard library.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "schouten/chain.hpp"
#include "schouten/multivector.hpp"

namespace schouten {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// Uniform in [lo, hi].
inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Random x^beta d_alpha on R^n with |beta| <= max_beta and min_alpha <= |alpha| <= n.
inline Generator random_generator(Rng& rng, int n, int max_beta = 4, int min_alpha = 1)
{
    MultiIndex beta(n);
    const int degree = uniform_int(rng, 0, max_beta);
    for (int k = 0; k < degree; ++k)
        beta.bump(uniform_int(rng, 0, n - 1), 1);
    const int size = uniform_int(rng, min_alpha, n);
    std::vector<int> dirs(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        dirs[static_cast<std::size_t>(k)] = k + 1;
    std::shuffle(dirs.begin(), dirs.end(), rng);
    dirs.resize(static_cast<std::size_t>(size));
    std::sort(dirs.begin(), dirs.end());
    return Generator{beta, DirectionSet(std::span<const int>(dirs))};
}

/// Nonzero integer in [-bound, bound].
inline Rational random_nonzero(Rng& rng, int bound = 5)
{
    int v = 0;
    while (v == 0)
        v = uniform_int(rng, -bound, bound);
    return from_int(v);
}

/// c x^beta d_alpha with a random nonzero integer coefficient.
inline MultiVector random_monomial(Rng& rng, int n, int max_beta = 4)
{
    const Generator g = random_generator(rng, n, max_beta);
    return MultiVector::monomial(random_nonzero(rng), g.beta, g.alpha);
}

/// Random combination of `terms` basis vectors (small integer coefficients) from a list.
inline std::vector<Rational> random_combination(Rng& rng, const std::vector<std::vector<Rational>>& vectors, int terms)
{
    if (vectors.empty())
        return {};
    std::vector<Rational> out(vectors.front().size());
    for (int t = 0; t < terms; ++t) {
        const auto& v = vectors[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(vectors.size()) - 1))];
        const Rational c = random_nonzero(rng, 3);
        for (std::size_t k = 0; k < v.size(); ++k)
            out[k] += c * v[k];
    }
    return out;
}

}  // namespace schouten
