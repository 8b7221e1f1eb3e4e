#pragma once

// Chain spaces C_m^{(w,h)} and their ordered bases.
//
// g_{i,j} is spanned by the generators x^beta d_alpha with |alpha| = i + 1 and
// |beta| = j + 1. A basis word of C_m^{(w,h)} is a multiset of m generators with
// sum i = w and sum j = h, where even-g-degree generators appear at most once.
// Words are listed in increasing word order (factor lists compared lexicographically
// under the canonical factor order), so boundary matrices are reproducible bit for bit.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "schouten/chain.hpp"
#include "schouten/errors.hpp"
#include "schouten/multivector.hpp"

namespace schouten {

/// All x^beta d_alpha with |alpha| = a and |beta| = b on R^n, in canonical factor order.
inline std::vector<Generator> generators_of(int n, int a, int b)
{
    std::vector<Generator> out;
    if (a < 1 || a > n || b < 0)
        return out;
    std::vector<MultiIndex> betas;
    MultiIndex beta(n);
    std::function<void(int, int)> fill = [&](int k, int left) {
        if (k == n - 1) {
            beta.set(k, left);
            betas.push_back(beta);
            return;
        }
        for (int e = left; e >= 0; --e) {
            beta.set(k, e);
            fill(k + 1, left - e);
        }
        beta.set(k, 0);
    };
    fill(0, b);
    std::sort(betas.begin(), betas.end());

    std::vector<DirectionSet> alphas;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask)
        if (std::popcount(mask) == a)
            alphas.push_back(DirectionSet::from_mask(mask));
    std::sort(alphas.begin(), alphas.end());

    for (auto alpha : alphas)
        for (const auto& bt : betas)
            out.push_back(Generator{bt, alpha});
    return out;
}

/// C(n, k) for small arguments.
inline BigInt binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

/// dim g_{i,j} = C(n, i+1) * C(j+n, n-1).
inline BigInt generator_count(int n, int i, int j)
{
    if (i < 0 || i + 1 > n || j < -1)
        return 0;
    return binomial(n, i + 1) * binomial(j + n, n - 1);
}

namespace detail {

struct TypeSlot {
    int i;
    int j;
};

/// Generator types (i, j) that can occur in C_m^{(w,h)}, in canonical order.
inline std::vector<TypeSlot> admissible_types(int n, int m, int w, int h)
{
    std::vector<TypeSlot> out;
    for (int i = 0; i <= std::min(w, n - 1); ++i)
        for (int j = -1; j <= h + (m - 1); ++j)
            out.push_back({i, j});
    return out;
}

}  // namespace detail

namespace detail {

/// Number of words made of types t.. with k factors and residual weights (rw, rh); memoized.
class WordCounter {
public:
    WordCounter(int n, std::vector<TypeSlot> types) : n_(n), types_(std::move(types)) {}

    const std::vector<TypeSlot>& types() const { return types_; }

    BigInt operator()(std::size_t t, int k, int rw, int rh)
    {
        if (k == 0)
            return (rw == 0 && rh == 0) ? 1 : 0;
        if (t == types_.size() || rw < 0 || rh < -k)
            return 0;
        const std::uint64_t key = (std::uint64_t(t) << 48) ^ (std::uint64_t(k) << 32) ^ (std::uint64_t(rw & 0xffff) << 16)
                                  ^ std::uint64_t(rh & 0xffff);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        const auto [i, j] = types_[t];
        const BigInt g = generator_count(n_, i, j);
        BigInt total = 0;
        for (int c = 0; c <= k && c * i <= rw; ++c) {
            BigInt ways = (i % 2 == 0) ? binomial(g.get_si(), c) : binomial(g.get_si() + c - 1, c);
            if (ways == 0)
                break;
            total += ways * (*this)(t + 1, k - c, rw - c * i, rh - c * j);
        }
        memo_.emplace(key, total);
        return total;
    }

private:
    int n_;
    std::vector<TypeSlot> types_;
    std::unordered_map<std::uint64_t, BigInt> memo_;
};

}  // namespace detail

/// dim C_m^{(w,h)} by counting multisets type by type (binomials, no enumeration).
/// m = 0 is the ground field: dimension 1 in block (0,0), else 0.
inline BigInt chain_dimension(int n, int m, int w, int h)
{
    if (n < 1)
        throw std::invalid_argument("ambient dimension must be >= 1");
    if (m < 0)
        return 0;
    if (m == 0)
        return (w == 0 && h == 0) ? 1 : 0;
    detail::WordCounter count(n, detail::admissible_types(n, m, w, h));
    return count(0, m, w, h);
}

/// Smallest arity from which every C_m^{(w,h)} is provably empty. At most w factors have
/// i >= 1 (each with j >= -1); the rest are distinct vector fields, whose j-sum is at least
/// the sum over the lowest-degree ones, and that bound is nondecreasing once m - w >= n.
inline int emptiness_bound(int n, int w, int h)
{
    auto min_vector_field_sum = [n](int k) {
        long sum = 0;
        for (int j = -1; k > 0; ++j) {
            const long avail = generator_count(n, 0, j).get_si();
            const long take = std::min<long>(avail, k);
            sum += take * j;
            k -= static_cast<int>(take);
        }
        return sum;
    };
    for (int m = w + n;; ++m)
        if (min_vector_field_sum(m - w) - w > h)
            return m;
}

/// Largest m with C_m^{(w,h)} nonzero (0 when only the ground field C_0 or nothing is left).
inline int max_arity(int n, int w, int h)
{
    for (int m = emptiness_bound(n, w, h) - 1; m >= 1; --m)
        if (chain_dimension(n, m, w, h) != 0)
            return m;
    return 0;
}

/// Ordered basis of C_m^{(w,h)} with a word -> position map.
class BasisIndex {
public:
    BasisIndex(int n, WeightSignature signature, std::vector<WedgeWord> words)
        : n_(n), signature_(signature), words_(std::move(words))
    {
        index_.reserve(words_.size());
        for (std::size_t k = 0; k < words_.size(); ++k) {
            if (weight_signature(words_[k]) != signature_)
                throw WeightMismatch("basis word " + to_text(words_[k]) + " has the wrong weight");
            if (!index_.emplace(words_[k], k).second)
                throw std::invalid_argument("duplicate basis word " + to_text(words_[k]));
        }
    }

    int dim() const { return n_; }
    const WeightSignature& signature() const { return signature_; }
    std::size_t size() const { return words_.size(); }
    bool empty() const { return words_.empty(); }
    const std::vector<WedgeWord>& words() const& { return words_; }
    std::vector<WedgeWord> words() && { return std::move(words_); }
    const WedgeWord& operator[](std::size_t k) const { return words_[k]; }

    std::optional<std::size_t> find(const WedgeWord& w) const
    {
        auto it = index_.find(w);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    /// Same words in the opposite order (used to check order independence).
    BasisIndex reversed() const
    {
        return BasisIndex(n_, signature_, std::vector<WedgeWord>(words_.rbegin(), words_.rend()));
    }

private:
    int n_;
    WeightSignature signature_;
    std::vector<WedgeWord> words_;
    std::unordered_map<WedgeWord, std::size_t, WordHash> index_;
};

/// Enumerates the canonical words of C_m^{(w,h)} (possibly none).
inline BasisIndex enumerate_basis(int n, int m, int w, int h)
{
    if (n < 1 || n > kMaxDim)
        throw std::invalid_argument("ambient dimension must be in 1..16");
    if (m < 1)
        throw std::invalid_argument("arity must be >= 1");
    const auto types = detail::admissible_types(n, m, w, h);
    detail::WordCounter count(n, types);
    std::vector<std::vector<Generator>> gens(types.size());
    for (std::size_t t = 0; t < types.size(); ++t)
        gens[t] = generators_of(n, types[t].i + 1, types[t].j + 1);

    std::vector<WedgeWord> words;
    std::vector<Generator> prefix;
    prefix.reserve(static_cast<std::size_t>(m));

    // picks `c` generators of type t starting at list position `from` (repeats allowed for odd)
    std::function<void(std::size_t, int, int, int)> by_type;
    std::function<void(std::size_t, int, std::size_t, int, int, int)> pick = [&](std::size_t t, int c, std::size_t from,
                                                                                  int k, int rw, int rh) {
        if (c == 0) {
            by_type(t + 1, k, rw, rh);
            return;
        }
        const bool odd = (types[t].i % 2) == 1;
        for (std::size_t g = from; g < gens[t].size(); ++g) {
            prefix.push_back(gens[t][g]);
            pick(t, c - 1, odd ? g : g + 1, k, rw, rh);
            prefix.pop_back();
        }
    };
    by_type = [&](std::size_t t, int k, int rw, int rh) {
        if (k == 0) {
            if (rw == 0 && rh == 0) {
                auto sw = canonicalize_word(prefix);
                if (!sw || sw->sign != 1)
                    throw InvariantViolation("enumerated word is not canonical");
                words.push_back(std::move(sw->word));
            }
            return;
        }
        if (count(t, k, rw, rh) == 0)  // no completion from here
            return;
        const auto [i, j] = types[t];
        for (int c = 0; c <= k && c * i <= rw; ++c) {
            if (c > 0 && i % 2 == 0 && static_cast<std::size_t>(c) > gens[t].size())
                break;
            if (c > 0 && gens[t].empty())
                break;
            pick(t, c, 0, k - c, rw - c * i, rh - c * j);
        }
    };
    by_type(0, m, w, h);
    std::sort(words.begin(), words.end());
    return BasisIndex(n, WeightSignature{m, w, h}, std::move(words));
}

/// Coordinates of c in the basis; throws WeightMismatch for a word outside it.
inline std::vector<Rational> chain_to_vector(const Chain& c, const BasisIndex& basis)
{
    std::vector<Rational> v(basis.size());
    for (const auto& [w, coeff] : c.terms()) {
        const auto k = basis.find(w);
        if (!k)
            throw WeightMismatch("word " + to_text(w) + " is not in the basis of the requested block");
        v[*k] = coeff;
    }
    return v;
}

inline Chain vector_to_chain(const std::vector<Rational>& v, const BasisIndex& basis)
{
    if (v.size() != basis.size())
        throw std::invalid_argument("coordinate vector length differs from basis size");
    Chain out;
    for (std::size_t k = 0; k < v.size(); ++k)
        out.add(basis[k], v[k]);
    return out;
}

}  // namespace schouten
