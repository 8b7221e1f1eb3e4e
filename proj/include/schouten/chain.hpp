#pragma once

// Chains: rational combinations of canonical super-wedge words A_1 ^^ ... ^^ A_m of
// generators. The chain space is the tensor algebra modulo X (x) Y + (-1)^{xy} Y (x) X, so
// swapping adjacent factors of g-degrees x, y multiplies by -(-1)^{xy}: odd factors commute,
// everything else anticommutes, and an even factor squares to zero.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "schouten/errors.hpp"
#include "schouten/multivector.hpp"
#include "schouten/rational.hpp"

namespace schouten {

/// Sign picked up by swapping adjacent factors of g-degree parities x and y.
constexpr int swap_sign(bool x_odd, bool y_odd) { return (x_odd && y_odd) ? 1 : -1; }

struct SignedWord;
std::optional<SignedWord> canonicalize_word(std::vector<Generator> raw);

/// Ordered list of generators in canonical factor order. Only canonicalize_word builds
/// non-empty words.
class WedgeWord {
public:
    WedgeWord() = default;

    std::span<const Generator> factors() const& { return factors_; }
    std::vector<Generator> factors() && { return std::move(factors_); }
    const Generator& operator[](std::size_t k) const { return factors_[k]; }
    std::size_t arity() const { return factors_.size(); }
    int dim() const { return factors_.empty() ? 0 : factors_.front().dim(); }

    friend bool operator==(const WedgeWord&, const WedgeWord&) = default;

    /// Arity first, then the factor lists lexicographically under the canonical factor order.
    friend std::strong_ordering operator<=>(const WedgeWord& a, const WedgeWord& b)
    {
        if (auto c = a.factors_.size() <=> b.factors_.size(); c != 0)
            return c;
        return std::lexicographical_compare_three_way(a.factors_.begin(), a.factors_.end(), b.factors_.begin(),
                                                      b.factors_.end());
    }

    std::size_t hash() const
    {
        std::size_t h = factors_.size();
        for (const auto& g : factors_)
            h = h * 1000003 ^ g.hash();
        return h;
    }

private:
    friend std::optional<SignedWord> canonicalize_word(std::vector<Generator> raw);

    explicit WedgeWord(std::vector<Generator> canonical) : factors_(std::move(canonical)) {}

    std::vector<Generator> factors_;
};

struct WordHash {
    std::size_t operator()(const WedgeWord& w) const { return w.hash(); }
};

struct SignedWord {
    int sign = 1;
    WedgeWord word;
};

/// Sorts the factors into canonical order, tracking the super-swap sign. Returns nullopt
/// when an even-g-degree factor repeats (the word is zero in the quotient).
inline std::optional<SignedWord> canonicalize_word(std::vector<Generator> raw)
{
    if (raw.empty())
        throw std::invalid_argument("cannot canonicalize an empty factor list");
    const int n = raw.front().dim();
    int sign = 1;
    // insertion sort: every step is an adjacent transposition
    for (std::size_t k = 1; k < raw.size(); ++k) {
        if (raw[k].dim() != n)
            throw DimensionMismatch("wedge word mixes ambient dimensions");
        for (std::size_t j = k; j > 0 && raw[j] < raw[j - 1]; --j) {
            sign *= swap_sign(raw[j].odd(), raw[j - 1].odd());
            std::swap(raw[j], raw[j - 1]);
        }
    }
    for (std::size_t k = 1; k < raw.size(); ++k)
        if (raw[k] == raw[k - 1] && !raw[k].odd())
            return std::nullopt;
    return SignedWord{sign, WedgeWord(std::move(raw))};
}

/// Finite linear combination of canonical words with coefficients in Scalar, stored sorted
/// by word order with no zero coefficients.
template <class Scalar>
class LinearCombination {
public:
    using Map = std::map<WedgeWord, Scalar>;

    LinearCombination() = default;

    static LinearCombination single(const WedgeWord& w, const Scalar& c = Scalar(1))
    {
        LinearCombination out;
        out.add(w, c);
        return out;
    }

    const Map& terms() const& { return terms_; }
    Map terms() && { return std::move(terms_); }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add(const WedgeWord& w, const Scalar& c)
    {
        if (c == 0)
            return;
        auto [it, inserted] = terms_.try_emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    /// Adds c * (raw factor list), canonicalizing first.
    void add_raw(std::vector<Generator> raw, const Scalar& c)
    {
        if (c == 0)
            return;
        if (auto sw = canonicalize_word(std::move(raw)))
            add(sw->word, sw->sign < 0 ? Scalar(-c) : c);
    }

    Scalar coefficient(const WedgeWord& w) const
    {
        auto it = terms_.find(w);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    LinearCombination& operator+=(const LinearCombination& other)
    {
        for (const auto& [w, c] : other.terms_)
            add(w, c);
        return *this;
    }

    LinearCombination& operator-=(const LinearCombination& other)
    {
        for (const auto& [w, c] : other.terms_)
            add(w, Scalar(-c));
        return *this;
    }

    LinearCombination& operator*=(const Scalar& s)
    {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [w, c] : terms_)
            c *= s;
        return *this;
    }

    friend LinearCombination operator+(LinearCombination a, const LinearCombination& b) { return a += b; }
    friend LinearCombination operator-(LinearCombination a, const LinearCombination& b) { return a -= b; }
    friend LinearCombination operator*(LinearCombination a, const Scalar& s) { return a *= s; }
    friend LinearCombination operator*(const Scalar& s, LinearCombination a) { return a *= s; }

    friend bool operator==(const LinearCombination&, const LinearCombination&) = default;

private:
    Map terms_;
};

using Chain = LinearCombination<Rational>;
using IntegerChain = LinearCombination<std::int64_t>;

inline Chain to_rational(const IntegerChain& c)
{
    Chain out;
    for (const auto& [w, v] : c.terms())
        out.add(w, from_int(v));
    return out;
}

/// Ambient dimension of a nonzero chain (0 for the zero chain).
template <class Scalar>
int chain_dim(const LinearCombination<Scalar>& c)
{
    return c.is_zero() ? 0 : c.terms().begin()->first.dim();
}

/// A multivector as a 1-chain.
inline Chain as_chain(const MultiVector& v)
{
    Chain out;
    for (const auto& t : v.terms())
        out.add_raw({t.gen}, t.coeff);
    return out;
}

/// Super-wedge product, bilinear: concatenates factor lists and canonicalizes.
inline Chain wedge_chain(const Chain& a, const Chain& b)
{
    const int na = chain_dim(a), nb = chain_dim(b);
    if (na != 0 && nb != 0 && na != nb)
        throw DimensionMismatch("wedge of chains on R^" + std::to_string(na) + " and R^" + std::to_string(nb));
    Chain out;
    for (const auto& [wa, ca] : a.terms())
        for (const auto& [wb, cb] : b.terms()) {
            std::vector<Generator> raw(wa.factors().begin(), wa.factors().end());
            raw.insert(raw.end(), wb.factors().begin(), wb.factors().end());
            out.add_raw(std::move(raw), ca * cb);
        }
    return out;
}

/// A_1 ^^ ... ^^ A_m of multivectors, expanded over their terms.
inline Chain wedge_of(std::span<const MultiVector> factors)
{
    if (factors.empty())
        throw std::invalid_argument("wedge of an empty list of multivectors");
    Chain out = as_chain(factors.front());
    for (std::size_t k = 1; k < factors.size(); ++k)
        out = wedge_chain(out, as_chain(factors[k]));
    return out;
}

struct WeightSignature {
    int m = 0;  // arity
    int w = 0;  // sum of (|alpha_s| - 1)
    int h = 0;  // sum of (|beta_s| - 1)
    friend bool operator==(const WeightSignature&, const WeightSignature&) = default;
};

inline WeightSignature weight_signature(const WedgeWord& word)
{
    WeightSignature s{static_cast<int>(word.arity()), 0, 0};
    for (const auto& g : word.factors()) {
        s.w += g.alpha.size() - 1;
        s.h += g.beta.degree() - 1;
    }
    return s;
}

// ---------------------------------------------------------------------------------------
// Text form of a chain term: `coeff | factor ; factor ; ...`.

inline std::string to_text(const WedgeWord& w)
{
    std::string out;
    for (std::size_t k = 0; k < w.arity(); ++k) {
        if (k)
            out += " ; ";
        out += to_text(w[k]);
    }
    return out;
}

/// One line per term, in canonical word order.
inline std::vector<std::string> to_text_lines(const Chain& c)
{
    std::vector<std::string> out;
    out.reserve(c.size());
    for (const auto& [w, v] : c.terms())
        out.push_back(to_text(v) + " | " + to_text(w));
    return out;
}

/// Parses one `coeff | factor ; ...` line and adds it to `into` (the factor list may be
/// given in any order; it is canonicalized).
inline void parse_chain_term(std::string_view line, Chain& into)
{
    const auto bar = line.find('|');
    if (bar == std::string_view::npos)
        throw ParseError("expected 'coeff | factor ; ...', got '" + std::string(line) + "'");
    const Rational c = parse_rational(line.substr(0, bar));
    std::vector<Generator> raw;
    std::string_view rest = line.substr(bar + 1);
    while (true) {
        const auto semi = rest.find(';');
        raw.push_back(parse_generator(rest.substr(0, semi)));
        if (semi == std::string_view::npos)
            break;
        rest.remove_prefix(semi + 1);
    }
    const int n = raw.front().dim();
    for (const auto& g : raw)
        if (g.dim() != n)
            throw ParseError("factors with different dimensions in '" + std::string(line) + "'");
    const int existing = chain_dim(into);
    if (existing != 0 && existing != n)
        throw ParseError("chain terms with different dimensions");
    into.add_raw(std::move(raw), c);
}

}  // namespace schouten
