#pragma once

// Polynomial multivector fields on R^n with rational coefficients.
//
// A generator x^beta d_alpha is stored as a MultiIndex (exponents) and a DirectionSet
// (bitmask of the directions 1..n). Multivectors are finite sums of generators kept in a
// normalized term list: sorted by (alpha, beta) lexicographically, like terms merged,
// zero terms dropped.
//
// The Schouten bracket is computed on generators with the odd-variable formula
//
//   [P, Q] = sum_i (P <d/dxi_i)(d/dx_i Q) - (d/dx_i P)(d/dxi_i> Q)
//
// (right xi-derivative on P, left xi-derivative on Q). It restricts to the Lie bracket on
// vector fields, gives [X, f] = X(f), is graded antisymmetric
// [P, Q] = (-1)^(1 + (p-1)(q-1)) [Q, P] and satisfies
// [P, Q ^ R] = [P, Q] ^ R + (-1)^((p-1) q) Q ^ [P, R].

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "schouten/errors.hpp"
#include "schouten/rational.hpp"

namespace schouten {

inline constexpr int kMaxDim = 16;
inline constexpr int kMaxExponent = 255;

/// Exponent vector beta = (b_1, ..., b_n).
class MultiIndex {
public:
    MultiIndex() = default;

    explicit MultiIndex(int n) : n_(check_dim(n)) {}

    MultiIndex(std::initializer_list<int> exps) : MultiIndex(std::span<const int>(exps.begin(), exps.size())) {}

    explicit MultiIndex(std::span<const int> exps) : n_(check_dim(static_cast<int>(exps.size())))
    {
        for (int k = 0; k < n_; ++k)
            set(k, exps[static_cast<std::size_t>(k)]);
    }

    int dim() const { return n_; }
    int degree() const { return degree_; }

    /// 0-based access.
    int operator[](int k) const { return e_[static_cast<std::size_t>(k)]; }

    void set(int k, int value)
    {
        if (value < 0 || value > kMaxExponent)
            throw std::out_of_range("exponent " + std::to_string(value) + " outside [0, 255]");
        degree_ = static_cast<std::uint16_t>(degree_ - e_[static_cast<std::size_t>(k)] + value);
        e_[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(value);
    }

    void bump(int k, int delta) { set(k, (*this)[k] + delta); }

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

    /// Lexicographic on the exponent list.
    friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b)
    {
        if (auto c = a.n_ <=> b.n_; c != 0)
            return c;
        for (int k = 0; k < a.n_; ++k)
            if (auto c = a[k] <=> b[k]; c != 0)
                return c;
        return std::strong_ordering::equal;
    }

    std::size_t hash() const
    {
        std::size_t h = n_;
        for (int k = 0; k < n_; ++k)
            h = h * 131 + e_[static_cast<std::size_t>(k)];
        return h;
    }

private:
    static std::uint8_t check_dim(int n)
    {
        if (n < 1 || n > kMaxDim)
            throw std::out_of_range("ambient dimension " + std::to_string(n) + " outside [1, 16]");
        return static_cast<std::uint8_t>(n);
    }

    std::uint8_t n_ = 0;
    std::uint16_t degree_ = 0;
    std::array<std::uint8_t, kMaxDim> e_{};
};

/// Strictly increasing set of directions alpha = (a_1 < ... < a_m), stored as a bitmask
/// (bit k-1 for direction k).
class DirectionSet {
public:
    constexpr DirectionSet() = default;

    DirectionSet(std::initializer_list<int> dirs) : DirectionSet(std::span<const int>(dirs.begin(), dirs.size())) {}

    /// Entries must be strictly increasing and >= 1.
    explicit DirectionSet(std::span<const int> dirs)
    {
        int prev = 0;
        for (int d : dirs) {
            if (d <= prev || d > kMaxDim)
                throw std::invalid_argument("direction list must be strictly increasing within 1..16");
            mask_ |= bit(d);
            prev = d;
        }
    }

    static constexpr DirectionSet from_mask(std::uint32_t mask)
    {
        DirectionSet s;
        s.mask_ = mask;
        return s;
    }

    static constexpr std::uint32_t bit(int direction) { return std::uint32_t{1} << (direction - 1); }

    constexpr std::uint32_t mask() const { return mask_; }
    constexpr int size() const { return std::popcount(mask_); }
    constexpr bool empty() const { return mask_ == 0; }
    constexpr bool contains(int direction) const { return (mask_ & bit(direction)) != 0; }
    constexpr int max_direction() const { return mask_ == 0 ? 0 : 32 - std::countl_zero(mask_); }

    /// Number of elements strictly below `direction`.
    constexpr int count_below(int direction) const { return std::popcount(mask_ & (bit(direction) - 1)); }
    constexpr int count_above(int direction) const { return std::popcount(mask_ & ~((bit(direction) << 1) - 1)); }

    constexpr DirectionSet without(int direction) const { return from_mask(mask_ & ~bit(direction)); }

    std::vector<int> indices() const
    {
        std::vector<int> out;
        for (std::uint32_t m = mask_; m != 0; m &= m - 1)
            out.push_back(std::countr_zero(m) + 1);
        return out;
    }

    friend constexpr bool operator==(DirectionSet, DirectionSet) = default;

    /// Lexicographic comparison of the increasing index lists (a proper prefix sorts first).
    friend constexpr std::strong_ordering operator<=>(DirectionSet a, DirectionSet b)
    {
        std::uint32_t x = a.mask_, y = b.mask_;
        while (x != 0 && y != 0) {
            const int dx = std::countr_zero(x), dy = std::countr_zero(y);
            if (dx != dy)
                return dx <=> dy;
            x &= x - 1;
            y &= y - 1;
        }
        return (x != 0) <=> (y != 0);
    }

private:
    std::uint32_t mask_ = 0;
};

/// Sign of xi_S ^ xi_T -> xi_{S u T}; zero when S and T overlap.
inline int merge_sign(DirectionSet s, DirectionSet t)
{
    if ((s.mask() & t.mask()) != 0)
        return 0;
    int inversions = 0;
    for (std::uint32_t m = t.mask(); m != 0; m &= m - 1)
        inversions += s.count_above(std::countr_zero(m) + 1);
    return (inversions & 1) ? -1 : 1;
}

/// Unit-coefficient monomial multivector x^beta d_alpha. Its g-degree is |alpha| - 1 and
/// its bidegree is (|alpha| - 1, |beta| - 1).
struct Generator {
    MultiIndex beta;
    DirectionSet alpha;

    int dim() const { return beta.dim(); }
    int g_degree() const { return alpha.size() - 1; }
    int poly_degree() const { return beta.degree(); }
    bool odd() const { return (g_degree() & 1) != 0; }

    friend bool operator==(const Generator&, const Generator&) = default;

    /// Canonical factor order for wedge words: |alpha| asc, |beta| asc, then alpha and beta
    /// lexicographically.
    friend std::strong_ordering operator<=>(const Generator& a, const Generator& b)
    {
        if (auto c = a.alpha.size() <=> b.alpha.size(); c != 0)
            return c;
        if (auto c = a.beta.degree() <=> b.beta.degree(); c != 0)
            return c;
        if (auto c = a.alpha <=> b.alpha; c != 0)
            return c;
        return a.beta <=> b.beta;
    }

    std::size_t hash() const { return beta.hash() * 65599 + alpha.mask(); }
};

struct GeneratorHash {
    std::size_t operator()(const Generator& g) const { return g.hash(); }
};

/// Term order of normalized multivectors: (alpha, beta) lexicographically.
inline bool term_order_less(const Generator& a, const Generator& b)
{
    if (auto c = a.alpha <=> b.alpha; c != 0)
        return c < 0;
    return a.beta < b.beta;
}

/// One term c * x^beta d_alpha.
struct MonomialMV {
    Rational coeff;
    Generator gen;

    const MultiIndex& beta() const { return gen.beta; }
    DirectionSet alpha() const { return gen.alpha; }

    friend bool operator==(const MonomialMV&, const MonomialMV&) = default;
};

/// Integer-coefficient expansion of a product or bracket of generators.
using GeneratorTerms = std::vector<std::pair<Generator, std::int64_t>>;

/// x^b d_S ^ x^c d_T, or nullopt-like {0, ...} when the directions overlap.
inline std::pair<int, Generator> wedge_generators(const Generator& p, const Generator& q)
{
    const int sign = merge_sign(p.alpha, q.alpha);
    if (sign == 0)
        return {0, p};
    Generator out{p.beta, DirectionSet::from_mask(p.alpha.mask() | q.alpha.mask())};
    for (int k = 0; k < p.dim(); ++k)
        out.beta.bump(k, q.beta[k]);
    return {sign, out};
}

/// Schouten bracket of two generators, as a list of integer-weighted generators (possibly
/// with repeats; callers merge). Either argument may have empty alpha (a function).
inline GeneratorTerms bracket_generators(const Generator& p, const Generator& q)
{
    if (p.dim() != q.dim())
        throw DimensionMismatch("bracket of multivectors on R^" + std::to_string(p.dim()) + " and R^"
                                + std::to_string(q.dim()));
    GeneratorTerms out;
    const int n = p.dim();
    // (P <d/dxi_i)(d/dx_i Q)
    for (int i = 1; i <= n; ++i) {
        if (!p.alpha.contains(i) || q.beta[i - 1] == 0)
            continue;
        const DirectionSet rest = p.alpha.without(i);
        const int sign = merge_sign(rest, q.alpha);
        if (sign == 0)
            continue;
        const int right = (p.alpha.count_above(i) & 1) ? -1 : 1;
        Generator g{p.beta, DirectionSet::from_mask(rest.mask() | q.alpha.mask())};
        for (int k = 0; k < n; ++k)
            g.beta.bump(k, q.beta[k]);
        g.beta.bump(i - 1, -1);
        out.emplace_back(g, std::int64_t{sign} * right * q.beta[i - 1]);
    }
    // - (d/dx_i P)(d/dxi_i> Q)
    for (int i = 1; i <= n; ++i) {
        if (!q.alpha.contains(i) || p.beta[i - 1] == 0)
            continue;
        const DirectionSet rest = q.alpha.without(i);
        const int sign = merge_sign(p.alpha, rest);
        if (sign == 0)
            continue;
        const int left = (q.alpha.count_below(i) & 1) ? -1 : 1;
        Generator g{p.beta, DirectionSet::from_mask(p.alpha.mask() | rest.mask())};
        for (int k = 0; k < n; ++k)
            g.beta.bump(k, q.beta[k]);
        g.beta.bump(i - 1, -1);
        out.emplace_back(g, -std::int64_t{sign} * left * p.beta[i - 1]);
    }
    return out;
}

struct Bidegree {
    int i = 0;  // |alpha| - 1
    int j = 0;  // |beta| - 1
    friend bool operator==(const Bidegree&, const Bidegree&) = default;
};

/// Finite sum of monomial multivector fields on R^n, normalized.
class MultiVector {
public:
    explicit MultiVector(int n) : n_(n)
    {
        if (n < 1 || n > kMaxDim)
            throw std::out_of_range("ambient dimension " + std::to_string(n) + " outside [1, 16]");
    }

    /// Normalizes an arbitrary term list (merges, drops zeros, sorts).
    MultiVector(int n, std::vector<MonomialMV> terms) : MultiVector(n)
    {
        for (const auto& t : terms)
            check(t.gen);
        terms_ = std::move(terms);
        normalize();
    }

    static MultiVector monomial(const Rational& c, const MultiIndex& beta, DirectionSet alpha)
    {
        if (alpha.empty())
            throw std::invalid_argument("a multivector generator needs at least one direction");
        if (alpha.max_direction() > beta.dim())
            throw std::invalid_argument("direction exceeds ambient dimension");
        return MultiVector(beta.dim(), {MonomialMV{c, Generator{beta, alpha}}});
    }

    static MultiVector generator(const Generator& g) { return monomial(Rational(1), g.beta, g.alpha); }

    int dim() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<MonomialMV>& terms() const& { return terms_; }
    std::vector<MonomialMV> terms() && { return std::move(terms_); }

    MultiVector& operator+=(const MultiVector& other)
    {
        require_same_dim(other);
        terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
        normalize();
        return *this;
    }

    MultiVector& operator-=(const MultiVector& other) { return *this += other * Rational(-1); }

    friend MultiVector operator+(MultiVector a, const MultiVector& b) { return a += b; }
    friend MultiVector operator-(MultiVector a, const MultiVector& b) { return a -= b; }

    friend MultiVector operator*(MultiVector a, const Rational& c)
    {
        if (c == 0)
            return MultiVector(a.n_);
        for (auto& t : a.terms_)
            t.coeff *= c;
        return a;
    }
    friend MultiVector operator*(const Rational& c, MultiVector a) { return std::move(a) * c; }

    friend bool operator==(const MultiVector&, const MultiVector&) = default;

    void require_same_dim(const MultiVector& other) const
    {
        if (other.n_ != n_)
            throw DimensionMismatch("multivectors on R^" + std::to_string(n_) + " and R^" + std::to_string(other.n_));
    }

private:
    void check(const Generator& g) const
    {
        if (g.dim() != n_)
            throw DimensionMismatch("term dimension differs from multivector dimension");
        if (g.alpha.empty())
            throw std::invalid_argument("a multivector generator needs at least one direction");
        if (g.alpha.max_direction() > n_)
            throw std::invalid_argument("direction exceeds ambient dimension");
    }

    void normalize()
    {
        std::sort(terms_.begin(), terms_.end(),
                  [](const MonomialMV& a, const MonomialMV& b) { return term_order_less(a.gen, b.gen); });
        std::vector<MonomialMV> merged;
        merged.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!merged.empty() && merged.back().gen == t.gen)
                merged.back().coeff += t.coeff;
            else
                merged.push_back(std::move(t));
        }
        std::erase_if(merged, [](const MonomialMV& t) { return t.coeff == 0; });
        terms_ = std::move(merged);
    }

    int n_;
    std::vector<MonomialMV> terms_;
};

/// Interior wedge product of multivector fields.
inline MultiVector wedge_mv(const MultiVector& a, const MultiVector& b)
{
    a.require_same_dim(b);
    std::vector<MonomialMV> out;
    for (const auto& s : a.terms())
        for (const auto& t : b.terms()) {
            auto [sign, g] = wedge_generators(s.gen, t.gen);
            if (sign != 0)
                out.push_back({s.coeff * t.coeff * sign, g});
        }
    return MultiVector(a.dim(), std::move(out));
}

/// Schouten bracket, extended bilinearly over the terms of both arguments.
inline MultiVector schouten_bracket(const MultiVector& a, const MultiVector& b)
{
    a.require_same_dim(b);
    std::vector<MonomialMV> out;
    for (const auto& s : a.terms())
        for (const auto& t : b.terms())
            for (const auto& [g, c] : bracket_generators(s.gen, t.gen))
                out.push_back({s.coeff * t.coeff * from_int(c), g});
    return MultiVector(a.dim(), std::move(out));
}

/// (|alpha| - 1, |beta| - 1) of a nonzero multivector homogeneous in both degrees.
inline Bidegree bidegree(const MultiVector& a)
{
    if (a.is_zero())
        throw std::invalid_argument("bidegree of the zero multivector");
    const auto& first = a.terms().front().gen;
    const Bidegree out{first.alpha.size() - 1, first.beta.degree() - 1};
    for (const auto& t : a.terms())
        if (t.gen.alpha.size() != first.alpha.size() || t.gen.beta.degree() != first.beta.degree())
            throw std::invalid_argument("multivector is not homogeneous; split it into bidegree parts first");
    return out;
}

/// x_l * A for a 1-based coordinate index l.
inline MultiVector scale_by_coordinate(int l, const MultiVector& a)
{
    if (l < 1 || l > a.dim())
        throw std::out_of_range("coordinate index " + std::to_string(l) + " outside 1.." + std::to_string(a.dim()));
    std::vector<MonomialMV> out = a.terms();
    for (auto& t : out)
        t.gen.beta.bump(l - 1, 1);
    return MultiVector(a.dim(), std::move(out));
}

// ---------------------------------------------------------------------------------------
// Text form: `c * x[b1,...,bn] d[a1,...,am]`, c written as p/q.

namespace detail {

inline std::string join_ints(const std::vector<int>& v)
{
    std::string out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k)
            out += ',';
        out += std::to_string(v[k]);
    }
    return out;
}

inline std::vector<int> parse_int_list(std::string_view body)
{
    std::vector<int> out;
    body = trim(body);
    if (body.empty())
        return out;
    std::size_t pos = 0;
    while (pos <= body.size()) {
        const auto comma = body.find(',', pos);
        const auto item = trim(body.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        int value = 0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
            throw ParseError("malformed integer list '" + std::string(body) + "'");
        out.push_back(value);
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

/// Extracts the body of `tag[...]` starting at or after `pos`.
inline std::string_view bracket_body(std::string_view text, char tag, std::size_t& pos)
{
    const auto open = text.find(std::string{tag} + "[", pos);
    const auto close = open == std::string_view::npos ? open : text.find(']', open);
    if (open == std::string_view::npos || close == std::string_view::npos)
        throw ParseError(std::string("missing ") + tag + "[...] in '" + std::string(text) + "'");
    pos = close + 1;
    return text.substr(open + 2, close - open - 2);
}

}  // namespace detail

/// `x[b1,...,bn] d[a1,...,am]` (no coefficient).
inline std::string to_text(const Generator& g)
{
    std::vector<int> b(static_cast<std::size_t>(g.dim()));
    for (int k = 0; k < g.dim(); ++k)
        b[static_cast<std::size_t>(k)] = g.beta[k];
    return "x[" + detail::join_ints(b) + "] d[" + detail::join_ints(g.alpha.indices()) + "]";
}

inline std::string to_text(const MonomialMV& m) { return to_text(m.coeff) + " * " + to_text(m.gen); }

/// Monomials joined by " + "; the zero multivector prints as "0".
inline std::string to_text(const MultiVector& v)
{
    if (v.is_zero())
        return "0";
    std::string out;
    for (const auto& t : v.terms()) {
        if (!out.empty())
            out += " + ";
        out += to_text(t);
    }
    return out;
}

/// Parses `x[...] d[...]` with nothing else around it.
inline Generator parse_generator(std::string_view text)
{
    text = detail::trim(text);
    std::size_t pos = 0;
    const auto xb = detail::bracket_body(text, 'x', pos);
    if (detail::trim(text.substr(0, text.find("x["))).size() != 0)
        throw ParseError("unexpected text before x[...] in '" + std::string(text) + "'");
    const auto db = detail::bracket_body(text, 'd', pos);
    if (!detail::trim(text.substr(pos)).empty())
        throw ParseError("trailing text in '" + std::string(text) + "'");
    const auto b = detail::parse_int_list(xb);
    const auto a = detail::parse_int_list(db);
    if (b.empty())
        throw ParseError("empty exponent list in '" + std::string(text) + "'");
    if (a.empty())
        throw ParseError("empty direction list in '" + std::string(text) + "'");
    for (int e : b)
        if (e < 0 || e > kMaxExponent)
            throw ParseError("exponent out of range in '" + std::string(text) + "'");
    Generator g;
    try {
        g = Generator{MultiIndex(std::span<const int>(b)), DirectionSet(std::span<const int>(a))};
    } catch (const std::exception& e) {
        throw ParseError(std::string(e.what()) + " in '" + std::string(text) + "'");
    }
    if (g.alpha.max_direction() > g.dim())
        throw ParseError("direction exceeds dimension in '" + std::string(text) + "'");
    return g;
}

/// Parses `c * x[...] d[...]`.
inline MonomialMV parse_monomial(std::string_view text)
{
    const auto star = text.find('*');
    if (star == std::string_view::npos)
        throw ParseError("expected 'c * x[...] d[...]', got '" + std::string(text) + "'");
    return {parse_rational(text.substr(0, star)), parse_generator(text.substr(star + 1))};
}

/// Parses the " + "-joined form produced by to_text (or "0" with an explicit dimension).
inline MultiVector parse_multivector(std::string_view text, int n_if_zero = 0)
{
    text = detail::trim(text);
    if (text == "0") {
        if (n_if_zero < 1)
            throw ParseError("zero multivector needs an explicit dimension");
        return MultiVector(n_if_zero);
    }
    std::vector<MonomialMV> terms;
    std::size_t pos = 0;
    while (true) {
        const auto sep = text.find(" + ", pos);
        terms.push_back(parse_monomial(text.substr(pos, sep == std::string_view::npos ? sep : sep - pos)));
        if (sep == std::string_view::npos)
            break;
        pos = sep + 3;
    }
    const int n = terms.front().gen.dim();
    for (const auto& t : terms)
        if (t.gen.dim() != n)
            throw ParseError("monomials with different dimensions in one multivector");
    return MultiVector(n, std::move(terms));
}

}  // namespace schouten
