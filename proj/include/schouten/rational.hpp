#pragma once

#include <gmpxx.h>

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "schouten/errors.hpp"

namespace schouten {

/// Arbitrary precision rational, always kept in lowest terms with q > 0.
using Rational = mpq_class;
using BigInt = mpz_class;

/// Canonical `p/q` text form. Integers are written with an explicit `/1`.
inline std::string to_text(const Rational& r)
{
    std::string out = r.get_num().get_str();
    out += '/';
    out += r.get_den().get_str();
    return out;
}

namespace detail {

inline std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

inline bool is_integer_literal(std::string_view s)
{
    if (!s.empty() && (s.front() == '-' || s.front() == '+'))
        s.remove_prefix(1);
    if (s.empty())
        return false;
    for (char c : s)
        if (c < '0' || c > '9')
            return false;
    return true;
}

}  // namespace detail

/// Parses `p/q` or a bare integer `p`. Rejects q = 0 and anything else.
inline Rational parse_rational(std::string_view text)
{
    text = detail::trim(text);
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!detail::is_integer_literal(num) || !detail::is_integer_literal(den) || den.front() == '-' || den.front() == '+')
        throw ParseError("malformed rational '" + std::string(text) + "'");
    std::string n(num.front() == '+' ? num.substr(1) : num);
    BigInt p(n, 10), q(std::string(den), 10);
    if (q == 0)
        throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

/// p/q in lowest terms; mpq_class(p, q) alone leaves the fraction unreduced.
inline Rational make_rational(long p, long q)
{
    if (q == 0)
        throw std::invalid_argument("zero denominator");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

inline Rational from_int(std::int64_t v)
{
    static_assert(sizeof(long) == sizeof(std::int64_t), "LP64 target expected");
    return Rational(static_cast<long>(v));
}

}  // namespace schouten
