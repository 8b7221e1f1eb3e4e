#pragma once

#include <stdexcept>
#include <string>

namespace schouten {

/// Operands live on different ambient dimensions n.
class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Text or structured input could not be parsed.
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A chain word does not belong to the basis or weight block it was expected in.
class WeightMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An internal identity guaranteed by the mathematics failed (weight escape under the
/// boundary, a zero constant term in an annihilator, a certificate that does not verify).
/// Always a bug; never caught by library code.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace schouten
