#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace caustica {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q", an integer, or an exact decimal ("0.25", "-1.5e-2").
/// Throws Error(ParseError) on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when the denominator is 1).
std::string to_string(const Rational& q);

/// Square root when both numerator and denominator are perfect squares.
std::optional<Rational> exact_sqrt(const Rational& q);

/// exact_sqrt or Error(IrrationalResult) naming `what`.
Rational require_sqrt(const Rational& q, std::string_view what);

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double v) { return v; }

inline int sign(const Rational& q) { return sgn(q); }
inline int sign(double v) { return (v > 0) - (v < 0); }

}  // namespace caustica
