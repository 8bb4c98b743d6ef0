#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace vsparse {

// Exact rational number. mpq_class keeps values canonical (reduced, positive
// denominator) after every arithmetic operation.
using Rational = mpq_class;

// Serializes as "num/den", including "/1" for integers.
std::string to_string(const Rational& value);

// Accepts "num/den" or a bare integer "num". Throws std::invalid_argument on
// malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }
inline bool is_positive(const Rational& value) { return sgn(value) > 0; }
inline bool is_negative(const Rational& value) { return sgn(value) < 0; }

}  // namespace vsparse
