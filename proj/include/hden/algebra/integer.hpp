#pragma once

#include <gmpxx.h>

#include <string>

namespace hden {

using Integer = mpz_class;
using Rational = mpq_class;

inline std::string to_string(const Integer& z) { return z.get_str(); }
inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Parses "a" or "a/b" with optional sign; throws InvalidArgument.
Rational parse_rational(const std::string& text);

}  // namespace hden
