#pragma once

#include <gmpxx.h>

#include <string>

namespace pfdkit {

/// Exact rational number, always kept in lowest terms with a positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

/// Renders as `p` or `p/q`.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

}  // namespace pfdkit
