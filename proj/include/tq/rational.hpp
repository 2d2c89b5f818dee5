#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace tq {

/// Exact rational scalar backed by GMP.
using Rational = mpq_class;

/// Parses "a/b", "a" or a decimal literal such as "-0.125" exactly.
Rational parse_rational(std::string_view text);

/// Exact conversion; every finite double is a dyadic rational.
Rational rational_from_double(double value);

std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace tq
