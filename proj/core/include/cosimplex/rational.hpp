#pragma once

#include <gmpxx.h>

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

namespace cosimplex {

using Rational = mpq_class;

// Parses "p", "p/q", "-p/q" (whitespace-free). Throws InputError otherwise.
Rational parse_rational(std::string_view text);

// Canonical text: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

// Exact square root when q = r*r for a rational r >= 0.
std::optional<Rational> exact_sqrt(const Rational& q);

// Scalar field policy used by the templated linear algebra.
// Exact fields ignore the tolerance.
template <class T>
struct Field;

template <>
struct Field<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x, double /*tol*/) { return sgn(x) == 0; }
  static double magnitude(const Rational& x) { return std::fabs(x.get_d()); }
  static Rational from_rational(const Rational& x) { return x; }
  static double to_double(const Rational& x) { return x.get_d(); }
};

template <>
struct Field<double> {
  static constexpr bool exact = false;
  static bool is_zero(double x, double tol) { return std::fabs(x) <= tol; }
  static double magnitude(double x) { return std::fabs(x); }
  static double from_rational(const Rational& x) { return x.get_d(); }
  static double to_double(double x) { return x; }
};

// Default float tolerance; pinned by the acceptance suite.
inline constexpr double kDefaultTolerance = 1e-10;

}  // namespace cosimplex
