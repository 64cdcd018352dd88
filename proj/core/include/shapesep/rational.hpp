#ifndef SHAPESEP_RATIONAL_HPP
#define SHAPESEP_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "shapesep/errors.hpp"

namespace shapesep {

/// Exact arbitrary-precision rational. All box-backend arithmetic uses this
/// type; it never rounds and its comparisons are exact.
using Rational = mpq_class;

/// Exact conversion. Every finite IEEE double is a dyadic rational.
Rational rat_from_double(double x);

double rat_to_double(const Rational& q);

/// Parses "p/q" or a plain integer string.
Rational rat_from_string(const std::string& s);

/// Canonical "p/q" form ("p" when q == 1).
std::string rat_to_string(const Rational& q);

/// Decimal expansion with the given number of significant digits (CSV output).
std::string rat_to_decimal(const Rational& q, int significant_digits = 12);

inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// A number from either arithmetic backend: exact rational (boxes) or IEEE
/// double (polytopes). Mixed-backend arithmetic and comparisons promote to
/// double; rational-rational stays exact.
class Scalar {
public:
  Scalar() : v_(Rational(0)) {}
  Scalar(const Rational& q) : v_(q) {}
  Scalar(double x) : v_(x) {}
  Scalar(int x) : v_(Rational(x)) {}
  Scalar(long x) : v_(Rational(x)) {}

  bool is_exact() const { return std::holds_alternative<Rational>(v_); }
  const Rational& rational() const;
  double to_double() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  bool operator<(const Scalar& o) const;
  bool operator<=(const Scalar& o) const;
  bool operator>(const Scalar& o) const { return o < *this; }
  bool operator>=(const Scalar& o) const { return o <= *this; }

  std::string str() const;

private:
  std::variant<Rational, double> v_;
};

/// Positive infinity marker used by comparability scans (s* = infinity).
Scalar scalar_infinity();
bool scalar_is_infinite(const Scalar& s);

} // namespace shapesep

#endif
