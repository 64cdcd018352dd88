#include "shapesep/rational.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace shapesep {

Rational rat_from_double(double x) {
  if (!std::isfinite(x)) throw InvalidParameterError("non-finite double has no rational value");
  Rational q;
  mpq_set_d(q.get_mpq_t(), x);
  q.canonicalize();
  return q;
}

double rat_to_double(const Rational& q) { return q.get_d(); }

Rational rat_from_string(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw InvalidParameterError("unparsable rational: '" + s + "'");
  if (q.get_den() == 0) throw InvalidParameterError("zero denominator: '" + s + "'");
  q.canonicalize();
  return q;
}

std::string rat_to_string(const Rational& q) { return q.get_str(); }

std::string rat_to_decimal(const Rational& q, int significant_digits) {
  if (q == 0) return "0";
  mpf_class f(q, 64 + static_cast<int>(3.33 * significant_digits));
  mp_exp_t exp10 = 0;
  std::string digits = f.get_str(exp10, 10, significant_digits);
  bool neg = !digits.empty() && digits[0] == '-';
  if (neg) digits = digits.substr(1);
  std::ostringstream out;
  if (neg) out << '-';
  if (exp10 <= 0) {
    out << "0.";
    for (mp_exp_t i = 0; i < -exp10; ++i) out << '0';
    out << digits;
  } else if (static_cast<size_t>(exp10) >= digits.size()) {
    out << digits;
    for (size_t i = digits.size(); i < static_cast<size_t>(exp10); ++i) out << '0';
  } else {
    out << digits.substr(0, exp10) << '.' << digits.substr(exp10);
  }
  return out.str();
}

const Rational& Scalar::rational() const {
  if (!is_exact()) throw InvariantViolationError("Scalar holds a double, not a rational");
  return std::get<Rational>(v_);
}

double Scalar::to_double() const {
  if (is_exact()) return rat_to_double(std::get<Rational>(v_));
  return std::get<double>(v_);
}

namespace {
template <class F, class G>
Scalar combine(const Scalar& a, const Scalar& b, F exact, G approx) {
  if (a.is_exact() && b.is_exact()) return Scalar(exact(a.rational(), b.rational()));
  return Scalar(approx(a.to_double(), b.to_double()));
}
} // namespace

Scalar Scalar::operator+(const Scalar& o) const {
  return combine(*this, o, [](const Rational& x, const Rational& y) { return Rational(x + y); },
                 [](double x, double y) { return x + y; });
}
Scalar Scalar::operator-(const Scalar& o) const {
  return combine(*this, o, [](const Rational& x, const Rational& y) { return Rational(x - y); },
                 [](double x, double y) { return x - y; });
}
Scalar Scalar::operator*(const Scalar& o) const {
  return combine(*this, o, [](const Rational& x, const Rational& y) { return Rational(x * y); },
                 [](double x, double y) { return x * y; });
}
Scalar Scalar::operator/(const Scalar& o) const {
  if (o.is_exact() && o.rational() == 0) throw InvalidParameterError("Scalar division by zero");
  return combine(*this, o, [](const Rational& x, const Rational& y) { return Rational(x / y); },
                 [](double x, double y) { return x / y; });
}
Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(Rational(-rational()));
  return Scalar(-to_double());
}

bool Scalar::operator==(const Scalar& o) const {
  if (is_exact() && o.is_exact()) return rational() == o.rational();
  return to_double() == o.to_double();
}
bool Scalar::operator<(const Scalar& o) const {
  if (is_exact() && o.is_exact()) return rational() < o.rational();
  return to_double() < o.to_double();
}
bool Scalar::operator<=(const Scalar& o) const {
  if (is_exact() && o.is_exact()) return rational() <= o.rational();
  return to_double() <= o.to_double();
}

std::string Scalar::str() const {
  if (is_exact()) return rat_to_string(rational());
  std::ostringstream out;
  out.precision(17);
  out << to_double();
  return out.str();
}

Scalar scalar_infinity() { return Scalar(std::numeric_limits<double>::infinity()); }

bool scalar_is_infinite(const Scalar& s) {
  return !s.is_exact() && std::isinf(s.to_double());
}

} // namespace shapesep
