// Sign/log-magnitude representation for values whose natural scale
// (gamma-function ratios times exponentials of the phase) overflows
// double long before the quantities of interest do.

#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "uniasym/scalar.hpp"

namespace uniasym {

template <RealScalar S>
struct LogScaled {
  S log_magnitude{0};  // ln |value|; ignored when sign == 0
  int sign{0};         // -1, 0, +1

  static LogScaled zero() { return LogScaled{}; }

  static LogScaled from_log(S log_mag, int sgn) {
    if (sgn == 0) return LogScaled{};
    return LogScaled{std::move(log_mag), sgn < 0 ? -1 : 1};
  }

  static LogScaled from_value(const S& v) {
    int sgn = sign_of(v);
    if (sgn == 0) return LogScaled{};
    return LogScaled{log(abs(v)), sgn};
  }

  bool is_zero() const { return sign == 0; }

  // sign * exp(log_magnitude); may over/underflow for S = double.
  S value() const {
    if (sign == 0) return S(0);
    return S(sign) * exp(log_magnitude);
  }

  friend LogScaled operator*(const LogScaled& a, const LogScaled& b) {
    if (a.sign == 0 || b.sign == 0) return LogScaled{};
    return LogScaled{a.log_magnitude + b.log_magnitude, a.sign * b.sign};
  }
  friend LogScaled operator/(const LogScaled& a, const LogScaled& b) {
    if (b.sign == 0) throw std::domain_error("LogScaled: division by zero");
    if (a.sign == 0) return LogScaled{};
    return LogScaled{a.log_magnitude - b.log_magnitude, a.sign * b.sign};
  }
  friend LogScaled operator*(const LogScaled& a, const S& s) {
    return a * from_value(s);
  }
};

template <RealScalar To, RealScalar From>
LogScaled<To> logscaled_cast(const LogScaled<From>& v) {
  if (v.sign == 0) return LogScaled<To>{};
  return LogScaled<To>{scalar_cast<To>(v.log_magnitude), v.sign};
}

// Ratio a/b evaluated in log space; finite whenever both are nonzero.
template <RealScalar S>
S log_ratio_magnitude(const LogScaled<S>& a, const LogScaled<S>& b) {
  if (a.sign == 0 || b.sign == 0) throw std::domain_error("log_ratio_magnitude: zero operand");
  return a.log_magnitude - b.log_magnitude;
}

// Decimal triple (sign, mantissa in [1,10), base-10 exponent) for display.
struct Decimal {
  int sign{0};
  double mantissa{0.0};
  long exponent10{0};
};

template <RealScalar S>
Decimal to_decimal(const LogScaled<S>& v) {
  if (v.sign == 0) return Decimal{};
  S log10v = v.log_magnitude / log(S(10));
  S e = floor(log10v);
  double mant = to_double(exp((log10v - e) * log(S(10))));
  long exp10 = static_cast<long>(to_double(e));
  if (mant >= 10.0) {
    mant /= 10.0;
    exp10 += 1;
  }
  if (mant < 1.0) {
    mant *= 10.0;
    exp10 -= 1;
  }
  return Decimal{v.sign, mant, exp10};
}

// |a/b - 1| computed through logs, usable across the double range.
template <RealScalar S>
double relative_difference(const LogScaled<S>& a, const LogScaled<S>& b) {
  if (b.sign == 0) return a.sign == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  if (a.sign == 0) return 1.0;
  double lr = to_double(a.log_magnitude - b.log_magnitude);
  if (a.sign == b.sign) return std::fabs(std::expm1(lr));
  return std::exp(lr) + 1.0;
}

}  // namespace uniasym
