// Unified scalar layer: the same template code runs at working precision
// (double) and extended precision (BigFloat) through the free functions
// declared here.  Templates must call them unqualified from namespace
// uniasym so that both overload sets resolve.

#pragma once

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

#include "uniasym/bigfloat.hpp"

namespace uniasym {

template <class S>
inline constexpr bool is_real_scalar_v = false;
template <>
inline constexpr bool is_real_scalar_v<double> = true;
template <>
inline constexpr bool is_real_scalar_v<BigFloat> = true;

template <class S>
concept RealScalar = is_real_scalar_v<S>;

// --- double backends ---

inline double log(double x) { return std::log(x); }
inline double exp(double x) { return std::exp(x); }
inline double sqrt(double x) { return std::sqrt(x); }
inline double pow(double x, double y) { return std::pow(x, y); }
inline double abs(double x) { return std::fabs(x); }
inline double floor(double x) { return std::floor(x); }
inline bool isfinite(double x) { return std::isfinite(x); }
inline double erfc(double x) { return std::erfc(x); }

inline double lgamma_pos(double x) {
  if (!(x > 0)) throw std::domain_error("lgamma_pos: argument must be positive");
  return std::lgamma(x);
}

// Scaled complementary error function exp(x^2) erfc(x).  Direct product for
// moderate x, Laplace continued fraction beyond; stays finite for large
// positive x where erfc itself underflows.
double erfcx(double x);

// --- conversions and constants ---

inline double to_double(double x) { return x; }
inline double to_double(const BigFloat& x) { return x.to_double(); }

template <RealScalar S>
S from_string(std::string_view s);

template <>
inline double from_string<double>(std::string_view s) {
  std::string tmp(s);
  char* end = nullptr;
  double v = std::strtod(tmp.c_str(), &end);
  if (end == tmp.c_str() || *end != '\0') {
    throw std::invalid_argument("from_string: cannot parse decimal literal '" + tmp + "'");
  }
  return v;
}

template <>
inline BigFloat from_string<BigFloat>(std::string_view s) {
  return BigFloat(s);
}

template <RealScalar S>
S pi_value();

template <>
inline double pi_value<double>() {
  return std::numbers::pi;
}

template <>
inline BigFloat pi_value<BigFloat>() {
  return pi_constant_big();
}

// Decimal digits carried by the scalar type in the current context.
template <RealScalar S>
int working_digits();

template <>
inline int working_digits<double>() {
  return 16;
}

template <>
inline int working_digits<BigFloat>() {
  return BigFloat::context_digits();
}

template <RealScalar To, RealScalar From>
To scalar_cast(const From& x) {
  if constexpr (std::is_same_v<To, From>) {
    if constexpr (std::is_same_v<To, BigFloat>) {
      return round_to_context(x);
    } else {
      return x;
    }
  } else if constexpr (std::is_same_v<To, double>) {
    return to_double(x);
  } else {
    return BigFloat(x);
  }
}

// --- small numeric helpers ---

template <RealScalar S>
int sign_of(const S& x) {
  if (x > S(0)) return 1;
  if (x < S(0)) return -1;
  return 0;
}

// Rising factorial (a)_n = a (a+1) ... (a+n-1), n >= 0.
template <RealScalar S>
S pochhammer(const S& a, int n) {
  if (n < 0) throw std::domain_error("pochhammer: order must be non-negative");
  S r(1);
  for (int k = 0; k < n; ++k) r = r * (a + S(k));
  return r;
}

template <RealScalar S>
S factorial_value(int n) {
  if (n < 0) throw std::domain_error("factorial_value: order must be non-negative");
  S r(1);
  for (int k = 2; k <= n; ++k) r = r * S(k);
  return r;
}

// x^n for integer n (n may be negative; x != 0 in that case).
template <RealScalar S>
S pow_int(const S& x, int n) {
  if (n < 0) return S(1) / pow_int(x, -n);
  S r(1);
  S base = x;
  while (n > 0) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

}  // namespace uniasym
