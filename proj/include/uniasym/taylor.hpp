// Truncated Taylor series about a fixed center, coefficients stored as
// g^(r)(center)/r!.  Products truncate to the shorter operand; division,
// real powers and logarithms use the standard convolution recurrences.

#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "uniasym/scalar.hpp"

namespace uniasym {

template <RealScalar S>
class TaylorSeries {
 public:
  TaylorSeries(S center, std::vector<S> coeffs)
      : center_(std::move(center)), c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("TaylorSeries: no coefficients");
  }

  static TaylorSeries constant(const S& center, const S& value, int degree) {
    std::vector<S> c(check_degree(degree) + 1, S(0));
    c[0] = value;
    return TaylorSeries(center, std::move(c));
  }

  // The identity map t about the center: center + (t - center).
  static TaylorSeries variable(const S& center, int degree) {
    std::vector<S> c(check_degree(degree) + 1, S(0));
    c[0] = center;
    if (degree >= 1) c[1] = S(1);
    return TaylorSeries(center, std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const S& center() const { return center_; }
  const S& operator[](int r) const { return c_.at(static_cast<size_t>(r)); }
  const std::vector<S>& coeffs() const { return c_; }

  // r! * c_r = g^(r)(center); r <= degree.
  S derivative_value(int r) const { return factorial_value<S>(r) * c_.at(static_cast<size_t>(r)); }

  // g^(r)(center) / g(center); the constant term must be nonzero.
  S derivative_ratio(int r) const {
    if (c_[0] == S(0)) throw std::domain_error("TaylorSeries: derivative_ratio with zero constant term");
    return derivative_value(r) / c_[0];
  }

  TaylorSeries derivative() const {
    std::vector<S> d;
    d.reserve(c_.size());
    for (size_t r = 1; r < c_.size(); ++r) d.push_back(S(static_cast<int>(r)) * c_[r]);
    if (d.empty()) d.push_back(S(0));
    return TaylorSeries(center_, std::move(d));
  }

  TaylorSeries truncated(int degree) const {
    check_degree(degree);
    std::vector<S> c(c_.begin(), c_.begin() + std::min<size_t>(c_.size(), degree + 1));
    c.resize(static_cast<size_t>(degree) + 1, S(0));
    return TaylorSeries(center_, std::move(c));
  }

  friend TaylorSeries operator+(const TaylorSeries& u, const TaylorSeries& v) {
    int d = common_degree(u, v);
    std::vector<S> w(static_cast<size_t>(d) + 1);
    for (int k = 0; k <= d; ++k) w[k] = u.c_[k] + v.c_[k];
    return TaylorSeries(u.center_, std::move(w));
  }

  friend TaylorSeries operator-(const TaylorSeries& u, const TaylorSeries& v) {
    int d = common_degree(u, v);
    std::vector<S> w(static_cast<size_t>(d) + 1);
    for (int k = 0; k <= d; ++k) w[k] = u.c_[k] - v.c_[k];
    return TaylorSeries(u.center_, std::move(w));
  }

  friend TaylorSeries operator-(const TaylorSeries& u) { return S(-1) * u; }

  friend TaylorSeries operator*(const TaylorSeries& u, const TaylorSeries& v) {
    int d = common_degree(u, v);
    std::vector<S> w(static_cast<size_t>(d) + 1, S(0));
    for (int k = 0; k <= d; ++k)
      for (int j = 0; j <= k; ++j) w[k] += u.c_[j] * v.c_[k - j];
    return TaylorSeries(u.center_, std::move(w));
  }

  // w = u/v with w[k] = (u[k] - sum_{j<k} w[j] v[k-j]) / v[0].
  friend TaylorSeries operator/(const TaylorSeries& u, const TaylorSeries& v) {
    if (v.c_[0] == S(0)) throw std::domain_error("TaylorSeries: division by series with zero constant term");
    int d = common_degree(u, v);
    std::vector<S> w(static_cast<size_t>(d) + 1, S(0));
    for (int k = 0; k <= d; ++k) {
      S acc = u.c_[k];
      for (int j = 0; j < k; ++j) acc -= w[j] * v.c_[k - j];
      w[k] = acc / v.c_[0];
    }
    return TaylorSeries(u.center_, std::move(w));
  }

  friend TaylorSeries operator*(const S& s, const TaylorSeries& u) {
    std::vector<S> w(u.c_);
    for (auto& x : w) x = s * x;
    return TaylorSeries(u.center_, std::move(w));
  }
  friend TaylorSeries operator*(const TaylorSeries& u, const S& s) { return s * u; }
  friend TaylorSeries operator/(const TaylorSeries& u, const S& s) { return (S(1) / s) * u; }

  friend TaylorSeries operator+(const TaylorSeries& u, const S& s) {
    std::vector<S> w(u.c_);
    w[0] += s;
    return TaylorSeries(u.center_, std::move(w));
  }
  friend TaylorSeries operator-(const TaylorSeries& u, const S& s) { return u + (-s); }

 private:
  static int check_degree(int degree) {
    if (degree < 0) throw std::invalid_argument("TaylorSeries: negative degree");
    return degree;
  }

  static int common_degree(const TaylorSeries& u, const TaylorSeries& v) {
    if (!(u.center_ == v.center_))
      throw std::invalid_argument("TaylorSeries: operands expanded about different centers");
    return std::min(u.degree(), v.degree());
  }

  S center_;
  std::vector<S> c_;
};

// w = u^s for real s; requires u[0] > 0.  Recurrence:
// k u[0] w[k] = sum_{j=1..k} ((s+1) j - k) u[j] w[k-j].
template <RealScalar S>
TaylorSeries<S> pow(const TaylorSeries<S>& u, const S& s) {
  if (!(u[0] > S(0)))
    throw std::domain_error("TaylorSeries: real power of series with non-positive constant term");
  int d = u.degree();
  std::vector<S> w(static_cast<size_t>(d) + 1, S(0));
  w[0] = pow(u[0], s);
  for (int k = 1; k <= d; ++k) {
    S acc(0);
    for (int j = 1; j <= k; ++j) acc += ((s + S(1)) * S(j) - S(k)) * u[j] * w[k - j];
    w[k] = acc / (S(k) * u[0]);
  }
  return TaylorSeries<S>(u.center(), std::move(w));
}

// w = log(u); requires u[0] > 0.  w[k] = (u[k] - (1/k) sum_{j=1..k-1} j w[j] u[k-j]) / u[0].
template <RealScalar S>
TaylorSeries<S> log(const TaylorSeries<S>& u) {
  if (!(u[0] > S(0)))
    throw std::domain_error("TaylorSeries: log of series with non-positive constant term");
  int d = u.degree();
  std::vector<S> w(static_cast<size_t>(d) + 1, S(0));
  w[0] = log(u[0]);
  for (int k = 1; k <= d; ++k) {
    S acc = u[k];
    for (int j = 1; j < k; ++j) acc -= (S(j) / S(k)) * w[j] * u[k - j];
    w[k] = acc / u[0];
  }
  return TaylorSeries<S>(u.center(), std::move(w));
}

}  // namespace uniasym
