// Reference values by direct summation of the Gauss series
//   sum_n (A)_n (B)_n / ((C)_n n!) x^n,
// independent of every asymptotic route in this library.  The truncation
// error is certified: for positive parameters the term ratio
//   |t_{n+1}/t_n| = |x| (A+n)(B+n) / ((C+n)(1+n))
// is bounded for all later indices by
//   r_n = |x| max((A+n)/(C+n), 1) max((B+n)/(1+n), 1)
// because each factor is monotone in n, so the dropped tail is at most
// |t_n| r_n / (1 - r_n) whenever r_n < 1.

#pragma once

#include <limits>
#include <stdexcept>
#include <string>

#include "uniasym/logscaled.hpp"
#include "uniasym/phase.hpp"
#include "uniasym/scalar.hpp"

namespace uniasym {

struct PrecisionConfig {
  int digits = 60;           // decimal digits the result should carry
  long max_terms = 1000000;  // summation cap
  double target_rel_error = 0.0;  // 0 picks 10^-(digits-10)

  void validate() const {
    if (digits < 20) throw std::domain_error("PrecisionConfig: digits must be at least 20");
    if (max_terms < 1) throw std::domain_error("PrecisionConfig: max_terms must be positive");
    if (target_rel_error < 0.0)
      throw std::domain_error("PrecisionConfig: target_rel_error must be non-negative");
  }
};

// Thrown when the series cannot reach the target within max_terms (the
// argument too close to 1 for the requested accuracy).
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double tail_estimate)
      : std::runtime_error(what), tail_estimate_(tail_estimate) {}
  double tail_estimate() const { return tail_estimate_; }

 private:
  double tail_estimate_;
};

template <RealScalar S>
struct SeriesSum {
  S value{0};
  S tail_bound{0};  // certified bound on the dropped tail, absolute
  long terms{0};
  bool converged{false};
};

// Sums the series for positive A, B, C and |x| < 1.
template <RealScalar S>
SeriesSum<S> gauss_series(const S& A, const S& B, const S& C, const S& x,
                          const PrecisionConfig& cfg = {}) {
  cfg.validate();
  if (!(A > S(0)) || !(B > S(0)) || !(C > S(0)))
    throw std::domain_error("gauss_series: parameters must be positive");
  S ax = abs(x);
  if (!(ax < S(1))) throw std::domain_error("gauss_series: |x| must be below 1");

  // The default stop overshoots the documented certificate by the same 15
  // digits the summation precision is padded with, so results computed at
  // different `digits` settings stay mutually consistent well beyond the
  // weaker certificate.
  S target = cfg.target_rel_error > 0.0
                 ? S(cfg.target_rel_error)
                 : pow(S(10), S(-(cfg.digits - 10 + 15)));

  S term(1);
  S sum(1);
  SeriesSum<S> out;
  // no finite bound exists while the term ratio sits at or above 1
  out.tail_bound = S(std::numeric_limits<double>::infinity());
  for (long n = 0; n < cfg.max_terms; ++n) {
    S nn(n);
    S f1 = (A + nn) / (C + nn);
    if (f1 < S(1)) f1 = S(1);
    S f2 = (B + nn) / (S(1) + nn);
    if (f2 < S(1)) f2 = S(1);
    S r = ax * f1 * f2;
    if (r < S(1)) {
      S tail = abs(term) * r / (S(1) - r);
      if (tail <= target * abs(sum)) {
        out.value = sum;
        out.tail_bound = tail;
        out.terms = n + 1;
        out.converged = true;
        return out;
      }
      out.tail_bound = tail;
    }
    term = term * ((A + nn) * (B + nn)) / ((C + nn) * (S(1) + nn)) * x;
    sum += term;
  }
  out.value = sum;
  out.terms = cfg.max_terms;
  out.converged = false;
  return out;
}

template <RealScalar S>
double relative_tail_estimate(const SeriesSum<S>& s) {
  if (s.value == S(0)) return std::numeric_limits<double>::infinity();
  return to_double(s.tail_bound / abs(s.value));
}

// Reference summation of the target function at the given parameters.
// Summation runs with guard digits beyond cfg.digits; if the certified
// bound is still not met the precision is raised once more before failing.
inline SeriesSum<BigFloat> reference_sum(const Params<BigFloat>& p,
                                         const PrecisionConfig& cfg = {}) {
  p.validate();
  cfg.validate();
  for (int attempt = 0; attempt < 3; ++attempt) {
    int run_digits = cfg.digits + 15 + attempt * (cfg.digits / 2);
    ScopedPrecision scope(run_digits);
    BigFloat A = round_to_context(p.a) + round_to_context(p.eps) * round_to_context(p.lambda);
    BigFloat B(p.m);
    BigFloat C = round_to_context(p.c) + round_to_context(p.lambda);
    auto s = gauss_series<BigFloat>(A, B, C, round_to_context(p.x), cfg);
    if (s.converged) return s;
    if (attempt == 2) {
      double tail = relative_tail_estimate(s);
      throw ConvergenceError(
          "reference_sum: series did not reach the target within " +
              std::to_string(cfg.max_terms) + " terms (x too close to 1)",
          tail);
    }
  }
  throw std::logic_error("reference_sum: unreachable");
}

inline BigFloat reference_value(const Params<BigFloat>& p, const PrecisionConfig& cfg = {}) {
  return reference_sum(p, cfg).value;
}

template <RealScalar S>
BigFloat reference_value_of(const Params<S>& p, const PrecisionConfig& cfg = {}) {
  return reference_value(params_cast<BigFloat>(p), cfg);
}

// Reference value in log scale, for comparisons against the expansions.
template <RealScalar S>
LogScaled<BigFloat> reference_logscaled(const Params<S>& p, const PrecisionConfig& cfg = {}) {
  BigFloat v = reference_value_of(p, cfg);
  return LogScaled<BigFloat>::from_value(v);
}

}  // namespace uniasym
