// Assembled large-lambda evaluations for the m = 1 function.  All routes
// return the value in log scale together with a crude error proxy (the
// magnitude of the last retained series term relative to the assembled
// bracket).
//
// Stability notes, both routes:
//  * the gamma-ratio prefactor and exp(-lambda psi) overflow double, so the
//    prefactor stays in log space end to end;
//  * in the lower-sign regime the leading pole contribution
//    2 f(pole) exp(-lambda psi(pole)) dominates; the saddle series is
//    attached through exp(-lambda p^2) erfcx instead of erfc so that no
//    exponential ratio is formed explicitly.

#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "uniasym/coeff.hpp"
#include "uniasym/logscaled.hpp"
#include "uniasym/phase.hpp"
#include "uniasym/scalar.hpp"

namespace uniasym {

enum class Method { Auto, Uniform, Coalescent, Regrouped, Oracle };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::Auto: return "auto";
    case Method::Uniform: return "uniform";
    case Method::Coalescent: return "coalescent";
    case Method::Regrouped: return "regrouped";
    case Method::Oracle: return "oracle";
  }
  return "unknown";
}

template <RealScalar S>
struct ExpansionResult {
  LogScaled<S> value;
  Regime regime{Regime::UpperSign};
  Method method{Method::Uniform};
  int terms_used{0};
  // |last retained term| / |assembled bracket|; 0 when the term underflows.
  S last_term_magnitude{0};
};

template <RealScalar To, RealScalar From>
ExpansionResult<To> expansion_result_cast(const ExpansionResult<From>& r) {
  return ExpansionResult<To>{logscaled_cast<To>(r.value), r.regime, r.method, r.terms_used,
                             scalar_cast<To>(r.last_term_magnitude)};
}

// Geometry with p recomputed in escalated precision when the pole is close:
// p^2 is a difference of nearly equal phase values and loses all digits
// once delta^2 drops below the working roundoff.
template <RealScalar S>
PhaseGeometry<S> refined_geometry(const Params<S>& p, int K) {
  auto g = geometry(p);
  if (g.regime == Regime::Coalescent) return g;
  double adelta = to_double(abs(g.delta));
  if (adelta >= kEscalationBand) return g;
  BigFloat wide_p;
  {
    int base = std::max(BigFloat::context_digits(), working_digits<S>());
    ScopedPrecision scope(base + cancellation_guard_digits(to_double(g.kappa) * adelta, K));
    wide_p = geometry(params_cast<BigFloat>(p)).p;
  }
  g.p = scalar_cast<S>(wide_p);
  return g;
}

// Uniform route: with X = sqrt(lambda) p and S_d = sum_k d_{2k} (1/2)_k
// sqrt(pi) lambda^(-k-1/2),
//   upper:  G exp(-lambda psi(saddle)) / (2x) * [ f(pole) erfcx(X) + S_d/pi ]
//   lower:  G exp(-lambda psi(pole))   / (2x) * [ 2 f(pole)
//                        + exp(-X^2) (S_d/pi - f(pole) erfcx(X)) ].
template <RealScalar S>
ExpansionResult<S> eval_uniform(const Params<S>& p, int K) {
  p.validate();
  check_order(K);
  auto g = refined_geometry(p, K);
  if (g.regime == Regime::Coalescent)
    throw std::domain_error("eval_uniform: pole sits at the saddle; use the coalescent route");
  auto cs = expansion_coefficients(g, p, K);
  auto logG = log_gamma_ratio(p);

  S sqrt_lambda = sqrt(p.lambda);
  S X = sqrt_lambda * g.p;
  S f_pole = cs.residue_amplitude;
  S pi_v = pi_value<S>();
  S sqrt_pi = sqrt(pi_v);
  S half = S(1) / S(2);

  S sum(0), last(0);
  S lam_pow = S(1) / sqrt_lambda;
  for (int k = 0; k <= K; ++k) {
    last = cs.combined[k] * pochhammer(half, k) * sqrt_pi * lam_pow;
    sum += last;
    lam_pow = lam_pow / p.lambda;
  }
  S series_part = sum / pi_v;

  S inner, log_pref, proxy_scale(1);
  if (g.regime == Regime::UpperSign) {
    inner = f_pole * erfcx(X) + series_part;
    log_pref = logG.log_magnitude - p.lambda * g.phase_saddle - log(S(2) * p.x);
  } else {
    S damp = exp(-(X * X));
    inner = S(2) * f_pole + damp * (series_part - f_pole * erfcx(X));
    log_pref = logG.log_magnitude - p.lambda * g.phase_pole - log(S(2) * p.x);
    proxy_scale = damp;
  }

  ExpansionResult<S> r;
  r.regime = g.regime;
  r.method = Method::Uniform;
  r.terms_used = K + 1;
  if (inner == S(0)) {
    r.value = LogScaled<S>::zero();
    r.last_term_magnitude = abs(last / pi_v) * proxy_scale;
  } else {
    r.value = LogScaled<S>::from_log(log_pref + log(abs(inner)), sign_of(inner));
    r.last_term_magnitude = abs(last / pi_v) * proxy_scale / abs(inner);
  }
  return r;
}

// Coalescence route:
//   G exp(-lambda psi(saddle)) f(saddle) / (2x)
//     * [ 1 - (2/sqrt(2 pi |psi''|)) sum_k scaled_k (1/2)_k lambda^(-k-1/2) ].
template <RealScalar S>
ExpansionResult<S> eval_coalescent(const Params<S>& p, int K) {
  p.validate();
  check_order(K);
  auto g = geometry(p);
  if (g.regime != Regime::Coalescent)
    throw std::domain_error("eval_coalescent: pole is away from the saddle (eps * x != 1)");
  std::vector<S> Dv;
  if (K <= 2) {
    auto closed = coalescence_coefficients_closed(p);
    Dv.assign(closed.begin(), closed.begin() + K + 1);
  } else {
    Dv = coalescence_coefficients(p, K).scaled;
  }
  auto logG = log_gamma_ratio(p);
  S psi2 = phase_deriv(2, g.saddle, p.eps);
  S f_saddle = amplitude(g.saddle, p);
  S w = S(2) / sqrt(S(2) * pi_value<S>() * abs(psi2));
  S half = S(1) / S(2);

  S sum(0), last(0);
  S lam_pow = S(1) / sqrt(p.lambda);
  for (int k = 0; k <= K; ++k) {
    last = Dv[k] * pochhammer(half, k) * lam_pow;
    sum += last;
    lam_pow = lam_pow / p.lambda;
  }
  S inner = S(1) - w * sum;
  S log_pref = logG.log_magnitude - p.lambda * g.phase_saddle - log(S(2) * p.x) + log(f_saddle);

  ExpansionResult<S> r;
  r.regime = g.regime;
  r.method = Method::Coalescent;
  r.terms_used = K + 1;
  if (inner == S(0)) {
    r.value = LogScaled<S>::zero();
    r.last_term_magnitude = abs(w * last);
  } else {
    r.value = LogScaled<S>::from_log(log_pref + log(abs(inner)), sign_of(inner));
    r.last_term_magnitude = abs(w * last) / abs(inner);
  }
  return r;
}

// Appendix-style regrouping, algebraically identical to the uniform route
// at equal truncation.  With T(X) = (1/(sqrt(pi) X)) sum_k (1/2)_k (-X^2)^(-k)
// and W = f(saddle) / (sqrt(2 pi |psi''|) (1 - eps x)):
//   upper:  G exp(-lambda psi(saddle)) [ f(pole)/(2x) (erfcx(X) - T) + W S_C ]
//   lower:  G exp(-lambda psi(pole))   [ f(pole)/x
//                 + exp(-X^2) ( f(pole)/(2x) (T - erfcx(X)) + W S_C ) ].
template <RealScalar S>
ExpansionResult<S> eval_regrouped(const Params<S>& p, int K) {
  p.validate();
  check_order(K);
  auto g = refined_geometry(p, K);
  if (g.regime == Regime::Coalescent)
    throw std::domain_error("eval_regrouped: pole sits at the saddle; use the coalescent route");
  auto cs = expansion_coefficients(g, p, K);
  auto logG = log_gamma_ratio(p);

  S sqrt_lambda = sqrt(p.lambda);
  S X = sqrt_lambda * g.p;
  S X2 = X * X;
  S f_pole = cs.residue_amplitude;
  S f_saddle = amplitude(g.saddle, p);
  S psi2 = phase_deriv(2, g.saddle, p.eps);
  S pi_v = pi_value<S>();
  S half = S(1) / S(2);

  S sum_c(0), last(0);
  S lam_pow = S(1) / sqrt_lambda;
  for (int k = 0; k <= K; ++k) {
    last = cs.saddle[k] * pochhammer(half, k) * lam_pow;
    sum_c += last;
    lam_pow = lam_pow / p.lambda;
  }
  S W = f_saddle / (sqrt(S(2) * pi_v * abs(psi2)) * (S(1) - p.eps * p.x));

  S tail(0);
  S x_pow = S(1) / (sqrt(pi_v) * X);
  for (int k = 0; k <= K; ++k) {
    tail += pochhammer(half, k) * x_pow;
    x_pow = -x_pow / X2;
  }

  S inner, log_pref, proxy_scale(1);
  if (g.regime == Regime::UpperSign) {
    inner = f_pole / (S(2) * p.x) * (erfcx(X) - tail) + W * sum_c;
    log_pref = logG.log_magnitude - p.lambda * g.phase_saddle;
  } else {
    S damp = exp(-X2);
    inner = f_pole / p.x + damp * (f_pole / (S(2) * p.x) * (tail - erfcx(X)) + W * sum_c);
    log_pref = logG.log_magnitude - p.lambda * g.phase_pole;
    proxy_scale = damp;
  }

  ExpansionResult<S> r;
  r.regime = g.regime;
  r.method = Method::Regrouped;
  r.terms_used = K + 1;
  if (inner == S(0)) {
    r.value = LogScaled<S>::zero();
    r.last_term_magnitude = abs(W * last) * proxy_scale;
  } else {
    r.value = LogScaled<S>::from_log(log_pref + log(abs(inner)), sign_of(inner));
    r.last_term_magnitude = abs(W * last) * proxy_scale / abs(inner);
  }
  return r;
}

// Front door for m = 1.  Auto picks the route from the geometry; a forced
// route that contradicts the geometry is a domain error.
template <RealScalar S>
ExpansionResult<S> eval_first(const Params<S>& p, int K, Method method = Method::Auto) {
  p.validate();
  if (p.m != 1)
    throw std::domain_error("eval_first: only m = 1; higher m goes through the recurrence");
  switch (method) {
    case Method::Auto: {
      auto g = geometry(p);
      return g.regime == Regime::Coalescent ? eval_coalescent(p, K) : eval_uniform(p, K);
    }
    case Method::Uniform: return eval_uniform(p, K);
    case Method::Coalescent: return eval_coalescent(p, K);
    case Method::Regrouped: return eval_regrouped(p, K);
    case Method::Oracle:
      throw std::invalid_argument("eval_first: the oracle route is dispatched by evaluate()");
  }
  throw std::invalid_argument("eval_first: unknown method");
}

}  // namespace uniasym
