// Extension to integer m >= 2.
//
// Primary route: the three-term contiguous recurrence in m,
//   F_{m+1} = A_m F_m + B_m F_{m-1},  F_0 = 1,
//   A_m = -(lambda/(m(1-x))) (1 - eps x + (c - 2m + (m-a) x)/lambda),
//   B_m =  (lambda/(m(1-x))) (1 + (c - m)/lambda),
// seeded by the m = 1 expansion.  Each step multiplies by O(lambda), so the
// chain runs in escalated precision and tracks how much the subtraction in
// each step amplified the seed's error proxy.
//
// Cross-check route for m = 2 only: integrate the representation by parts
// once, which replaces the amplitude f by g = f' - lambda psi' f and the
// prefactor 1/(2x) by -1/(2x^2).  g(saddle) = f'(saddle) because psi'
// vanishes there.

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "uniasym/coeff.hpp"
#include "uniasym/expansion.hpp"
#include "uniasym/logscaled.hpp"
#include "uniasym/phase.hpp"
#include "uniasym/scalar.hpp"
#include "uniasym/taylor.hpp"

namespace uniasym {

template <RealScalar S>
struct RecurrenceStep {
  int m{1};
  S A{0};
  S B{0};
};

template <RealScalar S>
RecurrenceStep<S> recurrence_step(int m, const Params<S>& p) {
  if (m < 1) throw std::domain_error("recurrence_step: m must be positive");
  S one_minus_x = S(1) - p.x;
  S front = p.lambda / (S(m) * one_minus_x);
  S A = -front * (S(1) - p.eps * p.x + (p.c - S(2 * m) + (S(m) - p.a) * p.x) / p.lambda);
  S B = front * (S(1) + (p.c - S(m)) / p.lambda);
  return RecurrenceStep<S>{m, A, B};
}

// Seeds the chain with the m = 1 expansion and climbs to params.m.  The
// returned error proxy is the seed's proxy times the accumulated
// cancellation amplification of the chain.
template <RealScalar S>
ExpansionResult<S> eval_recurrence(const Params<S>& p, int K, Method method = Method::Auto) {
  p.validate();
  check_order(K);
  if (p.m == 1) return eval_first(p, K, method);

  // log10(lambda) digits are at risk per step
  double lam = to_double(p.lambda);
  int guard = p.m * static_cast<int>(std::ceil(std::log10(std::max(lam, 2.0)))) + 5;
  ExpansionResult<BigFloat> wide;
  {
    int base = std::max(BigFloat::context_digits(), working_digits<S>());
    ScopedPrecision scope(base + guard);
    auto pb = params_cast<BigFloat>(p);
    pb.m = 1;
    auto seed = eval_first(pb, K, method);
    if (seed.value.is_zero())
      throw std::domain_error("eval_recurrence: vanishing seed value");

    // climb in value space, normalized by the seed's magnitude
    BigFloat prev = BigFloat(seed.value.sign) * exp(-seed.value.log_magnitude);  // F_0 / |F_1|
    BigFloat cur(seed.value.sign);                                               // F_1 / |F_1|
    BigFloat amplification(1);
    for (int j = 1; j < p.m; ++j) {
      auto st = recurrence_step(j, pb);
      BigFloat next = st.A * cur + st.B * prev;
      if (next == BigFloat(0))
        throw std::domain_error("eval_recurrence: cancellation annihilated a recurrence step");
      amplification = amplification * ((abs(st.A * cur) + abs(st.B * prev)) / abs(next));
      prev = cur;
      cur = next;
    }
    wide.value =
        LogScaled<BigFloat>::from_log(seed.value.log_magnitude + log(abs(cur)), sign_of(cur));
    wide.regime = seed.regime;
    wide.method = seed.method;
    wide.terms_used = seed.terms_used;
    wide.last_term_magnitude = seed.last_term_magnitude * amplification;
  }
  return expansion_result_cast<S>(wide);
}

namespace detail {

template <RealScalar S>
ExpansionResult<S> ibp_m2_direct(const PhaseGeometry<S>& g, const Params<S>& p, int K) {
  Params<S> p1 = p;
  p1.m = 1;

  // g(t) = f'(t) - lambda psi'(t) f(t) about the saddle
  int degree = 2 * K + 4;
  auto fser = amplitude_series(g.saddle, degree + 1, p1);
  std::vector<S> psi1(static_cast<size_t>(degree) + 1);
  for (int r = 0; r <= degree; ++r)
    psi1[r] = phase_deriv(r + 1, g.saddle, p.eps) / factorial_value<S>(r);
  TaylorSeries<S> psi1_series(g.saddle, std::move(psi1));
  auto gser = fser.derivative() - p.lambda * (psi1_series * fser.truncated(degree));

  auto t = TaylorSeries<S>::variable(g.saddle, degree);
  auto ghat = gser / (t - g.pole);

  auto alpha = phase_shape_coefficients(p1, 2 * K + 1);
  std::vector<S> beta(ghat.coeffs().begin(), ghat.coeffs().begin() + 2 * K + 1);
  auto C = wojdylo_coefficients(alpha, beta, K);

  S f_pole = amplitude(g.pole, p1);
  S g_pole =
      f_pole * (amplitude_log_deriv(g.pole, p1) - p.lambda * phase_deriv(1, g.pole, p.eps));
  S g_saddle = gser[0];

  S scale = g_saddle / (g.kappa * g.delta);
  std::vector<S> d(static_cast<size_t>(K) + 1);
  S pole_term = (g.regime == Regime::UpperSign ? g_pole : -g_pole) / g.p;
  S p2 = g.p * g.p;
  for (int k = 0; k <= K; ++k) {
    d[k] = scale * C[k] - pole_term;
    pole_term = -pole_term / p2;
  }

  auto logG = log_gamma_ratio(p1);
  S sqrt_lambda = sqrt(p.lambda);
  S X = sqrt_lambda * g.p;
  S pi_v = pi_value<S>();
  S sqrt_pi = sqrt(pi_v);
  S half = S(1) / S(2);

  S sum(0), last(0);
  S lam_pow = S(1) / sqrt_lambda;
  for (int k = 0; k <= K; ++k) {
    last = d[k] * pochhammer(half, k) * sqrt_pi * lam_pow;
    sum += last;
    lam_pow = lam_pow / p.lambda;
  }
  S series_part = sum / pi_v;

  // overall prefactor -G/(2x^2): the bracket's sign flips at the end
  S inner, log_pref, proxy_scale(1);
  if (g.regime == Regime::UpperSign) {
    inner = g_pole * erfcx(X) + series_part;
    log_pref = logG.log_magnitude - p.lambda * g.phase_saddle - log(S(2) * p.x * p.x);
  } else {
    S damp = exp(-(X * X));
    inner = S(2) * g_pole + damp * (series_part - g_pole * erfcx(X));
    log_pref = logG.log_magnitude - p.lambda * g.phase_pole - log(S(2) * p.x * p.x);
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
    r.value = LogScaled<S>::from_log(log_pref + log(abs(inner)), -sign_of(inner));
    r.last_term_magnitude = abs(last / pi_v) * proxy_scale / abs(inner);
  }
  return r;
}

}  // namespace detail

// Once-integrated-by-parts evaluation, m = 2 only; an independent
// cross-check of the recurrence route.
template <RealScalar S>
ExpansionResult<S> eval_ibp_m2(const Params<S>& p, int K) {
  p.validate();
  check_order(K);
  if (p.m != 2) throw std::domain_error("eval_ibp_m2: only m = 2");
  auto g = refined_geometry(p, K);
  if (g.regime == Regime::Coalescent)
    throw std::domain_error("eval_ibp_m2: pole sits at the saddle; no coalescent variant");

  double adelta = to_double(abs(g.delta));
  double pole_scale = to_double(g.kappa) * adelta;
  bool escalate = adelta < kEscalationBand;
  if constexpr (std::is_same_v<S, BigFloat>) {
    escalate = escalate || pole_scale < 1.0;
  }
  if (!escalate) return detail::ibp_m2_direct(g, p, K);

  ExpansionResult<BigFloat> wide;
  {
    int base = std::max(BigFloat::context_digits(), working_digits<S>());
    ScopedPrecision scope(base + cancellation_guard_digits(pole_scale, K));
    auto pb = params_cast<BigFloat>(p);
    auto gb = geometry(pb);
    wide = detail::ibp_m2_direct(gb, pb, K);
  }
  return expansion_result_cast<S>(wide);
}

}  // namespace uniasym
