// Problem parameters and the saddle/pole geometry of the integral
// representation.  The phase is
//   psi(t) = (eps - 1) log(t - 1) - eps log(t),   t > 1,
// with a saddle at t = eps and a simple pole of the full integrand at
// t = 1/x.  Everything downstream is driven by the data collected in
// PhaseGeometry.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "uniasym/logscaled.hpp"
#include "uniasym/scalar.hpp"
#include "uniasym/taylor.hpp"

namespace uniasym {

// Saddle/pole configuration.  UpperSign: pole right of the saddle
// (eps x < 1); LowerSign: pole left of the saddle (eps x > 1);
// Coalescent: pole at the saddle to within the threshold.
enum class Regime { UpperSign, LowerSign, Coalescent };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::UpperSign: return "upper-sign";
    case Regime::LowerSign: return "lower-sign";
    case Regime::Coalescent: return "coalescent";
  }
  return "unknown";
}

// |pole - saddle| at or below this is treated as exact coalescence.
inline constexpr double kCoalescenceThreshold = 1e-8;
// Below this the combined coefficients lose enough digits to cancellation
// that they are recomputed in escalated precision.
inline constexpr double kEscalationBand = 0.1;

template <RealScalar S>
struct Params {
  S a{0};
  S c{0};
  S eps{0};     // large-parameter ratio, > 1
  S lambda{0};  // large parameter, > 0
  S x{0};       // argument, in (0,1)
  int m = 1;    // integer numerator parameter, >= 1

  void validate() const {
    if (!(eps > S(1))) throw std::domain_error("Params: eps must exceed 1");
    if (!(lambda > S(0))) throw std::domain_error("Params: lambda must be positive");
    if (!(x > S(0)) || !(x < S(1))) throw std::domain_error("Params: x must lie in (0,1)");
    if (m < 1) throw std::domain_error("Params: m must be a positive integer");
    if (!(a + eps * lambda > S(0)))
      throw std::domain_error("Params: a + eps*lambda must be positive");
    if (!(c + lambda > S(0))) throw std::domain_error("Params: c + lambda must be positive");
    if (!(S(1) + a - c + (eps - S(1)) * lambda > S(0)))
      throw std::domain_error("Params: 1 + a - c + (eps-1)*lambda must be positive");
  }
};

template <RealScalar To, RealScalar From>
Params<To> params_cast(const Params<From>& p) {
  return Params<To>{scalar_cast<To>(p.a), scalar_cast<To>(p.c), scalar_cast<To>(p.eps),
                    scalar_cast<To>(p.lambda), scalar_cast<To>(p.x), p.m};
}

// psi(t); requires t > 1.
template <RealScalar S>
S phase(const S& t, const S& eps) {
  if (!(t > S(1))) throw std::domain_error("phase: t must exceed 1");
  return (eps - S(1)) * log(t - S(1)) - eps * log(t);
}

// psi^(k)(t) = (-1)^(k-1) (k-1)! [ (eps-1)/(t-1)^k - eps/t^k ], k >= 1.
template <RealScalar S>
S phase_deriv(int k, const S& t, const S& eps) {
  if (k < 1) throw std::domain_error("phase_deriv: order must be at least 1");
  if (!(t > S(1))) throw std::domain_error("phase_deriv: t must exceed 1");
  S body = (eps - S(1)) / pow_int(t - S(1), k) - eps / pow_int(t, k);
  S scale = factorial_value<S>(k - 1);
  return (k % 2 == 1 ? scale : -scale) * body;
}

// Amplitude f(t) = t^(a-1) (t-1)^(c-a-1); requires t > 1.
template <RealScalar S>
S amplitude(const S& t, const Params<S>& p) {
  if (!(t > S(1))) throw std::domain_error("amplitude: t must exceed 1");
  return pow(t, p.a - S(1)) * pow(t - S(1), p.c - p.a - S(1));
}

// f'(t)/f(t) = (a-1)/t + (c-a-1)/(t-1).
template <RealScalar S>
S amplitude_log_deriv(const S& t, const Params<S>& p) {
  if (!(t > S(1))) throw std::domain_error("amplitude_log_deriv: t must exceed 1");
  return (p.a - S(1)) / t + (p.c - p.a - S(1)) / (t - S(1));
}

// Taylor coefficients of f about a center > 1.
template <RealScalar S>
TaylorSeries<S> amplitude_series(const S& center, int degree, const Params<S>& p) {
  auto t = TaylorSeries<S>::variable(center, degree);
  return pow(t, p.a - S(1)) * pow(t - S(1), p.c - p.a - S(1));
}

// Taylor coefficients of f(t)/(t - pole) about a center distinct from the pole.
template <RealScalar S>
TaylorSeries<S> amplitude_over_pole_series(const S& center, const S& pole, int degree,
                                           const Params<S>& p) {
  if (center == pole)
    throw std::domain_error("amplitude_over_pole_series: center coincides with the pole");
  auto t = TaylorSeries<S>::variable(center, degree);
  return amplitude_series(center, degree, p) / (t - pole);
}

// Taylor coefficients of psi about a center > 1 (series route; the closed
// form phase_deriv is the primary route and the two are cross-checked).
template <RealScalar S>
TaylorSeries<S> phase_series(const S& center, int degree, const S& eps) {
  if (!(center > S(1))) throw std::domain_error("phase_series: center must exceed 1");
  auto t = TaylorSeries<S>::variable(center, degree);
  return (eps - S(1)) * log(t - S(1)) - eps * log(t);
}

template <RealScalar S>
struct PhaseGeometry {
  S saddle{0};        // eps
  S pole{0};          // 1/x
  S delta{0};         // pole - saddle
  S phase_saddle{0};  // psi(eps)
  S phase_pole{0};    // psi(1/x)
  S p{0};             // sqrt(psi(eps) - psi(1/x)) >= 0
  S kappa{0};         // sqrt(|psi''(eps)|/2)
  Regime regime{Regime::UpperSign};
};

template <RealScalar To, RealScalar From>
PhaseGeometry<To> geometry_cast(const PhaseGeometry<From>& g) {
  return PhaseGeometry<To>{scalar_cast<To>(g.saddle),       scalar_cast<To>(g.pole),
                           scalar_cast<To>(g.delta),        scalar_cast<To>(g.phase_saddle),
                           scalar_cast<To>(g.phase_pole),   scalar_cast<To>(g.p),
                           scalar_cast<To>(g.kappa),        g.regime};
}

template <RealScalar S>
PhaseGeometry<S> geometry(const Params<S>& params,
                          const S& threshold = S(kCoalescenceThreshold)) {
  params.validate();
  PhaseGeometry<S> g;
  g.saddle = params.eps;
  g.pole = S(1) / params.x;
  g.delta = g.pole - g.saddle;
  g.phase_saddle = phase(g.saddle, params.eps);
  g.kappa = sqrt(abs(phase_deriv(2, g.saddle, params.eps)) / S(2));
  if (abs(g.delta) <= threshold) {
    g.regime = Regime::Coalescent;
    g.phase_pole = g.phase_saddle;
    g.p = S(0);
    return g;
  }
  g.regime = g.delta > S(0) ? Regime::UpperSign : Regime::LowerSign;
  g.phase_pole = phase(g.pole, params.eps);
  S p2 = g.phase_saddle - g.phase_pole;
  // psi attains its maximum at the saddle, so p2 < 0 can only be roundoff
  if (p2 < S(0)) p2 = S(0);
  g.p = sqrt(p2);
  return g;
}

// Gamma-ratio prefactor Gamma(c+lambda) Gamma(1+a-c+(eps-1) lambda) / Gamma(a+eps lambda),
// kept in log scale: it overflows double for lambda beyond a few hundred.
template <RealScalar S>
LogScaled<S> log_gamma_ratio(const Params<S>& p) {
  p.validate();
  S lg = lgamma_pos(p.c + p.lambda) + lgamma_pos(S(1) + p.a - p.c + (p.eps - S(1)) * p.lambda) -
         lgamma_pos(p.a + p.eps * p.lambda);
  return LogScaled<S>::from_log(lg, 1);
}

}  // namespace uniasym
