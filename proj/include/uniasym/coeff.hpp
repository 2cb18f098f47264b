// Expansion coefficients.
//
// The saddle coefficients C_{2k} come from the general convolution formula
// over partial ordinary Bell polynomials applied to the scaled phase and
// amplitude-over-pole series at the saddle.  The pole coefficients b_{2k}
// carry the subtracted pole contribution.  Their combination
//   d_{2k} = f(saddle) C_{2k} / (kappa (pole - saddle)) - b_{2k}
// is finite as the pole approaches the saddle but its two parts blow up
// like (kappa delta)^{-(2k+1)}, so the combination is recomputed in
// escalated precision whenever the cancellation would eat into the
// requested accuracy.  The coalescence limit has its own direct route.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "uniasym/phase.hpp"
#include "uniasym/scalar.hpp"
#include "uniasym/taylor.hpp"

namespace uniasym {

// Largest supported truncation index K (coefficients d_0 .. d_{2K}).
inline constexpr int kMaxOrder = 6;

inline void check_order(int K) {
  if (K < 0 || K > kMaxOrder)
    throw std::domain_error("coefficient order K must lie in [0, " + std::to_string(kMaxOrder) + "]");
}

// Partial ordinary Bell polynomials B_{k,j} of a coefficient sequence
// alpha_1, alpha_2, ...:
//   B_{0,0} = 1,  B_{k,0} = 0 (k > 0),
//   B_{k,j} = sum_{r=1}^{k-j+1} alpha_r B_{k-r,j-1}.
template <RealScalar S>
class BellTable {
 public:
  // alpha_tail[i] = alpha_{i+1}; needs max_order entries.
  BellTable(const std::vector<S>& alpha_tail, int max_order) : kmax_(max_order) {
    if (max_order < 0) throw std::invalid_argument("BellTable: negative order");
    if (static_cast<int>(alpha_tail.size()) < max_order)
      throw std::invalid_argument("BellTable: coefficient sequence too short");
    e_.assign(static_cast<size_t>(kmax_) + 1, {});
    for (int k = 0; k <= kmax_; ++k) {
      e_[k].assign(static_cast<size_t>(k) + 1, S(0));
      if (k == 0) {
        e_[0][0] = S(1);
        continue;
      }
      for (int j = 1; j <= k; ++j) {
        S acc(0);
        for (int r = 1; r <= k - j + 1; ++r) {
          if (k - r >= j - 1) acc += alpha_tail[r - 1] * e_[k - r][j - 1];
        }
        e_[k][j] = acc;
      }
    }
  }

  int max_order() const { return kmax_; }

  const S& at(int k, int j) const {
    if (k < 0 || k > kmax_ || j < 0 || j > k) throw std::out_of_range("BellTable: index out of range");
    return e_[k][j];
  }

 private:
  int kmax_;
  std::vector<std::vector<S>> e_;
};

// Scaled phase-shape coefficients at the saddle:
//   alpha_hat[r] = psi^(r+2)(saddle) / (r+2)!,  r = 0 .. count-1.
template <RealScalar S>
std::vector<S> phase_shape_coefficients(const Params<S>& p, int count) {
  std::vector<S> a;
  a.reserve(static_cast<size_t>(count));
  for (int r = 0; r < count; ++r)
    a.push_back(phase_deriv(r + 2, p.eps, p.eps) / factorial_value<S>(r + 2));
  return a;
}

// Generic saddle coefficients from a scaled phase sequence alpha_hat
// (alpha_hat[0] != 0) and an amplitude sequence beta_hat (beta_hat[0] != 0):
//   C_{2k} = alpha_hat[0]^{-k} sum_{s=0}^{2k} (beta_hat[2k-s]/beta_hat[0])
//            sum_{j=0}^{s} (-1)^j (k+1/2)_j / (j! alpha_hat[0]^j) B_{s,j}.
// Both sequences must reach index 2K.
template <RealScalar S>
std::vector<S> wojdylo_coefficients(const std::vector<S>& alpha_hat,
                                    const std::vector<S>& beta_hat, int K) {
  check_order(K);
  if (static_cast<int>(alpha_hat.size()) < 2 * K + 1 ||
      static_cast<int>(beta_hat.size()) < 2 * K + 1)
    throw std::invalid_argument("wojdylo_coefficients: coefficient sequences too short");
  if (alpha_hat[0] == S(0) || beta_hat[0] == S(0))
    throw std::domain_error("wojdylo_coefficients: leading coefficients must be nonzero");

  std::vector<S> tail(alpha_hat.begin() + 1, alpha_hat.end());
  BellTable<S> bell(tail, 2 * K);
  const S& a0 = alpha_hat[0];
  S half = S(1) / S(2);

  std::vector<S> C;
  C.reserve(static_cast<size_t>(K) + 1);
  for (int k = 0; k <= K; ++k) {
    S acc(0);
    for (int s = 0; s <= 2 * k; ++s) {
      S inner(0);
      S a0j(1);      // alpha_hat[0]^j
      S jfact(1);    // j!
      for (int j = 0; j <= s; ++j) {
        if (j > 0) {
          a0j = a0j * a0;
          jfact = jfact * S(j);
        }
        S term = pochhammer(S(k) + half, j) / (jfact * a0j) * bell.at(s, j);
        inner += (j % 2 == 0) ? term : -term;
      }
      acc += (beta_hat[2 * k - s] / beta_hat[0]) * inner;
    }
    C.push_back(pow_int(S(1) / a0, k) * acc);
  }
  return C;
}

// Saddle coefficients for the amplitude-over-pole integrand.
template <RealScalar S>
std::vector<S> saddle_coefficients(const PhaseGeometry<S>& g, const Params<S>& p, int K) {
  check_order(K);
  if (g.regime == Regime::Coalescent)
    throw std::domain_error("saddle_coefficients: pole sits at the saddle");
  auto alpha = phase_shape_coefficients(p, 2 * K + 1);
  auto fhat = amplitude_over_pole_series(g.saddle, g.pole, 2 * K + 4, p);
  std::vector<S> beta(fhat.coeffs().begin(), fhat.coeffs().begin() + 2 * K + 1);
  return wojdylo_coefficients(alpha, beta, K);
}

// Closed forms for C_0, C_2, C_4 in terms of the hatted amplitude ratios
// Fh_k = fhat^(k)(saddle)/fhat(saddle) and Psi_k = psi^(k)(saddle)/psi''(saddle).
template <RealScalar S>
std::array<S, 3> saddle_coefficients_closed(const PhaseGeometry<S>& g, const Params<S>& p) {
  if (g.regime == Regime::Coalescent)
    throw std::domain_error("saddle_coefficients_closed: pole sits at the saddle");
  auto fhat = amplitude_over_pole_series(g.saddle, g.pole, 6, p);
  S F1 = fhat.derivative_ratio(1);
  S F2 = fhat.derivative_ratio(2);
  S F3 = fhat.derivative_ratio(3);
  S F4 = fhat.derivative_ratio(4);
  S psi2 = phase_deriv(2, g.saddle, p.eps);
  S P3 = phase_deriv(3, g.saddle, p.eps) / psi2;
  S P4 = phase_deriv(4, g.saddle, p.eps) / psi2;
  S P5 = phase_deriv(5, g.saddle, p.eps) / psi2;
  S P6 = phase_deriv(6, g.saddle, p.eps) / psi2;

  S C0(1);
  S C2 = (F2 - P3 * F1 + S(5) / S(12) * P3 * P3 - S(1) / S(4) * P4) / psi2;
  S C4 = (S(1) / S(6) * F4 - S(5) / S(9) * P3 * F3 +
          S(5) / S(12) * (S(7) / S(3) * P3 * P3 - P4) * F2 -
          S(35) / S(36) * (P3 * P3 * P3 - P3 * P4 + S(6) / S(35) * P5) * F1 +
          S(35) / S(36) *
              (S(11) / S(24) * P3 * P3 * P3 * P3 -
               S(3) / S(4) * (P3 * P3 - S(1) / S(6) * P4) * P4 + S(1) / S(5) * P3 * P5 -
               S(1) / S(35) * P6)) /
         (psi2 * psi2);
  return {C0, C2, C4};
}

// Pole coefficients b_{2k} = sign (-1)^k f(pole) / p^(2k+1), with the
// positive sign when the pole lies right of the saddle.
template <RealScalar S>
std::vector<S> pole_coefficients(const PhaseGeometry<S>& g, const Params<S>& p, int K) {
  check_order(K);
  if (g.regime == Regime::Coalescent)
    throw std::domain_error("pole_coefficients: pole sits at the saddle");
  S fp = amplitude(g.pole, p);
  S lead = (g.regime == Regime::UpperSign ? fp : -fp) / g.p;
  S p2 = g.p * g.p;
  std::vector<S> b;
  b.reserve(static_cast<size_t>(K) + 1);
  for (int k = 0; k <= K; ++k) {
    b.push_back(lead);
    lead = -lead / p2;
  }
  return b;
}

template <RealScalar S>
struct CoefficientSet {
  int order{0};             // truncation index K; vectors hold K+1 entries
  std::vector<S> saddle;    // C_{2k}
  std::vector<S> pole;      // b_{2k}
  std::vector<S> combined;  // d_{2k}
  S residue_amplitude{0};   // f at the pole
  Regime regime{Regime::UpperSign};
};

template <RealScalar To, RealScalar From>
CoefficientSet<To> coefficient_set_cast(const CoefficientSet<From>& in) {
  CoefficientSet<To> out;
  out.order = in.order;
  out.regime = in.regime;
  out.residue_amplitude = scalar_cast<To>(in.residue_amplitude);
  for (const auto& v : in.saddle) out.saddle.push_back(scalar_cast<To>(v));
  for (const auto& v : in.pole) out.pole.push_back(scalar_cast<To>(v));
  for (const auto& v : in.combined) out.combined.push_back(scalar_cast<To>(v));
  return out;
}

// Extra decimal digits needed so that the (kappa delta)^{-(2K+1)} blow-up of
// the two parts of d_{2K} still leaves the target accuracy after cancellation.
inline int cancellation_guard_digits(double pole_scale, int K) {
  int guard = 10;
  if (pole_scale > 0 && pole_scale < 1.0)
    guard += static_cast<int>(std::ceil((2 * K + 1) * std::log10(1.0 / pole_scale)));
  return guard;
}

namespace detail {

template <RealScalar S>
CoefficientSet<S> expansion_coefficients_direct(const PhaseGeometry<S>& g, const Params<S>& p,
                                                int K) {
  CoefficientSet<S> cs;
  cs.order = K;
  cs.regime = g.regime;
  cs.saddle = saddle_coefficients(g, p, K);
  cs.pole = pole_coefficients(g, p, K);
  cs.residue_amplitude = amplitude(g.pole, p);
  S scale = amplitude(g.saddle, p) / (g.kappa * g.delta);
  for (int k = 0; k <= K; ++k) cs.combined.push_back(scale * cs.saddle[k] - cs.pole[k]);
  return cs;
}

}  // namespace detail

// Full coefficient set, with precision escalation once the pole is close
// enough that the cancellation in d_{2k} matters.
template <RealScalar S>
CoefficientSet<S> expansion_coefficients(const PhaseGeometry<S>& g, const Params<S>& p, int K) {
  check_order(K);
  if (g.regime == Regime::Coalescent)
    throw std::domain_error("expansion_coefficients: pole sits at the saddle; use the coalescence route");
  double adelta = to_double(abs(g.delta));
  double pole_scale = to_double(g.kappa) * adelta;
  bool escalate = adelta < kEscalationBand;
  if constexpr (std::is_same_v<S, BigFloat>) {
    escalate = escalate || pole_scale < 1.0;
  }
  if (!escalate) return detail::expansion_coefficients_direct(g, p, K);

  CoefficientSet<BigFloat> wide;
  {
    int base = std::max(BigFloat::context_digits(), working_digits<S>());
    ScopedPrecision scope(base + cancellation_guard_digits(pole_scale, K));
    auto pb = params_cast<BigFloat>(p);
    auto gb = geometry(pb);
    wide = detail::expansion_coefficients_direct(gb, pb, K);
  }
  return coefficient_set_cast<S>(wide);
}

template <RealScalar S>
struct CoalescenceCoefficients {
  int order{0};
  std::vector<S> scaled;    // coalescence-limit series coefficients
  std::vector<S> combined;  // d_{2k} in the limit: -(f(saddle)/kappa) * scaled[k]
};

// Coalescence limit: the pole sits exactly at the saddle and the finite
// limit coefficients come from the Taylor quotient
//   (f(t)/f(e)) * {1 + 2 sum_{j>=1} psi^(j+2)(e) u^j / (psi''(e) (j+2)!)}^(-k-1/2),
// whose coefficient of u^(2k+1), times (2/psi''(e))^k, is scaled[k].
template <RealScalar S>
CoalescenceCoefficients<S> coalescence_coefficients(const Params<S>& p, int K) {
  p.validate();
  check_order(K);
  const S& e = p.eps;
  int degree = 2 * K + 4;
  auto fser = amplitude_series(e, degree, p);
  S psi2 = phase_deriv(2, e, p.eps);
  S kappa = sqrt(abs(psi2) / S(2));

  std::vector<S> br(static_cast<size_t>(degree) + 1, S(0));
  br[0] = S(1);
  for (int j = 1; j <= degree; ++j)
    br[j] = S(2) * phase_deriv(j + 2, e, p.eps) / (psi2 * factorial_value<S>(j + 2));
  TaylorSeries<S> bracket(e, std::move(br));

  auto num = fser / fser[0];
  S half = S(1) / S(2);

  CoalescenceCoefficients<S> out;
  out.order = K;
  S front = -fser[0] / kappa;
  for (int k = 0; k <= K; ++k) {
    auto q = num * pow(bracket, -(S(k) + half));
    S scaled = pow_int(S(2) / psi2, k) * q[2 * k + 1];
    out.scaled.push_back(scaled);
    out.combined.push_back(front * scaled);
  }
  return out;
}

// Closed forms for the first three coalescence-limit coefficients, written
// with the bare amplitude ratios F_k = f^(k)(saddle)/f(saddle) and
// Psi_k = psi^(k)(saddle)/psi''(saddle).
template <RealScalar S>
std::array<S, 3> coalescence_coefficients_closed(const Params<S>& p) {
  p.validate();
  const S& e = p.eps;
  auto fser = amplitude_series(e, 6, p);
  S F1 = fser.derivative_ratio(1);
  S F2 = fser.derivative_ratio(2);
  S F3 = fser.derivative_ratio(3);
  S F4 = fser.derivative_ratio(4);
  S F5 = fser.derivative_ratio(5);
  S psi2 = phase_deriv(2, e, p.eps);
  S P3 = phase_deriv(3, e, p.eps) / psi2;
  S P4 = phase_deriv(4, e, p.eps) / psi2;
  S P5 = phase_deriv(5, e, p.eps) / psi2;
  S P6 = phase_deriv(6, e, p.eps) / psi2;
  S P7 = phase_deriv(7, e, p.eps) / psi2;

  S D0 = F1 - P3 / S(6);
  S D2 = (S(1) / S(3) * F3 - S(1) / S(2) * F2 * P3 +
          S(1) / S(4) * F1 * (S(5) / S(3) * P3 * P3 - P4) -
          S(1) / S(4) *
              (S(35) / S(54) * P3 * P3 * P3 - S(5) / S(6) * P3 * P4 + S(1) / S(5) * P5)) /
         psi2;
  S D4 = (S(1) / S(30) * F5 - S(5) / S(36) * F4 * P3 +
          S(5) / S(36) * F3 * (S(7) / S(3) * P3 * P3 - P4) +
          S(1) / S(12) * F2 *
              (-S(35) / S(6) * P3 * P3 * P3 + S(35) / S(6) * P3 * P4 - P5) +
          S(1) / S(36) * F1 *
              (S(385) / S(24) * P3 * P3 * P3 * P3 - S(105) / S(4) * P3 * P3 * P4 +
               S(7) * P3 * P5 + S(35) / S(8) * P4 * P4 - P6) -
          S(1) / S(48) *
              (S(1001) / S(108) * P3 * P3 * P3 * P3 * P3 -
               S(385) / S(18) * P3 * P3 * P3 * P4 +
               S(35) / S(4) * P3 * (P4 * P4 + S(4) / S(5) * P3 * P5) -
               S(7) / S(3) * (P4 * P5 + S(2) / S(3) * P3 * P6) + S(4) / S(21) * P7)) /
         (psi2 * psi2);
  return {D0, D2, D4};
}

}  // namespace uniasym
