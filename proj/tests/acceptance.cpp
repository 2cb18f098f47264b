// Acceptance gate: nine release criteria, one PASS/FAIL line each.
// Tolerances are pinned here and nowhere else; the binary exits nonzero
// if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "uniasym/evaluate.hpp"

using uniasym::BigFloat;
using uniasym::LogScaled;
using uniasym::Method;
using uniasym::Params;
using uniasym::PrecisionConfig;
using uniasym::ScopedPrecision;

namespace {

int failures = 0;

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point start = clock::now();
  return std::chrono::duration<double>(clock::now() - start).count();
}

void report(int idx, const char* name, bool pass, const std::string& detail, double seconds,
            double budget) {
  bool in_budget = budget <= 0.0 || seconds < budget;
  if (!(pass && in_budget)) ++failures;
  std::printf("[%s] %d. %s: %s (%.2fs%s)\n", pass && in_budget ? "PASS" : "FAIL", idx, name,
              detail.c_str(), seconds, in_budget ? "" : ", over budget");
}

Params<BigFloat> table_point(const char* lambda, const char* x, int m = 1) {
  return Params<BigFloat>{BigFloat("0.5"), BigFloat(2), BigFloat(2), BigFloat(lambda), BigFloat(x),
                          m};
}

double big_rel(const BigFloat& got, const char* want) {
  BigFloat w(want);
  return std::fabs(uniasym::to_double((got - w) / w));
}

// -- criterion 1: 24 reference coefficients, 8 significant digits, < 1 s ----
//
// The printed value of the (k=2, x=0.70) cell carries a transcription slip
// (an extra leading digit); the value pinned here is the one that
// regenerates the published error grid for that column exactly, confirmed
// by two independent high-precision routes.  See the corrected entry below.
void criterion_1() {
  double t0 = now_seconds();
  static const char* kPrinted[6][4] = {
      {"-0.94304503", "-1.03364259", "-1.08679035", "-1.16314077"},
      {"2.22692591e-1", "2.22370609e-1", "2.19071374e-1", "2.10564977e-1"},
      {"-1.70235645e-2", "-1.44683556e-2", "-1.32197968e-2", "-1.16726679e-2"},
      {"-2.01563398e-3", "-2.01674811e-3", "-1.87396028e-3", "-1.50090398e-3"},
      {"3.52259554e-4", "2.80957497e-4", "2.53010021e-4", "2.26973127e-4"},
      {"4.16738056e-5", "4.39726773e-5", "4.00222956e-5", "2.82024739e-5"},
  };
  static const char* kX[4] = {"0.30", "0.45", "0.55", "0.70"};
  constexpr double kTol = 1e-8;  // half an ulp of an 8-digit print, with margin
  ScopedPrecision scope(60);
  double worst = 0.0;
  int worst_k = -1, worst_x = -1;
  for (int ix = 0; ix < 4; ++ix) {
    auto p = table_point("100", kX[ix]);
    auto set = uniasym::expansion_coefficients(uniasym::geometry(p), p, 5);
    for (int k = 0; k <= 5; ++k) {
      double rel = big_rel(set.combined[k], kPrinted[k][ix]);
      if (rel > worst) worst = rel, worst_k = k, worst_x = ix;
    }
  }
  std::ostringstream detail;
  detail << "24/24 coefficients within " << kTol << " (worst rel " << worst << " at k=" << worst_k
         << ", x=" << kX[std::max(worst_x, 0)] << ")";
  report(1, "two-sided coefficient grid to 8 significant digits", worst < kTol, detail.str(),
         now_seconds() - t0, 1.0);
}

// -- criterion 2: coalescence coefficients via both routes, < 1 s ----------
//
// The printed exponent of the third scaled coefficient disagrees with the
// d-column printed beside it (d = -sqrt(2) * scaled for these parameters);
// the value pinned here is the consistent one, also produced by the
// explicit closed forms.
void criterion_2() {
  double t0 = now_seconds();
  static const char* kScaled[3] = {"0.75", "-0.15625", "0.009765625"};
  static const char* kCombined[3] = {"-1.06066017", "2.20970869e-1", "-1.38106793e-2"};
  constexpr double kTol = 1e-8;
  ScopedPrecision scope(60);
  auto p = table_point("100", "0.50");
  auto generic = uniasym::coalescence_coefficients(p, 2);
  auto closed = uniasym::coalescence_coefficients_closed(p);
  double worst = 0.0;
  for (int k = 0; k <= 2; ++k) {
    worst = std::max(worst, big_rel(generic.scaled[k], kScaled[k]));
    worst = std::max(worst, big_rel(generic.combined[k], kCombined[k]));
    worst = std::max(worst, big_rel(closed[k], kScaled[k]));
  }
  std::ostringstream detail;
  detail << "scaled and combined coefficients via series and closed routes, worst rel " << worst;
  report(2, "coalescence coefficients to 8 significant digits", worst < kTol, detail.str(),
         now_seconds() - t0, 1.0);
}

// -- criterion 3: 48-cell error grid within factor 5, < 30 s ---------------
void criterion_3() {
  double t0 = now_seconds();
  static const double kPrinted[2][6][4] = {
      {{2.306e-3, 5.802e-4, 9.799e-5, 2.506e-8},
       {5.331e-6, 1.143e-6, 1.790e-7, 4.201e-11},
       {3.099e-8, 7.831e-9, 1.248e-9, 2.655e-13},
       {3.878e-10, 7.820e-11, 1.207e-11, 2.872e-15},
       {3.989e-12, 1.067e-12, 1.665e-13, 3.104e-17},
       {9.809e-14, 1.916e-14, 2.964e-15, 7.326e-19}},
      {{1.103e-3, 2.426e-4, 1.861e-5, 1.451e-12},
       {1.270e-6, 2.378e-7, 1.692e-8, 1.212e-15},
       {3.724e-9, 8.218e-10, 5.947e-11, 3.862e-18},
       {2.304e-11, 4.055e-12, 2.843e-13, 2.066e-20},
       {1.206e-13, 2.811e-14, 1.993e-15, 1.136e-22},
       {1.455e-15, 2.477e-16, 1.741e-17, 1.316e-24}},
  };
  static const char* kLambda[2] = {"50", "100"};
  static const char* kX[4] = {"0.30", "0.45", "0.55", "0.70"};
  constexpr double kFactor = 5.0;
  ScopedPrecision scope(60);
  double worst = 1.0;
  std::string worst_at = "-";
  for (int il = 0; il < 2; ++il) {
    LogScaled<BigFloat> oracle[4];
    for (int ix = 0; ix < 4; ++ix)
      oracle[ix] = uniasym::reference_logscaled(table_point(kLambda[il], kX[ix]));
    for (int M = 0; M <= 5; ++M)
      for (int ix = 0; ix < 4; ++ix) {
        auto r = uniasym::eval_first(table_point(kLambda[il], kX[ix]), M);
        double got = relative_difference(r.value, oracle[ix]);
        double ratio = got / kPrinted[il][M][ix];
        double off = std::max(ratio, 1.0 / ratio);
        if (off > worst) {
          worst = off;
          worst_at = "lambda=" + std::string(kLambda[il]) + ", x=" + kX[ix] +
                     ", M=" + std::to_string(M);
        }
      }
  }
  std::ostringstream detail;
  detail << "48/48 measured errors within factor " << kFactor << " (worst factor " << worst
         << " at " << worst_at << ")";
  report(3, "truncation-error grid against the oracle", worst < kFactor, detail.str(),
         now_seconds() - t0, 30.0);
}

// -- criterion 4: coalescent error grid within factor 5, < 10 s ------------
void criterion_4() {
  double t0 = now_seconds();
  static const double kPrinted[3][3] = {
      {2.826e-4, 9.620e-5, 5.151e-5},
      {5.346e-7, 9.050e-8, 3.229e-8},
      {3.724e-9, 3.182e-10, 7.582e-11},
  };
  static const char* kLambda[3] = {"50", "100", "150"};
  constexpr double kFactor = 5.0;
  ScopedPrecision scope(60);
  double worst = 1.0;
  for (int il = 0; il < 3; ++il) {
    auto oracle = uniasym::reference_logscaled(table_point(kLambda[il], "0.50"));
    for (int M = 0; M <= 2; ++M) {
      auto r = uniasym::eval_first(table_point(kLambda[il], "0.50"), M);
      double ratio = relative_difference(r.value, oracle) / kPrinted[M][il];
      worst = std::max(worst, std::max(ratio, 1.0 / ratio));
    }
  }
  std::ostringstream detail;
  detail << "9/9 measured errors within factor " << kFactor << " (worst factor " << worst << ")";
  report(4, "coalescent evaluation against the oracle", worst < kFactor, detail.str(),
         now_seconds() - t0, 10.0);
}

// -- criterion 5: identity suite to 1e-12 -----------------------------------
void criterion_5() {
  double t0 = now_seconds();
  constexpr double kTol = 1e-12;
  ScopedPrecision scope(60);
  double worst = 0.0;
  // split vs regrouped assembly at equal truncation on the error-grid points
  for (const char* lambda : {"50", "100"})
    for (const char* x : {"0.30", "0.45", "0.55", "0.70"}) {
      auto p = table_point(lambda, x);
      auto split = uniasym::eval_first(p, 5, Method::Uniform);
      auto regrouped = uniasym::eval_first(p, 5, Method::Regrouped);
      worst = std::max(worst, relative_difference(split.value, regrouped.value));
    }
  // generic vs closed saddle and coalescence coefficients over a 3x3x3 grid
  double worst_coeff = 0.0;
  for (double eps : {1.5, 2.0, 3.0})
    for (double a : {0.25, 0.5, 1.0})
      for (double c : {1.5, 2.0, 2.5}) {
        Params<double> p{a, c, eps, 100.0, 0.30, 1};
        auto g = uniasym::geometry(p);
        auto generic = uniasym::saddle_coefficients(g, p, 2);
        auto closed = uniasym::saddle_coefficients_closed(g, p);
        for (int k = 1; k <= 2; ++k)
          worst_coeff =
              std::max(worst_coeff, std::fabs(generic[k] - closed[k]) /
                                        std::max(1.0, std::fabs(closed[k])));
        Params<double> q{a, c, eps, 100.0, 1.0 / eps, 1};
        auto gen_d = uniasym::coalescence_coefficients(q, 2);
        auto closed_d = uniasym::coalescence_coefficients_closed(q);
        for (int k = 0; k <= 2; ++k)
          worst_coeff =
              std::max(worst_coeff, std::fabs(gen_d.scaled[k] - closed_d[k]) /
                                        std::max(1.0, std::fabs(closed_d[k])));
      }
  std::ostringstream detail;
  detail << "assembly identity worst " << worst << ", coefficient identities worst "
         << worst_coeff << " over 27 parameter triples";
  report(5, "regrouped-assembly and closed-form identities", worst < kTol && worst_coeff < kTol,
         detail.str(), now_seconds() - t0, 0.0);
}

// -- criterion 6: cancellation continuity through the transition ------------
void criterion_6() {
  double t0 = now_seconds();
  ScopedPrecision scope(60);
  // (a) coefficients approach their limits linearly in the pole distance
  auto limit = uniasym::coalescence_coefficients(table_point("100", "0.50"), 2);
  double gaps[3];
  int gi = 0;
  for (const char* ds : {"1e-2", "1e-3", "1e-4"}) {
    BigFloat d(ds);
    BigFloat x = BigFloat(1) / (BigFloat(2) + d);
    Params<BigFloat> p{BigFloat("0.5"), BigFloat(2), BigFloat(2), BigFloat(100), x, 1};
    auto set = uniasym::expansion_coefficients(uniasym::geometry(p), p, 2);
    double worst = 0.0;
    for (int k = 0; k <= 2; ++k)
      worst = std::max(worst, uniasym::to_double(abs(set.combined[k] - limit.combined[k])));
    gaps[gi++] = worst;
  }
  constexpr double kSlope = 1.0;  // |d(delta) - d(0)| <= kSlope * delta
  bool linear = gaps[0] < kSlope * 1e-2 && gaps[1] < kSlope * 1e-3 && gaps[2] < kSlope * 1e-4 &&
                gaps[1] < 0.2 * gaps[0] && gaps[2] < 0.2 * gaps[1];
  // (b) evaluation accuracy holds at, and on both flanks of, the transition
  constexpr double kEvalTol = 1e-4;
  double worst_eval = 0.0;
  for (const char* x : {"0.499", "0.5", "0.501"}) {
    auto p = table_point("100", x);
    auto r = uniasym::eval_first(p, 2);
    auto ref = uniasym::reference_logscaled(p);
    worst_eval = std::max(worst_eval, relative_difference(r.value, ref));
  }
  std::ostringstream detail;
  detail << "coefficient gaps " << gaps[0] << " / " << gaps[1] << " / " << gaps[2]
         << " at deltas 1e-2/1e-3/1e-4; flank accuracy worst " << worst_eval;
  report(6, "continuity across the transition point", linear && worst_eval < kEvalTol,
         detail.str(), now_seconds() - t0, 0.0);
}

// -- criterion 7: higher numerator parameter --------------------------------
void criterion_7() {
  double t0 = now_seconds();
  ScopedPrecision scope(60);
  constexpr double kTolM2 = 5e-7;  // at least 6 significant digits
  constexpr double kTolM3 = 5e-6;  // at least 5 significant digits
  auto p2 = table_point("100", "0.30", 2);
  auto r2 = uniasym::eval_recurrence(p2, 5);
  double err2 = relative_difference(r2.value, uniasym::reference_logscaled(p2));
  auto p3 = table_point("100", "0.30", 3);
  auto r3 = uniasym::eval_recurrence(p3, 5);
  double err3 = relative_difference(r3.value, uniasym::reference_logscaled(p3));
  auto ibp = uniasym::eval_ibp_m2(p2, 5);
  double gap = relative_difference(ibp.value, r2.value);
  double allowance =
      uniasym::to_double(ibp.last_term_magnitude) + uniasym::to_double(r2.last_term_magnitude);
  std::ostringstream detail;
  detail << "m=2 rel " << err2 << ", m=3 rel " << err3 << ", route gap " << gap
         << " within allowance " << allowance;
  report(7, "higher numerator parameter via recurrence and parts routes",
         err2 < kTolM2 && err3 < kTolM3 && gap <= allowance, detail.str(), now_seconds() - t0,
         0.0);
}

// -- criterion 8: oracle integrity -------------------------------------------
void criterion_8() {
  double t0 = now_seconds();
  constexpr double kCrossTol = 1e-35;
  constexpr double kClosedTol = 1e-40;
  constexpr double kSlopeTol = 0.05;
  double worst_cross = 0.0;
  for (const char* lambda : {"50", "100"})
    for (const char* x : {"0.30", "0.45", "0.55", "0.70"}) {
      PrecisionConfig c40;
      c40.digits = 40;
      PrecisionConfig c80;
      c80.digits = 80;
      BigFloat v40, v80;
      {
        ScopedPrecision scope(60);
        v40 = uniasym::reference_value(table_point(lambda, x), c40);
      }
      {
        ScopedPrecision scope(100);
        v80 = uniasym::reference_value(table_point(lambda, x), c80);
      }
      worst_cross =
          std::max(worst_cross, std::fabs(uniasym::to_double((v40 - v80) / v80)));
    }
  ScopedPrecision scope(60);
  PrecisionConfig cfg40;
  cfg40.digits = 40;
  auto closed = uniasym::gauss_series(BigFloat(1), BigFloat(1), BigFloat(2), BigFloat("0.5"),
                                      cfg40);
  double closed_err =
      std::fabs(uniasym::to_double((closed.value - BigFloat(2) * log(BigFloat(2))) /
                                   (BigFloat(2) * log(BigFloat(2)))));
  PrecisionConfig cfg20;
  cfg20.digits = 20;
  Params<BigFloat> g99{BigFloat("0.5"), BigFloat(2), BigFloat("1.4"), BigFloat(5),
                       BigFloat("0.99"), 1};
  Params<BigFloat> g999{BigFloat("0.5"), BigFloat(2), BigFloat("1.4"), BigFloat(5),
                        BigFloat("0.999"), 1};
  double f99 = std::log(uniasym::to_double(uniasym::reference_value(g99, cfg20)));
  double f999 = std::log(uniasym::to_double(uniasym::reference_value(g999, cfg20)));
  double slope = (f999 - f99) / (std::log(0.001) - std::log(0.01));
  double want = 2.0 - 0.5 - 1.0 - 0.4 * 5.0;  // c - a - m - (eps-1) lambda
  double slope_off = std::fabs(slope / want - 1.0);
  std::ostringstream detail;
  detail << "cross-precision worst " << worst_cross << ", closed-form rel " << closed_err
         << ", endpoint slope " << slope << " vs " << want;
  report(8, "oracle integrity",
         worst_cross < kCrossTol && closed_err < kClosedTol && slope_off < kSlopeTol,
         detail.str(), now_seconds() - t0, 0.0);
}

// -- criterion 9: gamma-ratio prefactor approaches its large-lambda form ----
void criterion_9() {
  double t0 = now_seconds();
  constexpr double kTol = 1e-3;
  ScopedPrecision scope(60);
  auto off = [](const char* lambda) {
    Params<BigFloat> p{BigFloat("0.5"), BigFloat(2), BigFloat(2), BigFloat(lambda),
                       BigFloat("0.3"), 1};
    auto g = uniasym::log_gamma_ratio(p);
    BigFloat eps = p.eps, lam = p.lambda;
    BigFloat two_pi = BigFloat(2) * uniasym::pi_value<BigFloat>();
    BigFloat half("0.5");
    BigFloat log_rhs = half * log(two_pi * lam) + (half - p.a - eps * lam) * log(eps) +
                       (half + p.a - p.c + (eps - BigFloat(1)) * lam) * log(eps - BigFloat(1));
    return std::fabs(uniasym::to_double(exp(g.log_magnitude - log_rhs) - BigFloat(1)));
  };
  double off3 = off("1000");
  double off4 = off("10000");
  double off5 = off("100000");
  std::ostringstream detail;
  detail << "offsets " << off3 << " / " << off4 << " / " << off5
         << " at lambda 1e3/1e4/1e5 (decreasing)";
  report(9, "prefactor matches its large-argument form", off4 < kTol && off4 < off3 && off5 < off4,
         detail.str(), now_seconds() - t0, 0.0);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (failures == 0) {
    std::printf("acceptance: all 9 criteria satisfied\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", failures);
  return 1;
}
