#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "uniasym/bigfloat.hpp"
#include "uniasym/oracle.hpp"

using uniasym::BigFloat;
using uniasym::Params;
using uniasym::PrecisionConfig;
using uniasym::ScopedPrecision;

namespace {

double big_rel(const BigFloat& got, const char* want) {
  BigFloat w(want);
  return std::fabs(uniasym::to_double((got - w) / w));
}

Params<BigFloat> make(const char* a, const char* c, const char* eps, const char* lambda,
                      const char* x, int m = 1) {
  return Params<BigFloat>{BigFloat(a), BigFloat(c), BigFloat(eps), BigFloat(lambda), BigFloat(x),
                          m};
}

}  // namespace

TEST_CASE("trivial argument") {
  ScopedPrecision scope(40);
  auto s = uniasym::gauss_series(BigFloat(3), BigFloat(2), BigFloat(5), BigFloat(0));
  CHECK(s.converged);
  CHECK(uniasym::to_double(s.value) == 1.0);
}

TEST_CASE("logarithmic closed form") {
  // series(1,1;2;x) = -log(1-x)/x; at x = 1/2 the value is 2 log 2
  ScopedPrecision scope(60);
  PrecisionConfig cfg;
  cfg.digits = 60;
  auto s = uniasym::gauss_series(BigFloat(1), BigFloat(1), BigFloat(2), BigFloat("0.5"), cfg);
  CHECK(s.converged);
  CHECK(big_rel(s.value, "1.38629436111989061883446424291635313615100027") < 1e-44);
  CHECK(uniasym::relative_tail_estimate(s) < 1e-50);
}

TEST_CASE("frozen reference anchors") {
  ScopedPrecision scope(50);
  PrecisionConfig cfg;
  cfg.digits = 50;
  struct Anchor {
    const char* lambda;
    const char* x;
    int m;
    const char* value;
  };
  // independently computed at the reference-table parameters eps=2, a=1/2, c=2
  constexpr Anchor kAnchors[] = {
      {"50", "0.30", 1, "2.34298088615934503874569542673368875658128512"},
      {"100", "0.30", 1, "2.41478410137940789143708457917017952356627018"},
      {"50", "0.5", 1, "11.3849148017331971514325405639858524534200061"},
      {"100", "0.30", 2, "5.78059761373824736971579163759613161259178905"},
      {"100", "0.30", 3, "13.7245942069322698415259067510333513231948063"},
  };
  for (const auto& an : kAnchors) {
    auto v = uniasym::reference_value(make("0.5", "2", "2", an.lambda, an.x, an.m), cfg);
    CHECK_MESSAGE(big_rel(v, an.value) < 1e-43, "lambda=", an.lambda, " x=", an.x, " m=", an.m);
  }
}

TEST_CASE("certified bound really bounds the truncation error") {
  // compare a loose-target run against a much deeper one
  ScopedPrecision scope(60);
  PrecisionConfig loose;
  loose.digits = 60;
  loose.target_rel_error = 1e-12;
  PrecisionConfig tight;
  tight.digits = 60;
  BigFloat A("100.5"), B(1), C(52), x("0.30");
  auto sl = uniasym::gauss_series(A, B, C, x, loose);
  auto st = uniasym::gauss_series(A, B, C, x, tight);
  CHECK(sl.converged);
  CHECK(st.converged);
  BigFloat err = abs(sl.value - st.value);
  CHECK(uniasym::to_double(err) <= uniasym::to_double(sl.tail_bound) * (1.0 + 1e-10));
  CHECK(sl.terms < st.terms);
}

TEST_CASE("self-consistency across precisions") {
  for (const char* x : {"0.30", "0.45", "0.55", "0.70"}) {
    PrecisionConfig c40;
    c40.digits = 40;
    PrecisionConfig c80;
    c80.digits = 80;
    auto p = make("0.5", "2", "2", "100", x);
    BigFloat v40, v80;
    {
      ScopedPrecision scope(60);
      v40 = uniasym::reference_value(p, c40);
    }
    {
      ScopedPrecision scope(100);
      v80 = uniasym::reference_value(p, c80);
    }
    double rel = std::fabs(uniasym::to_double((v40 - v80) / v80));
    CHECK_MESSAGE(rel < 1e-35, "x=", x);
  }
}

TEST_CASE("growth toward the endpoint follows the expected exponent") {
  // for fixed lambda, the value grows like (1-x)^(c-a-m-(eps-1)lambda)
  ScopedPrecision scope(30);
  PrecisionConfig cfg;
  cfg.digits = 20;
  double a = 0.5, c = 2.0, eps = 1.4, lambda = 5.0;
  int m = 1;
  double want = c - a - m - (eps - 1.0) * lambda;  // = -1.5
  auto p99 = make("0.5", "2", "1.4", "5", "0.99");
  auto p999 = make("0.5", "2", "1.4", "5", "0.999");
  double f99 = std::log(uniasym::to_double(uniasym::reference_value(p99, cfg)));
  double f999 = std::log(uniasym::to_double(uniasym::reference_value(p999, cfg)));
  double slope = (f999 - f99) / (std::log(0.001) - std::log(0.01));
  CHECK(std::fabs(slope / want - 1.0) < 0.05);
}

TEST_CASE("non-convergence carries the partial bound") {
  ScopedPrecision scope(40);
  PrecisionConfig cfg;
  cfg.digits = 40;
  auto p = make("0.5", "2", "2", "50", "0.9");
  // stopping while the term ratio still exceeds 1: no finite bound exists yet
  cfg.max_terms = 200;
  try {
    (void)uniasym::reference_value(p, cfg);
    FAIL("expected the convergence error");
  } catch (const uniasym::ConvergenceError& e) {
    CHECK(std::isinf(e.tail_estimate()));
  }
  // stopping in the decaying region: a finite but unmet bound is reported
  cfg.max_terms = 600;
  try {
    (void)uniasym::reference_value(p, cfg);
    FAIL("expected the convergence error");
  } catch (const uniasym::ConvergenceError& e) {
    CHECK(e.tail_estimate() > 0.0);
    CHECK(std::isfinite(e.tail_estimate()));
  }
}

TEST_CASE("parameter domain checks") {
  ScopedPrecision scope(40);
  CHECK_THROWS_AS(
      (void)uniasym::gauss_series(BigFloat(-1), BigFloat(1), BigFloat(2), BigFloat("0.5")),
      std::domain_error);
  CHECK_THROWS_AS(
      (void)uniasym::gauss_series(BigFloat(1), BigFloat(1), BigFloat(2), BigFloat("1.0")),
      std::domain_error);
  PrecisionConfig bad;
  bad.digits = 10;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
}

TEST_CASE("log-scaled wrapper matches the plain value") {
  ScopedPrecision scope(40);
  PrecisionConfig cfg;
  cfg.digits = 40;
  auto p = make("0.5", "2", "2", "50", "0.30");
  auto plain = uniasym::reference_value(p, cfg);
  auto scaled = uniasym::reference_logscaled(p, cfg);
  CHECK(scaled.sign == 1);
  CHECK(std::fabs(uniasym::to_double(exp(scaled.log_magnitude) - plain)) < 1e-30);
}
