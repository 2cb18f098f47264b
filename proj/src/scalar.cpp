#include "uniasym/scalar.hpp"

#include <cmath>

namespace uniasym {

namespace {

// Laplace continued fraction for sqrt(pi) exp(x^2) erfc(x), x >= 4:
//   1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
// evaluated with the modified Lentz scheme.
double erfcx_cf(double x) {
  const double tiny = 1e-300;
  double f = x;
  double c = x;
  double d = 0.0;
  for (int n = 1; n <= 200; ++n) {
    double an = 0.5 * n;
    d = x + an * d;
    if (d == 0.0) d = tiny;
    c = x + an / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-17) break;
  }
  return 1.0 / (std::sqrt(std::numbers::pi) * f);
}

}  // namespace

double erfcx(double x) {
  if (std::isnan(x)) return x;
  if (x < 0.0) {
    // erfcx(x) = 2 exp(x^2) - erfcx(-x); overflows where the true value does
    return 2.0 * std::exp(x * x) - erfcx(-x);
  }
  if (x < 4.0) return std::exp(x * x) * std::erfc(x);
  return erfcx_cf(x);
}

}  // namespace uniasym
