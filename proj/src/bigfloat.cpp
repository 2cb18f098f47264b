#include "uniasym/bigfloat.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace uniasym {

namespace detail {

static int initial_digits() {
  const char* env = std::getenv("UNIASYM_PRECISION");
  if (env != nullptr) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 2 && v <= 100000) return static_cast<int>(v);
  }
  return 60;
}

int& context_digits_ref() {
  thread_local int digits = initial_digits();
  return digits;
}

}  // namespace detail

BigFloat::BigFloat(std::string_view decimal) {
  mpfr_init2(v_, context_bits());
  std::string s(decimal);
  if (s.empty() || mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    mpfr_clear(v_);
    throw std::invalid_argument("BigFloat: cannot parse decimal literal '" + s + "'");
  }
}

std::string BigFloat::to_string(int digits) const {
  if (digits <= 0) {
    // Enough decimal digits to round-trip the stored binary precision.
    digits = static_cast<int>(mpfr_get_prec(v_) * 0.3010299956639812) + 3;
  }
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

#define UNIASYM_MPFR_UNARY(name, fn)              \
  BigFloat name(const BigFloat& x) {              \
    BigFloat r(BigFloat::uninit_tag{});           \
    fn(r.v_, x.v_, MPFR_RNDN);                    \
    return r;                                     \
  }

UNIASYM_MPFR_UNARY(exp, mpfr_exp)
UNIASYM_MPFR_UNARY(abs, mpfr_abs)
UNIASYM_MPFR_UNARY(erfc, mpfr_erfc)

#undef UNIASYM_MPFR_UNARY

BigFloat log(const BigFloat& x) {
  BigFloat r(BigFloat::uninit_tag{});
  mpfr_log(r.v_, x.v_, MPFR_RNDN);
  return r;
}

BigFloat sqrt(const BigFloat& x) {
  BigFloat r(BigFloat::uninit_tag{});
  mpfr_sqrt(r.v_, x.v_, MPFR_RNDN);
  return r;
}

BigFloat pow(const BigFloat& x, const BigFloat& y) {
  BigFloat r(BigFloat::uninit_tag{});
  mpfr_pow(r.v_, x.v_, y.v_, MPFR_RNDN);
  return r;
}

BigFloat floor(const BigFloat& x) {
  BigFloat r(BigFloat::uninit_tag{});
  mpfr_floor(r.v_, x.v_);
  return r;
}

bool isfinite(const BigFloat& x) { return mpfr_number_p(x.raw()) != 0; }

BigFloat lgamma_pos(const BigFloat& x) {
  if (!(mpfr_sgn(x.raw()) > 0)) {
    throw std::domain_error("lgamma_pos: argument must be positive");
  }
  BigFloat r(BigFloat::uninit_tag{});
  mpfr_lngamma(r.v_, x.v_, MPFR_RNDN);
  return r;
}

BigFloat erfcx(const BigFloat& x) {
  return exp(x * x) * erfc(x);
}

BigFloat pi_constant_big() {
  BigFloat r(BigFloat::uninit_tag{});
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

BigFloat round_to_context(const BigFloat& x) {
  BigFloat r;
  mpfr_set(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

std::ostream& operator<<(std::ostream& os, const BigFloat& x) {
  return os << x.to_string();
}

}  // namespace uniasym
