// Arbitrary-precision real scalar backed by MPFR.
//
// Values carry the precision they were created with; the results of
// arithmetic and functions are rounded to the precision of the active
// context (see ScopedPrecision).  The default context is read once from
// the UNIASYM_PRECISION environment variable (decimal digits, default 60).

#pragma once

#include <mpfr.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace uniasym {

// Decimal digits -> mpfr bits, with a few guard bits.
inline mpfr_prec_t digits_to_bits(int digits) {
  if (digits < 2) digits = 2;
  return static_cast<mpfr_prec_t>(digits * 3.3219280948873623 + 1.0) + 8;
}

namespace detail {
// Thread-local context precision in decimal digits.
int& context_digits_ref();
}  // namespace detail

class BigFloat {
 public:
  static int context_digits() { return detail::context_digits_ref(); }
  static void set_context_digits(int digits) {
    if (digits < 2) throw std::domain_error("BigFloat: context precision must be at least 2 digits");
    detail::context_digits_ref() = digits;
  }
  static mpfr_prec_t context_bits() { return digits_to_bits(context_digits()); }

  BigFloat() {
    mpfr_init2(v_, context_bits());
    mpfr_set_zero(v_, 1);
  }
  BigFloat(double v) {
    mpfr_init2(v_, context_bits());
    mpfr_set_d(v_, v, MPFR_RNDN);
  }
  BigFloat(int v) {
    mpfr_init2(v_, context_bits());
    mpfr_set_si(v_, v, MPFR_RNDN);
  }
  BigFloat(long v) {
    mpfr_init2(v_, context_bits());
    mpfr_set_si(v_, v, MPFR_RNDN);
  }
  // Parses a decimal literal at context precision.
  explicit BigFloat(std::string_view decimal);

  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Decimal string; digits <= 0 means enough digits for exact round-trip.
  std::string to_string(int digits = 0) const;

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r(uninit_tag{});
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r(uninit_tag{});
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r(uninit_tag{});
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    BigFloat r(uninit_tag{});
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator-(const BigFloat& a) {
    BigFloat r(uninit_tag{});
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
  BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
  BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }
  BigFloat& operator/=(const BigFloat& o) { return *this = *this / o; }

  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) == 0; }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }

 private:
  struct uninit_tag {};
  explicit BigFloat(uninit_tag) { mpfr_init2(v_, context_bits()); }

  mpfr_t v_;

  friend BigFloat log(const BigFloat&);
  friend BigFloat exp(const BigFloat&);
  friend BigFloat sqrt(const BigFloat&);
  friend BigFloat pow(const BigFloat&, const BigFloat&);
  friend BigFloat abs(const BigFloat&);
  friend BigFloat floor(const BigFloat&);
  friend BigFloat lgamma_pos(const BigFloat&);
  friend BigFloat erfc(const BigFloat&);
  friend BigFloat pi_constant_big();
};

BigFloat log(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat pow(const BigFloat& x, const BigFloat& y);
BigFloat abs(const BigFloat& x);
BigFloat floor(const BigFloat& x);
bool isfinite(const BigFloat& x);

// ln Gamma(x) for x > 0 (throws std::domain_error otherwise).
BigFloat lgamma_pos(const BigFloat& x);
BigFloat erfc(const BigFloat& x);
// exp(x^2) * erfc(x); MPFR's exponent range makes the direct product safe.
BigFloat erfcx(const BigFloat& x);
BigFloat pi_constant_big();

// Re-rounds a value to the active context precision.
BigFloat round_to_context(const BigFloat& x);

std::ostream& operator<<(std::ostream& os, const BigFloat& x);

// RAII guard that switches the context precision for a scope.
class ScopedPrecision {
 public:
  explicit ScopedPrecision(int digits) : saved_(BigFloat::context_digits()) {
    BigFloat::set_context_digits(digits);
  }
  ~ScopedPrecision() { detail::context_digits_ref() = saved_; }
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  int saved_;
};

}  // namespace uniasym
