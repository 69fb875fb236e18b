#pragma once

#include <mpfr.h>

#include <compare>
#include <string>
#include <string_view>

namespace stoaux {

// Decimal digits <-> binary precision.
mpfr_prec_t digits_to_bits(int digits);
int bits_to_digits(mpfr_prec_t bits);

// Precision used for freshly constructed values on this thread.
mpfr_prec_t working_bits();

class PrecisionScope {
 public:
  explicit PrecisionScope(mpfr_prec_t bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  mpfr_prec_t saved_;
};

class BigReal {
 public:
  BigReal();
  BigReal(double x);  // NOLINT(google-explicit-constructor)
  BigReal(int x);     // NOLINT(google-explicit-constructor)
  BigReal(long x);    // NOLINT(google-explicit-constructor)
  BigReal(double x, mpfr_prec_t bits);

  static BigReal from_string(std::string_view text);
  static BigReal from_string(std::string_view text, mpfr_prec_t bits);
  static BigReal with_bits(mpfr_prec_t bits);

  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }
  mpfr_prec_t bits() const { return mpfr_get_prec(v_); }

  // Copy at a different precision (rounded).
  BigReal rounded_to(mpfr_prec_t bits) const;

  double to_double() const;
  long to_long() const;
  // Scientific notation with `digits` significant digits.
  std::string to_string(int digits) const;

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_integer() const { return mpfr_integer_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  long exponent2() const;  // floor(log2|x|)+1, 0 for zero

  BigReal& operator+=(const BigReal& o);
  BigReal& operator-=(const BigReal& o);
  BigReal& operator*=(const BigReal& o);
  BigReal& operator/=(const BigReal& o);
  BigReal& operator*=(long o);
  BigReal& operator/=(long o);
  BigReal operator-() const;

 private:
  struct NoInit {};
  explicit BigReal(NoInit, mpfr_prec_t bits);
  friend BigReal make_result(const BigReal& a, const BigReal& b);
  friend BigReal make_result(const BigReal& a);
  mpfr_t v_;
};

BigReal make_result(const BigReal& a, const BigReal& b);
BigReal make_result(const BigReal& a);

BigReal operator+(const BigReal& a, const BigReal& b);
BigReal operator-(const BigReal& a, const BigReal& b);
BigReal operator*(const BigReal& a, const BigReal& b);
BigReal operator/(const BigReal& a, const BigReal& b);
BigReal operator*(const BigReal& a, long b);
BigReal operator*(long a, const BigReal& b);
BigReal operator/(const BigReal& a, long b);

bool operator==(const BigReal& a, const BigReal& b);
std::partial_ordering operator<=>(const BigReal& a, const BigReal& b);

BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal expm1(const BigReal& x);
BigReal log(const BigReal& x);
BigReal log2(const BigReal& x);
BigReal log10(const BigReal& x);
BigReal pow(const BigReal& x, const BigReal& y);
BigReal pow(const BigReal& x, long n);
BigReal sin(const BigReal& x);
BigReal sinh(const BigReal& x);
BigReal cosh(const BigReal& x);
BigReal tanh(const BigReal& x);
BigReal floor(const BigReal& x);
BigReal round(const BigReal& x);
BigReal ldexp(const BigReal& x, long e);
BigReal tgamma_raw(const BigReal& x);  // no pole checks
BigReal lgamma_abs(const BigReal& x);  // log|Γ(x)|
BigReal digamma(const BigReal& x);
BigReal max(const BigReal& a, const BigReal& b);
BigReal min(const BigReal& a, const BigReal& b);

BigReal const_pi();
BigReal const_euler();

// Relative difference |a-b|/max(|a|,|b|), zero when both vanish.
double rel_diff(const BigReal& a, const BigReal& b);

}  // namespace stoaux
