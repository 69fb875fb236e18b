#include "stoaux/bigreal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace stoaux {

namespace {
thread_local mpfr_prec_t tl_bits = 0;

constexpr double kLog2Of10 = 3.32192809488736234787;

mpfr_prec_t default_bits() { return digits_to_bits(32); }

mpfr_prec_t clamp_bits(mpfr_prec_t b) {
  return std::max<mpfr_prec_t>(b, MPFR_PREC_MIN);
}
}  // namespace

mpfr_prec_t digits_to_bits(int digits) {
  return clamp_bits(static_cast<mpfr_prec_t>(std::ceil(digits * kLog2Of10)) + 1);
}

int bits_to_digits(mpfr_prec_t bits) {
  return static_cast<int>(std::floor((bits - 1) / kLog2Of10));
}

mpfr_prec_t working_bits() { return tl_bits ? tl_bits : default_bits(); }

PrecisionScope::PrecisionScope(mpfr_prec_t bits) : saved_(tl_bits) {
  tl_bits = clamp_bits(bits);
}

PrecisionScope::~PrecisionScope() { tl_bits = saved_; }

BigReal::BigReal(NoInit, mpfr_prec_t bits) { mpfr_init2(v_, clamp_bits(bits)); }

BigReal::BigReal() : BigReal(NoInit{}, working_bits()) { mpfr_set_zero(v_, 1); }

BigReal::BigReal(double x) : BigReal(NoInit{}, working_bits()) {
  mpfr_set_d(v_, x, MPFR_RNDN);
}

BigReal::BigReal(int x) : BigReal(NoInit{}, working_bits()) {
  mpfr_set_si(v_, x, MPFR_RNDN);
}

BigReal::BigReal(long x) : BigReal(NoInit{}, working_bits()) {
  mpfr_set_si(v_, x, MPFR_RNDN);
}

BigReal::BigReal(double x, mpfr_prec_t bits) : BigReal(NoInit{}, bits) {
  mpfr_set_d(v_, x, MPFR_RNDN);
}

BigReal BigReal::from_string(std::string_view text) {
  return from_string(text, working_bits());
}

BigReal BigReal::from_string(std::string_view text, mpfr_prec_t bits) {
  BigReal r(NoInit{}, bits);
  std::string s(text);
  if (s.empty() || mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
    throw std::invalid_argument("not a decimal number: '" + s + "'");
  return r;
}

BigReal BigReal::with_bits(mpfr_prec_t bits) {
  BigReal r(NoInit{}, bits);
  mpfr_set_zero(r.v_, 1);
  return r;
}

BigReal::BigReal(const BigReal& other) : BigReal(NoInit{}, other.bits()) {
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& other) noexcept {
  v_[0] = other.v_[0];
  other.v_[0]._mpfr_d = nullptr;
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this == &other) return *this;
  if (bits() != other.bits()) mpfr_set_prec(v_, other.bits());
  mpfr_set(v_, other.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  if (this != &other) std::swap(v_[0], other.v_[0]);
  return *this;
}

BigReal::~BigReal() {
  if (v_[0]._mpfr_d) mpfr_clear(v_);
}

BigReal BigReal::rounded_to(mpfr_prec_t b) const {
  BigReal r(NoInit{}, b);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

double BigReal::to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

long BigReal::to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

std::string BigReal::to_string(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", std::max(digits - 1, 0), v_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

long BigReal::exponent2() const {
  if (mpfr_zero_p(v_) || !mpfr_number_p(v_)) return 0;
  return mpfr_get_exp(v_);
}

namespace {
// Raises the target to the precision a binary op should produce.
void widen(mpfr_ptr v, mpfr_prec_t other) {
  mpfr_prec_t want = std::max({mpfr_get_prec(v), other, working_bits()});
  if (want > mpfr_get_prec(v)) mpfr_prec_round(v, want, MPFR_RNDN);
}
}  // namespace

BigReal& BigReal::operator+=(const BigReal& o) {
  widen(v_, o.bits());
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator-=(const BigReal& o) {
  widen(v_, o.bits());
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator*=(const BigReal& o) {
  widen(v_, o.bits());
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator/=(const BigReal& o) {
  widen(v_, o.bits());
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator*=(long o) {
  widen(v_, 0);
  mpfr_mul_si(v_, v_, o, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator/=(long o) {
  widen(v_, 0);
  mpfr_div_si(v_, v_, o, MPFR_RNDN);
  return *this;
}

BigReal BigReal::operator-() const {
  BigReal r(*this);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

BigReal make_result(const BigReal& a, const BigReal& b) {
  return BigReal(BigReal::NoInit{}, std::max({a.bits(), b.bits(), working_bits()}));
}

BigReal make_result(const BigReal& a) {
  return BigReal(BigReal::NoInit{}, std::max(a.bits(), working_bits()));
}

BigReal operator+(const BigReal& a, const BigReal& b) {
  BigReal r = make_result(a, b);
  mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

BigReal operator-(const BigReal& a, const BigReal& b) {
  BigReal r = make_result(a, b);
  mpfr_sub(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

BigReal operator*(const BigReal& a, const BigReal& b) {
  BigReal r = make_result(a, b);
  mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

BigReal operator/(const BigReal& a, const BigReal& b) {
  BigReal r = make_result(a, b);
  mpfr_div(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

BigReal operator*(const BigReal& a, long b) {
  BigReal r = make_result(a);
  mpfr_mul_si(r.raw(), a.raw(), b, MPFR_RNDN);
  return r;
}

BigReal operator*(long a, const BigReal& b) { return b * a; }

BigReal operator/(const BigReal& a, long b) {
  BigReal r = make_result(a);
  mpfr_div_si(r.raw(), a.raw(), b, MPFR_RNDN);
  return r;
}

bool operator==(const BigReal& a, const BigReal& b) {
  return mpfr_equal_p(a.raw(), b.raw()) != 0;
}

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
  if (mpfr_unordered_p(a.raw(), b.raw())) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.raw(), b.raw());
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

#define STOAUX_UNARY(name, fn)                     \
  BigReal name(const BigReal& x) {                 \
    BigReal r = make_result(x);                    \
    fn(r.raw(), x.raw(), MPFR_RNDN);               \
    return r;                                      \
  }

STOAUX_UNARY(abs, mpfr_abs)
STOAUX_UNARY(sqrt, mpfr_sqrt)
STOAUX_UNARY(exp, mpfr_exp)
STOAUX_UNARY(expm1, mpfr_expm1)
STOAUX_UNARY(log, mpfr_log)
STOAUX_UNARY(log2, mpfr_log2)
STOAUX_UNARY(log10, mpfr_log10)
STOAUX_UNARY(sin, mpfr_sin)
STOAUX_UNARY(sinh, mpfr_sinh)
STOAUX_UNARY(cosh, mpfr_cosh)
STOAUX_UNARY(tanh, mpfr_tanh)
STOAUX_UNARY(tgamma_raw, mpfr_gamma)
STOAUX_UNARY(digamma, mpfr_digamma)

#undef STOAUX_UNARY

BigReal floor(const BigReal& x) {
  BigReal r = make_result(x);
  mpfr_floor(r.raw(), x.raw());
  return r;
}

BigReal round(const BigReal& x) {
  BigReal r = make_result(x);
  mpfr_round(r.raw(), x.raw());
  return r;
}

BigReal pow(const BigReal& x, const BigReal& y) {
  BigReal r = make_result(x, y);
  mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

BigReal pow(const BigReal& x, long n) {
  BigReal r = make_result(x);
  mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
  return r;
}

BigReal ldexp(const BigReal& x, long e) {
  BigReal r = make_result(x);
  mpfr_mul_2si(r.raw(), x.raw(), e, MPFR_RNDN);
  return r;
}

BigReal lgamma_abs(const BigReal& x) {
  BigReal r = make_result(x);
  int sgn = 0;
  mpfr_lgamma(r.raw(), &sgn, x.raw(), MPFR_RNDN);
  return r;
}

BigReal max(const BigReal& a, const BigReal& b) { return a < b ? b : a; }
BigReal min(const BigReal& a, const BigReal& b) { return b < a ? b : a; }

BigReal const_pi() {
  BigReal r = BigReal::with_bits(working_bits());
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

BigReal const_euler() {
  BigReal r = BigReal::with_bits(working_bits());
  mpfr_const_euler(r.raw(), MPFR_RNDN);
  return r;
}

double rel_diff(const BigReal& a, const BigReal& b) {
  BigReal scale = max(abs(a), abs(b));
  if (scale.is_zero()) return 0.0;
  return (abs(a - b) / scale).to_double();
}

}  // namespace stoaux
