#include <algorithm>
#include <cmath>
#include <string>

#include "stoaux/errors.hpp"
#include "stoaux/specfun.hpp"

namespace stoaux {

namespace {

BigReal factorial(long n) { return tgamma_raw(BigReal(n + 1)); }

// e^{-x} Σ_{s=1}^{α+1} α!/(x^s (α-s+1)!), plus the largest term magnitude.
Guarded mulliken_closed_terms(long alpha, const BigReal& x) {
  BigReal sum;
  BigReal scale;
  BigReal ex = exp(-x);
  BigReal term = ex / x;  // s = 1
  for (long s = 1; s <= alpha + 1; ++s) {
    sum += term;
    scale = max(scale, abs(term));
    term *= BigReal(alpha - s + 1) / x;
  }
  return {sum, scale};
}

}  // namespace

BigReal mulliken_A(const BigReal& alpha, const BigReal& p, const SeriesControl& ctl) {
  if (p.sign() <= 0) throw DomainError("mulliken_A needs p > 0, got " + p.to_string(12));
  if (alpha <= BigReal(-1)) throw DomainError("mulliken_A needs alpha > -1");
  if (alpha.is_integer()) {
    long n = alpha.to_long();
    BigReal ep = exp(-p);
    BigReal a = ep / p;
    for (long k = 1; k <= n; ++k) a = (BigReal(k) * a + ep) / p;
    return a;
  }
  BigReal order = alpha + BigReal(1);
  return pow(p, -order) * upper_gamma(order, p, ctl);
}

BigReal mulliken_A_closed(long alpha, const BigReal& x) {
  if (x.is_zero()) throw DomainError("closed Mulliken form needs a nonzero argument");
  if (alpha < 0) throw DomainError("closed Mulliken form needs integer alpha >= 0");
  return with_cancellation_guard([&] { return mulliken_closed_terms(alpha, x); });
}

double b_integral_threshold(long alpha) { return std::max<double>(static_cast<double>(alpha), 5.0); }

BigReal b_integral_upward(long alpha, const BigReal& pt) {
  if (alpha < 0) throw DomainError("b_integral needs alpha >= 0");
  if (pt.is_zero()) return BigReal(alpha % 2 == 0 ? 2 : 0) / BigReal(alpha + 1);
  const mpfr_prec_t base = working_bits();
  // Each rung multiplies inherited error by k/|pt|.
  double growth = std::lgamma(static_cast<double>(alpha) + 1.0) / std::log(2.0) -
                  static_cast<double>(alpha) * std::log2(std::fabs(pt.to_double()));
  mpfr_prec_t bits = base + std::max<mpfr_prec_t>(0, static_cast<mpfr_prec_t>(growth)) + 16;
  BigReal b;
  {
    PrecisionScope scope(bits);
    BigReal x = pt.rounded_to(std::max(bits, pt.bits()));
    BigReal ep = exp(x);
    BigReal em = exp(-x);
    b = (ep - em) / x;
    for (long k = 1; k <= alpha; ++k) {
      BigReal sign_ep = (k % 2 == 0) ? ep : -ep;
      b = (BigReal(k) * b + sign_ep - em) / x;
    }
  }
  return b.rounded_to(base);
}

BigReal b_integral_mulliken(long alpha, const BigReal& pt) {
  if (alpha < 0) throw DomainError("b_integral needs alpha >= 0");
  if (pt.is_zero()) throw DomainError("Mulliken-difference path undefined at pt = 0");
  return with_cancellation_guard([&] {
    Guarded minus = mulliken_closed_terms(alpha, -pt);
    Guarded plus = mulliken_closed_terms(alpha, pt);
    BigReal first = (alpha % 2 == 0) ? -minus.value : minus.value;
    return Guarded{first - plus.value, max(minus.scale, plus.scale)};
  });
}

BigReal b_integral(long alpha, const BigReal& pt) {
  if (alpha < 0) throw DomainError("b_integral needs alpha >= 0");
  if (pt.is_zero()) return BigReal(alpha % 2 == 0 ? 2 : 0) / BigReal(alpha + 1);
  double ax = std::fabs(pt.to_double());
  // exp overflow guard for the binary exponent range of MPFR
  if (ax > 1e17) throw OverflowError("b_integral: e^|pt| exceeds the exponent range");
  if (ax >= b_integral_threshold(alpha)) return b_integral_mulliken(alpha, pt);
  return b_integral_upward(alpha, pt);
}

BigReal binom(const BigReal& n, long s) {
  if (s < 0) throw DomainError("binom needs s >= 0");
  if (n.sign() < 0 && n.is_integer())
    throw PoleError("binom: gamma pole at n+1 = " + (n + BigReal(1)).to_string(6));
  BigReal r(1);
  for (long k = 0; k < s; ++k) r *= (n - BigReal(k)) / BigReal(k + 1);
  return r;
}

BigReal gen_binom_F(long s, long n, long nprime) {
  if (n < 0 || nprime < 0) throw DomainError("gen_binom_F needs n, n' >= 0");
  if (s < 0 || s > n + nprime) throw DomainError("gen_binom_F needs 0 <= s <= n + n'");
  BigReal r;
  for (long k = std::max(0L, s - n); k <= std::min(s, nprime); ++k) {
    BigReal t = binom(BigReal(n), s - k) * binom(BigReal(nprime), k);
    if (k % 2) r -= t;
    else r += t;
  }
  return r;
}

BigReal bessel_half_K(long l, const BigReal& z) {
  if (z.sign() <= 0) throw DomainError("bessel_half_K needs z > 0");
  if (l < 0) throw DomainError("bessel_half_K needs l >= 0");
  BigReal sum;
  BigReal inv2z = BigReal(1) / (BigReal(2) * z);
  BigReal pw(1);
  for (long s = 0; s <= l; ++s) {
    sum += factorial(l + s) / (factorial(s) * factorial(l - s)) * pw;
    pw *= inv2z;
  }
  return sqrt(const_pi() / (BigReal(2) * z)) * exp(-z) * sum;
}

BigReal bessel_half_I(long l, int sign, const BigReal& z) {
  if (z.sign() <= 0) throw DomainError("bessel_half_I needs z > 0");
  if (l < 0) throw DomainError("bessel_half_I needs l >= 0");
  if (sign != 1 && sign != -1) throw DomainError("bessel_half_I sign must be +1 or -1");
  return with_cancellation_guard([&] {
    BigReal alt;
    BigReal pos;
    BigReal inv2z = BigReal(1) / (BigReal(2) * z);
    BigReal pw(1);
    for (long s = 0; s <= l; ++s) {
      BigReal c = factorial(l + s) / (factorial(s) * factorial(l - s)) * pw;
      alt += (s % 2) ? -c : c;
      pos += c;
      pw *= inv2z;
    }
    BigReal first = exp(z) * alt;
    BigReal second = exp(-z) * pos;
    if ((l + 1) % 2) second = -second;
    if (sign < 0) second = -second;
    BigReal pre = BigReal(1) / sqrt(BigReal(2) * const_pi() * z);
    BigReal scale = pre * exp(z) * pos;
    return Guarded{pre * (first + second), scale};
  });
}

BigReal nsto_norm(const BigReal& n, const BigReal& nprime, const BigReal& p, const BigReal& t) {
  BigReal plus = p + t;
  BigReal minus = p - t;
  if (plus.sign() <= 0 || minus.sign() <= 0) throw DomainError("nsto_norm needs p +- t > 0");
  BigReal g1 = BigReal(2) * n + BigReal(1);
  BigReal g2 = BigReal(2) * nprime + BigReal(1);
  if (g1.sign() <= 0 || g2.sign() <= 0) throw DomainError("nsto_norm needs n, n' > -1/2");
  BigReal half(0.5);
  return pow(plus, n + half) * pow(minus, nprime + half) / sqrt(tgamma_raw(g1) * tgamma_raw(g2));
}

}  // namespace stoaux
