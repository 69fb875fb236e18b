#include <algorithm>
#include <cmath>
#include <string>

#include "stoaux/errors.hpp"
#include "stoaux/specfun.hpp"

namespace stoaux {

namespace {

bool is_nonpositive_integer(const BigReal& x) { return x.sign() <= 0 && x.is_integer(); }

// Plain ₁F₁ power series with its largest partial sum for cancellation checks.
// Convergence is not declared before the index clears -a and -b, where
// terms can shrink and then grow again.
Guarded m_series(const BigReal& a, const BigReal& b, const BigReal& z, const SeriesControl& ctl) {
  SeriesSum sum(ctl, "1F1 series");
  const bool terminating = is_nonpositive_integer(a);
  const long settle =
      2 + static_cast<long>(std::max({0.0, -a.to_double(), -b.to_double()}));
  BigReal term(1);
  BigReal scale(1);
  long k = 0;
  while (true) {
    bool done = sum.add(term);
    scale = max(scale, abs(term));
    if (done && k >= settle) break;
    if (terminating && term.is_zero()) break;
    term *= (a + BigReal(k)) / (b + BigReal(k)) * z / BigReal(k + 1);
    ++k;
  }
  return {sum.value(), max(scale, sum.magnitude())};
}

BigReal m_guarded(const BigReal& a, const BigReal& b, const BigReal& z, const SeriesControl& ctl) {
  return with_cancellation_guard([&] { return m_series(a, b, z, ctl); });
}

// U(a, n+1, z) by the logarithmic expansion for integer second parameter.
Guarded u_integer_b(const BigReal& a, long n, const BigReal& z, const SeriesControl& ctl) {
  BigReal value;
  BigReal scale;
  BigReal inv_first = rgamma(a - BigReal(n));
  if (!inv_first.is_zero()) {
    SeriesSum sum(ctl, "Tricomi U logarithmic series");
    BigReal lz = log(z);
    BigReal psi_a = digamma(a);
    BigReal psi_1 = digamma(BigReal(1));
    BigReal psi_n = digamma(BigReal(n + 1));
    BigReal coef(1);  // (a)_k / ((n+1)_k k!) z^k
    BigReal mag;
    long k = 0;
    const long settle = 2 + static_cast<long>(std::max(0.0, -a.to_double()));
    while (true) {
      BigReal term = coef * (lz + psi_a - psi_1 - psi_n);
      mag = max(mag, abs(term));
      bool done = sum.add(term);
      if (done && k >= settle) break;
      BigReal ak = a + BigReal(k);
      coef *= ak / (BigReal(n + 1 + k) * BigReal(k + 1)) * z;
      psi_a += BigReal(1) / ak;
      psi_1 += BigReal(1) / BigReal(k + 1);
      psi_n += BigReal(1) / BigReal(n + 1 + k);
      ++k;
    }
    BigReal pre = inv_first / tgamma_raw(BigReal(n + 1));
    if ((n + 1) % 2) pre = -pre;
    value = pre * sum.value();
    scale = abs(pre) * max(mag, sum.magnitude());
  }
  if (n > 0) {
    BigReal fin;
    BigReal fin_scale;
    BigReal zi = BigReal(1) / z;
    BigReal zp = zi;
    for (long k = 1; k <= n; ++k) {
      BigReal t = tgamma_raw(BigReal(k)) * pochhammer(BigReal(1) - a + BigReal(k), n - k) /
                  tgamma_raw(BigReal(n - k + 1)) * zp;
      fin += t;
      fin_scale = max(fin_scale, abs(t));
      zp *= zi;
    }
    BigReal ra = rgamma(a);
    value += ra * fin;
    scale = max(scale, abs(ra) * fin_scale);
  }
  return {value, scale};
}

// Two-term connection formula through ₁F₁ for non-integer b.
Guarded u_two_term(const BigReal& a, const BigReal& b, const BigReal& z, const SeriesControl& ctl) {
  const BigReal one(1);
  BigReal t1 = tgamma_raw(one - b) * rgamma(a - b + one);
  BigReal s1;
  if (!t1.is_zero()) {
    Guarded m = m_series(a, b, z, ctl);
    s1 = abs(t1) * m.scale;
    t1 *= m.value;
  }
  BigReal t2 = tgamma_raw(b - one) * rgamma(a);
  BigReal s2;
  if (!t2.is_zero()) {
    Guarded m = m_series(a - b + one, BigReal(2) - b, z, ctl);
    t2 *= pow(z, one - b);
    s2 = abs(t2) * m.scale;
    t2 *= m.value;
  }
  return {t1 + t2, max(s1, s2)};
}

}  // namespace

BigReal kummer_1F1(const BigReal& a, const BigReal& b, const BigReal& z, const SeriesControl& ctl) {
  if (near_nonpositive_integer(b)) throw PoleError("1F1: b = " + b.to_string(12) + " at a pole");
  if (a.is_zero() || z.is_zero()) return BigReal(1);
  if (z.sign() < 0 && !is_nonpositive_integer(a)) {
    // Kummer's transformation turns the alternating series into a positive one
    return exp(z) * m_guarded(b - a, b, -z, ctl);
  }
  return m_guarded(a, b, z, ctl);
}

BigReal tricomi_U(const BigReal& a, const BigReal& b, const BigReal& z, const SeriesControl& ctl) {
  if (z.sign() <= 0) throw DomainError("Tricomi U needs z > 0");
  const BigReal one(1);
  if (b < one) return pow(z, one - b) * tricomi_U(a - b + one, BigReal(2) - b, z, ctl);
  if (is_nonpositive_integer(a)) {
    long m = -a.to_long();
    BigReal r = pochhammer(b, m) * m_guarded(a, b, z, ctl);
    return (m % 2) ? -r : r;
  }
  if (b.is_integer()) {
    long n = b.to_long() - 1;
    return with_cancellation_guard([&] { return u_integer_b(a, n, z, ctl); });
  }
  return with_cancellation_guard([&] { return u_two_term(a, b, z, ctl); });
}

}  // namespace stoaux
