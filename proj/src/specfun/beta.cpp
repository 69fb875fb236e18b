#include "stoaux/errors.hpp"
#include "stoaux/specfun.hpp"

namespace stoaux {

namespace {

void check_beta_args(const BigReal& n, const BigReal& nprime, const BigReal& z) {
  if (n.sign() <= 0 || nprime.sign() <= 0) throw DomainError("incomplete beta needs n, n' > 0");
  if (z.sign() < 0 || z > BigReal(1)) throw DomainError("incomplete beta needs z in [0, 1]");
}

// Σ (1-n')_s/((n+s) s!) z^{n+s}; alternates when n' > 1.
Guarded pochhammer_series(const BigReal& n, const BigReal& nprime, const BigReal& z,
                          const SeriesControl& ctl) {
  SeriesSum sum(ctl, "incomplete beta series");
  BigReal coef(1);  // (1-n')_s / s!
  BigReal zp = pow(z, n);
  BigReal scale;
  long s = 0;
  const BigReal one_minus = BigReal(1) - nprime;
  while (true) {
    BigReal term = coef / (n + BigReal(s)) * zp;
    scale = max(scale, abs(term));
    if (sum.add(term)) break;
    coef *= (one_minus + BigReal(s)) / BigReal(s + 1);
    zp *= z;
    ++s;
  }
  return {sum.value(), max(scale, sum.magnitude())};
}

// z^n (1-z)^{n'}/n Σ (n+n')_k/(n+1)_k z^k; every term positive.
BigReal positive_series(const BigReal& n, const BigReal& nprime, const BigReal& z,
                        const SeriesControl& ctl) {
  SeriesSum sum(ctl, "incomplete beta series");
  BigReal term(1);
  const BigReal ab = n + nprime;
  long k = 0;
  while (!sum.add(term)) {
    term *= (ab + BigReal(k)) / (n + BigReal(k + 1)) * z;
    ++k;
  }
  return pow(z, n) * pow(BigReal(1) - z, nprime) / n * sum.value();
}

// B_{nn'}(z) for z <= 1/2.
BigReal lower_half(const BigReal& n, const BigReal& nprime, const BigReal& z,
                   const SeriesControl& ctl) {
  if (z.is_zero()) return BigReal(0);
  Guarded g = pochhammer_series(n, nprime, z, ctl);
  long loss = g.value.is_zero() ? working_bits() : g.scale.exponent2() - g.value.exponent2();
  if (loss <= 20) return g.value;
  return positive_series(n, nprime, z, ctl);
}

}  // namespace

BigReal inc_beta(const BigReal& n, const BigReal& nprime, const BigReal& z,
                 const SeriesControl& ctl) {
  check_beta_args(n, nprime, z);
  if (z <= BigReal(0.5)) return lower_half(n, nprime, z, ctl);
  return with_cancellation_guard([&] {
    BigReal full = beta(n, nprime);
    return Guarded{full - lower_half(nprime, n, BigReal(1) - z, ctl), full};
  });
}

BigReal norm_beta(const BigReal& n, const BigReal& nprime, const BigReal& z,
                  const SeriesControl& ctl) {
  check_beta_args(n, nprime, z);
  if (z <= BigReal(0.5)) return lower_half(n, nprime, z, ctl) / beta(n, nprime);
  return with_cancellation_guard([&] {
    BigReal tail = lower_half(nprime, n, BigReal(1) - z, ctl) / beta(n, nprime);
    return Guarded{BigReal(1) - tail, BigReal(1)};
  });
}

BigReal norm_beta_shift_up(const BigReal& n, const BigReal& nprime, const BigReal& z,
                           const SeriesControl& ctl) {
  if (nprime <= BigReal(1)) throw DomainError("norm_beta_shift_up needs n' > 1");
  return with_cancellation_guard([&] {
    BigReal here = norm_beta(n, nprime, z, ctl);
    BigReal boundary =
        pow(z, n) * pow(BigReal(1) - z, nprime - BigReal(1)) / (n * beta(n, nprime));
    return Guarded{here - boundary, max(abs(here), abs(boundary))};
  });
}

BigReal norm_beta_shift_down(const BigReal& n, const BigReal& nprime, const BigReal& z,
                             const SeriesControl& ctl) {
  if (n <= BigReal(1)) throw DomainError("norm_beta_shift_down needs n > 1");
  BigReal here = norm_beta(n, nprime, z, ctl);
  BigReal boundary =
      pow(z, n - BigReal(1)) * pow(BigReal(1) - z, nprime) / (nprime * beta(n, nprime));
  return here + boundary;
}

BigReal norm_beta_deriv(const BigReal& n, const BigReal& nprime, const BigReal& z) {
  check_beta_args(n, nprime, z);
  return pow(z, n - BigReal(1)) * pow(BigReal(1) - z, nprime - BigReal(1)) / beta(n, nprime);
}

}  // namespace stoaux
