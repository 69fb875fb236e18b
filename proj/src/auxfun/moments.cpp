#include "moments.hpp"

#include <algorithm>
#include <cmath>

#include "stoaux/errors.hpp"
#include "stoaux/specfun.hpp"

namespace stoaux::detail {

namespace {

const BigReal& two() {
  thread_local const BigReal v(2);
  return v;
}

void require_decay(const BigReal& lam, const char* what) {
  if (lam.sign() <= 0) throw DomainError(std::string(what) + " needs a positive decay rate");
}

// Starting index for the backward recurrence; the minimal solution decays
// like exp(-2 sqrt(lam n)), so the offset grows with digits / sqrt(lam).
long miller_start(long count, double lam) {
  const double digits = static_cast<double>(working_bits()) * std::log10(2.0);
  double root = std::sqrt(static_cast<double>(count)) + digits * 0.575 / std::sqrt(lam) + 3.0;
  double n = root * root + 10.0;
  if (n > 4.0e6) throw NonConvergence("moment ladder: decay rate too small for backward recurrence");
  return std::max<long>(static_cast<long>(n), count + 10);
}

}  // namespace

BigReal xi_moment(const BigReal& m, const BigReal& lam, const SeriesControl& ctl) {
  require_decay(lam, "xi_moment");
  BigReal order = m + BigReal(1);
  return pow(lam, -order) * upper_gamma(order, lam, ctl);
}

BigReal shifted_moment(const BigReal& mu, const BigReal& nu, const BigReal& lam,
                       const SeriesControl& ctl) {
  require_decay(lam, "shifted_moment");
  BigReal a = nu + BigReal(1);
  if (a.sign() <= 0) throw DomainError("shifted_moment needs nu > -1");
  return exp(-lam) * gamma(a) * tricomi_U(a, mu + nu + two(), lam, ctl);
}

std::vector<BigReal> shifted_moment_ladder(const BigReal& mu, const BigReal& nu,
                                           const BigReal& lam, long count,
                                           const SeriesControl& ctl) {
  require_decay(lam, "shifted_moment_ladder");
  const long top = miller_start(count, lam.to_double());
  const BigReal alpha0 = nu + BigReal(1);
  const BigReal b = mu + nu + two();
  std::vector<BigReal> h(static_cast<size_t>(top) + 2);
  h[top + 1] = BigReal(0);
  h[top] = BigReal(1);
  const BigReal shift = lam - b;
  const BigReal one_minus_b = BigReal(1) - b;
  for (long n = top; n >= 1; --n) {
    BigReal a = alpha0 + BigReal(n);
    h[n - 1] = ((two() * a + shift) * h[n] - (a + one_minus_b) * h[n + 1]) / (a - BigReal(1));
  }
  BigReal norm = shifted_moment(mu, nu, lam, ctl) / h[0];
  h.resize(static_cast<size_t>(count));
  for (auto& v : h) v *= norm;
  return h;
}

BigReal plus_minus_moment(const BigReal& x, const BigReal& y, const BigReal& lam,
                          const SeriesControl& ctl) {
  require_decay(lam, "plus_minus_moment");
  BigReal a = y + BigReal(1);
  if (a.sign() <= 0) throw DomainError("plus_minus_moment needs y > -1");
  BigReal b = x + y + two();
  return exp(-lam) * pow(two(), b - BigReal(1)) * gamma(a) * tricomi_U(a, b, two() * lam, ctl);
}

BigReal inverse_power_moment(long q, const BigReal& x, const BigReal& y, const BigReal& lam,
                             const SeriesControl& ctl, long* terms) {
  require_decay(lam, "inverse_power_moment");
  long used = 0;
  BigReal r = with_cancellation_guard([&] {
    long count = std::max<long>(48, working_bits() + 24);
    while (true) {
      std::vector<BigReal> h = shifted_moment_ladder(x - BigReal(q), y, lam, count, ctl);
      SeriesSum sum(ctl, "inverse-power moment series");
      BigReal coef(1);  // (-x)_k / (k! 2^k)
      BigReal scale;
      for (long k = 0; k < count; ++k) {
        BigReal term = coef * h[k];
        scale = max(scale, abs(term));
        if (sum.add(term)) {
          used = sum.terms();
          BigReal lead = pow(two(), x);
          return Guarded{lead * sum.value(), lead * max(scale, sum.magnitude())};
        }
        coef *= (BigReal(k) - x) / BigReal(2 * (k + 1));
      }
      count *= 2;
      if (count > ctl.max_terms) throw SeriesDivergence("inverse-power moment series: budget exhausted");
    }
  });
  if (terms) *terms += used;
  return r;
}

BigReal k1_bare(long q, const BigReal& a, const BigReal& b, const BigReal& lam,
                const SeriesControl& ctl, long* terms) {
  require_decay(lam, "k1");
  long used = 0;
  BigReal r = with_cancellation_guard([&] {
    const BigReal one(1);
    const BigReal m = a + b - BigReal(q) + one;
    BigReal full = beta(a + one, b + one) * pow(two(), m) * xi_moment(m, lam, ctl);
    long count = std::max<long>(48, working_bits() + 24);
    while (true) {
      std::vector<BigReal> h = shifted_moment_ladder(a - BigReal(q), b + one, lam, count, ctl);
      SeriesSum sum(ctl, "K1 incomplete-beta series");
      BigReal coef(1);  // (-a)_k / k!
      BigReal pw = pow(two(), a - BigReal(q));
      for (long k = 0; k < count; ++k) {
        BigReal term = coef / (b + one + BigReal(k)) * pw * h[k];
        if (sum.add(term)) {
          used = sum.terms();
          return Guarded{full - sum.value(), max(abs(full), sum.magnitude())};
        }
        coef *= (BigReal(k) - a) / BigReal(k + 1);
        pw /= 2L;
      }
      count *= 2;
      if (count > ctl.max_terms) throw SeriesDivergence("K1 incomplete-beta series: budget exhausted");
    }
  });
  if (terms) *terms += used;
  return r;
}

BigReal k2_bare(long q, const BigReal& a, const BigReal& b, const BigReal& lam,
                const SeriesControl& ctl) {
  const BigReal one(1);
  const BigReal m = a + b - BigReal(q) + one;
  return inc_beta(a + one, b + one, BigReal(0.5), ctl) * pow(two(), m) * xi_moment(m, lam, ctl);
}

BigReal nu_bare(long q, const BigReal& a, const BigReal& b, const BigReal& lam,
                const SeriesControl& ctl, long* terms) {
  long used = 0;
  BigReal r = with_cancellation_guard([&] {
    long t = 0;
    BigReal k1ab = k1_bare(q, a, b, lam, ctl, &t);
    BigReal k1ba = k1_bare(q, b, a, lam, ctl, &t);
    BigReal k2ab = k2_bare(q, a, b, lam, ctl);
    BigReal k2ba = k2_bare(q, b, a, lam, ctl);
    used = t;
    BigReal lead = ldexp(BigReal(1), q);
    return Guarded{lead * (k1ab + k1ba - k2ab - k2ba), lead * max(k1ab + k1ba, k2ab + k2ba)};
  });
  if (terms) *terms += used;
  return r;
}

BigReal n_bare(long q, const BigReal& a, const BigReal& b, const BigReal& lam,
               const SeriesControl& ctl) {
  const BigReal one(1);
  if (a <= -one || b <= -one) throw DomainError("N integral needs exponents > -1");
  return with_cancellation_guard([&] {
    BigReal sum;
    BigReal scale;
    BigReal z = -two() * lam;
    for (long s = 0; s <= q; ++s) {
      BigReal t = binom(BigReal(q), s) * ldexp(BigReal(1), s) * gamma(a + BigReal(s + 1)) *
                  rgamma(a + b + BigReal(s + 2)) *
                  kummer_1F1(a + BigReal(s + 1), a + b + BigReal(s + 2), z, ctl);
      if ((q + s) % 2) t = -t;
      sum += t;
      scale = max(scale, abs(t));
    }
    BigReal lead = pow(two(), a + b + one) * exp(lam) * gamma(b + one);
    return Guarded{lead * sum, lead * scale};
  });
}

BigReal edge_beta(const BigReal& a, const BigReal& b) {
  const BigReal one(1);
  return pow(two(), a + b + one) * beta(a + one, b + one);
}

}  // namespace stoaux::detail
