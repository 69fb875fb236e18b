#include <cmath>
#include <string>

#include "stoaux/errors.hpp"
#include "stoaux/specfun.hpp"

namespace stoaux {

namespace {

std::string fmt(const BigReal& x) { return x.to_string(12); }

bool is_nonpositive_integer(const BigReal& x) { return x.sign() <= 0 && x.is_integer(); }

// Normalised lower series: P(a,z) = z^a e^{-z}/Γ(a+1) Σ z^k/(a+1)_k.
BigReal lower_series(const BigReal& a, const BigReal& z, const SeriesControl& ctl) {
  SeriesSum sum(ctl, "incomplete gamma series");
  BigReal term(1);
  long k = 0;
  while (!sum.add(term)) {
    ++k;
    term *= z / (a + BigReal(k));
  }
  return exp(a * log(z) - z - lngamma(a + BigReal(1))) * sum.value();
}

// Γ(a,z) e^{z} z^{-a} by the Legendre continued fraction (modified Lentz).
BigReal upper_fraction(const BigReal& a, const BigReal& z, const SeriesControl& ctl) {
  const BigReal tiny = ldexp(BigReal(1), -4 * static_cast<long>(working_bits()));
  const BigReal tol = series_tolerance(ctl);
  BigReal b = z + BigReal(1) - a;
  BigReal c = BigReal(1) / tiny;
  BigReal d = BigReal(1) / b;
  BigReal h = d;
  int small = 0;
  for (long i = 1; i <= ctl.max_terms; ++i) {
    BigReal an = -BigReal(i) * (BigReal(i) - a);
    b += BigReal(2);
    d = an * d + b;
    if (abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (abs(c) < tiny) c = tiny;
    d = BigReal(1) / d;
    BigReal del = d * c;
    h *= del;
    if (abs(del - BigReal(1)) <= tol) {
      if (++small >= ctl.consecutive_small) return h;
    } else {
      small = 0;
    }
  }
  throw SeriesDivergence("incomplete gamma continued fraction: budget exhausted");
}

void check_order(const BigReal& alpha, const BigReal& z) {
  if (alpha.sign() <= 0) throw DomainError("incomplete gamma needs alpha > 0, got " + fmt(alpha));
  if (z.sign() < 0) throw DomainError("incomplete gamma needs z >= 0, got " + fmt(z));
}

}  // namespace

bool near_nonpositive_integer(const BigReal& x, double tol) {
  if (x > BigReal(tol)) return false;
  return abs(x - round(x)) < BigReal(tol);
}

BigReal gamma(const BigReal& x) {
  if (near_nonpositive_integer(x)) throw PoleError("gamma pole near " + fmt(x));
  if (x.sign() > 0) return tgamma_raw(x);
  BigReal k = round(x);
  BigReal s = sin(const_pi() * (x - k));
  if (k.to_long() % 2 != 0) s = -s;
  return const_pi() / (s * tgamma_raw(BigReal(1) - x));
}

BigReal rgamma(const BigReal& x) {
  if (is_nonpositive_integer(x)) return BigReal(0);
  return BigReal(1) / tgamma_raw(x);
}

BigReal lngamma(const BigReal& x) { return lgamma_abs(x); }

BigReal pochhammer(const BigReal& a, long s) {
  BigReal r(1);
  for (long k = 0; k < s; ++k) r *= a + BigReal(k);
  return r;
}

BigReal beta(const BigReal& a, const BigReal& b) {
  return tgamma_raw(a) * tgamma_raw(b) * rgamma(a + b);
}

BigReal inc_gamma_P(const BigReal& alpha, const BigReal& z, const SeriesControl& ctl) {
  check_order(alpha, z);
  if (z.is_zero()) return BigReal(0);
  if (z <= alpha + BigReal(1)) return lower_series(alpha, z, ctl);
  return with_cancellation_guard([&] {
    BigReal q = exp(alpha * log(z) - z - lngamma(alpha)) * upper_fraction(alpha, z, ctl);
    return Guarded{BigReal(1) - q, BigReal(1)};
  });
}

BigReal inc_gamma_Q(const BigReal& alpha, const BigReal& z, const SeriesControl& ctl) {
  check_order(alpha, z);
  if (z.is_zero()) return BigReal(1);
  if (z > alpha + BigReal(1))
    return exp(alpha * log(z) - z - lngamma(alpha)) * upper_fraction(alpha, z, ctl);
  return with_cancellation_guard([&] {
    return Guarded{BigReal(1) - lower_series(alpha, z, ctl), BigReal(1)};
  });
}

BigReal upper_gamma(const BigReal& a, const BigReal& z, const SeriesControl& ctl) {
  if (z.sign() <= 0) throw DomainError("upper incomplete gamma needs z > 0, got " + fmt(z));
  if (z > a + BigReal(1) || (a.sign() <= 0 && z >= BigReal(1)))
    return exp(a * log(z) - z) * upper_fraction(a, z, ctl);
  if (a.sign() > 0) return tgamma_raw(a) * inc_gamma_Q(a, z, ctl);

  // a <= 0 and z < 1: step down from a positive order or from Γ(0,z) = E1(z).
  return with_cancellation_guard([&] {
    BigReal start = a;
    long steps = 0;
    while (start.sign() < 0) {
      start += BigReal(1);
      ++steps;
    }
    BigReal g;
    BigReal scale;
    if (start.is_zero()) {
      SeriesSum sum(ctl, "exponential integral series");
      BigReal term = -z;
      long k = 1;
      while (!sum.add(term / BigReal(k))) {
        ++k;
        term *= -z / BigReal(k);
      }
      g = -const_euler() - log(z) - sum.value();
      scale = abs(const_euler()) + abs(log(z)) + sum.magnitude();
    } else {
      g = tgamma_raw(start) * inc_gamma_Q(start, z, ctl);
      scale = abs(g);
    }
    BigReal ez = exp(-z);
    for (long i = 0; i < steps; ++i) {
      start -= BigReal(1);
      BigReal boundary = pow(z, start) * ez;
      g = (g - boundary) / start;
      scale = max(scale, max(abs(g), abs(boundary / start)));
    }
    return Guarded{g, scale};
  });
}

BigReal inc_gamma_shift(GammaBranch which, const BigReal& alpha, const BigReal& z, long n,
                        const SeriesControl& ctl) {
  auto direct = [&](const BigReal& order) {
    return which == GammaBranch::P ? inc_gamma_P(order, z, ctl) : inc_gamma_Q(order, z, ctl);
  };
  if (n == 0) return direct(alpha);
  if (alpha.sign() <= 0) throw DomainError("inc_gamma_shift needs alpha > 0");
  BigReal far = alpha + BigReal(n);
  if (far.sign() <= 0)
    throw DomainError("inc_gamma_shift: shifted order " + fmt(far) + " leaves (0, inf)");
  const int sgn = which == GammaBranch::P ? 1 : -1;
  return with_cancellation_guard([&] {
    BigReal corr;
    BigReal ez = exp(-z);
    if (n > 0) {
      for (long s = 1; s <= n; ++s) {
        BigReal order = alpha + BigReal(s);
        corr += ez * pow(z, order - BigReal(1)) * rgamma(order);
      }
    } else {
      for (long s = 0; s < -n; ++s) {
        BigReal order = alpha - BigReal(s);
        corr -= ez * pow(z, order - BigReal(1)) * rgamma(order);
      }
    }
    BigReal base = direct(far);
    BigReal value = sgn > 0 ? base + corr : base - corr;
    return Guarded{value, max(abs(base), abs(corr))};
  });
}

BigReal elimination_identity_residual(const BigReal& N1, long L1, const BigReal& x1,
                                      const SeriesControl& ctl) {
  if (x1.sign() <= 0) throw DomainError("elimination identity needs x1 > 0");
  if (L1 < 0) throw DomainError("elimination identity needs L1 >= 0");
  BigReal poch = pochhammer(N1 - BigReal(L1), 2 * L1 + 1);
  if (poch.is_zero()) throw DomainError("elimination identity: Pochhammer denominator vanishes");
  BigReal order = N1 + BigReal(1);
  BigReal ratio = pow(x1, 2 * L1 + 1) / poch;
  BigReal scale = pow(x1, -(L1 + 1));
  BigReal lhs = scale * (inc_gamma_P(order, x1, ctl) + ratio * inc_gamma_Q(order, x1, ctl));
  BigReal qa = pow(x1, order) * mulliken_A(N1, x1, ctl) * rgamma(order);
  BigReal rhs = scale * (BigReal(1) - qa * (BigReal(1) - ratio));
  return abs(lhs - rhs);
}

}  // namespace stoaux
