#pragma once

#include "stoaux/bigreal.hpp"
#include "stoaux/context.hpp"

namespace stoaux {

enum class GammaBranch { P, Q };

// Result of a kernel together with the largest intermediate magnitude,
// used to detect cancellation and retry at higher precision.
struct Guarded {
  BigReal value;
  BigReal scale;
};

// Re-evaluates `fn` at higher precision while the measured cancellation
// (log2 of scale/|value|) exceeds the slack carried by the guard digits.
template <class Fn>
BigReal with_cancellation_guard(Fn&& fn, int max_rounds = 4, long slack_bits = 20);

// Gamma family ------------------------------------------------------------

BigReal gamma(const BigReal& x);
BigReal rgamma(const BigReal& x);  // 1/Γ, zero at the poles
BigReal lngamma(const BigReal& x);  // log|Γ(x)|
bool near_nonpositive_integer(const BigReal& x, double tol = 1e-6);
BigReal pochhammer(const BigReal& a, long s);
BigReal beta(const BigReal& a, const BigReal& b);

BigReal inc_gamma_P(const BigReal& alpha, const BigReal& z, const SeriesControl& ctl = {});
BigReal inc_gamma_Q(const BigReal& alpha, const BigReal& z, const SeriesControl& ctl = {});
// Unnormalised Γ(a, z) for any real a and z > 0.
BigReal upper_gamma(const BigReal& a, const BigReal& z, const SeriesControl& ctl = {});

// P or Q at `alpha`, reached from order alpha+n (n > 0) or alpha-|n| (n < 0)
// through the finite correction sums.
BigReal inc_gamma_shift(GammaBranch which, const BigReal& alpha, const BigReal& z, long n,
                        const SeriesControl& ctl = {});

BigReal elimination_identity_residual(const BigReal& N1, long L1, const BigReal& x1,
                                      const SeriesControl& ctl = {});

// A_α(p) = ∫_1^∞ τ^α e^{-pτ} dτ.
BigReal mulliken_A(const BigReal& alpha, const BigReal& p, const SeriesControl& ctl = {});
// Closed finite form for integer α, valid for any nonzero argument.
BigReal mulliken_A_closed(long alpha, const BigReal& x);

// B_α(x) = ∫_{-1}^{1} τ^α e^{-xτ} dτ and its two evaluation paths.
BigReal b_integral(long alpha, const BigReal& pt);
BigReal b_integral_upward(long alpha, const BigReal& pt);
BigReal b_integral_mulliken(long alpha, const BigReal& pt);
double b_integral_threshold(long alpha);

// Binomials ----------------------------------------------------------------

BigReal binom(const BigReal& n, long s);
BigReal gen_binom_F(long s, long n, long nprime);

// Beta family --------------------------------------------------------------

BigReal inc_beta(const BigReal& n, const BigReal& nprime, const BigReal& z,
                 const SeriesControl& ctl = {});
BigReal norm_beta(const BigReal& n, const BigReal& nprime, const BigReal& z,
                  const SeriesControl& ctl = {});
// 𝔅_{n+1,n'-1}(z) obtained from 𝔅_{n,n'}(z).
BigReal norm_beta_shift_up(const BigReal& n, const BigReal& nprime, const BigReal& z,
                           const SeriesControl& ctl = {});
// 𝔅_{n-1,n'+1}(z) obtained from 𝔅_{n,n'}(z).
BigReal norm_beta_shift_down(const BigReal& n, const BigReal& nprime, const BigReal& z,
                             const SeriesControl& ctl = {});
BigReal norm_beta_deriv(const BigReal& n, const BigReal& nprime, const BigReal& z);

// Confluent hypergeometric -------------------------------------------------

BigReal kummer_1F1(const BigReal& a, const BigReal& b, const BigReal& z,
                   const SeriesControl& ctl = {});
// Tricomi U(a, b, z), z > 0.
BigReal tricomi_U(const BigReal& a, const BigReal& b, const BigReal& z,
                  const SeriesControl& ctl = {});

// Half-integer Bessel functions --------------------------------------------

BigReal bessel_half_I(long l, int sign, const BigReal& z);
BigReal bessel_half_K(long l, const BigReal& z);

BigReal nsto_norm(const BigReal& n, const BigReal& nprime, const BigReal& p, const BigReal& t);

// ---------------------------------------------------------------------------

template <class Fn>
BigReal with_cancellation_guard(Fn&& fn, int max_rounds, long slack_bits) {
  const mpfr_prec_t base = working_bits();
  mpfr_prec_t bits = base;
  Guarded g;
  for (int round = 0; round < max_rounds; ++round) {
    {
      PrecisionScope scope(bits);
      g = fn();
    }
    long loss;
    if (g.value.is_zero())
      loss = g.scale.is_zero() ? 0 : static_cast<long>(bits);
    else
      loss = g.scale.exponent2() - g.value.exponent2();
    if (loss <= slack_bits || bits - base >= loss + 8) break;
    bits = base + loss + 16;
  }
  return g.value.rounded_to(base);
}

}  // namespace stoaux
