#include <chrono>

#include "moments.hpp"
#include "report.hpp"
#include "stoaux/auxfun.hpp"
#include "stoaux/errors.hpp"
#include "stoaux/specfun.hpp"

namespace stoaux {

using detail::timed_report;

BigReal order_prefactor(long n1, const BigReal& p1) {
  if (n1 < 0) throw DomainError("n1 must be non-negative");
  return pow(p1, n1) / tgamma_raw(BigReal(n1 + 1));
}

namespace {

BigReal lead(long n1, const ParamTriple& p) { return order_prefactor(n1, p.p1) * exp(-p.p2); }

void require_exponents(const BigReal& n2, const BigReal& n3, const char* what) {
  const BigReal m1(-1);
  if (n2 <= m1 || n3 <= m1) throw DomainError(std::string(what) + " needs n2, n3 > -1");
}

}  // namespace

EvalReport K_plus(long n1, long q, const BigReal& n2, const BigReal& n3, const ParamTriple& params,
                  const EvalContext& ctx) {
  return timed_report(ctx, "K_plus", [&](EvalReport& r) {
    if (q < 0) throw DomainError("K_plus needs q >= 0");
    require_exponents(n2, n3, "K_plus");
    // ξ^q = Σ C(q,s) (ξ-1)^s keeps every term positive
    BigReal sum;
    for (long s = 0; s <= q; ++s)
      sum += binom(BigReal(q), s) * detail::plus_minus_moment(n2, n3 + BigReal(s), params.p3, ctx.ctl);
    r.recurrence_steps = q + 1;
    return lead(n1, params) * sum;
  });
}

EvalReport K_minus(long n1, long q1, const BigReal& n2, const BigReal& n3,
                   const ParamTriple& params, const EvalContext& ctx) {
  return timed_report(ctx, "K_minus", [&](EvalReport& r) {
    if (q1 < 0) throw DomainError("K_minus needs q1 >= 0");
    require_exponents(n2, n3, "K_minus");
    if (q1 == 0) return lead(n1, params) * detail::plus_minus_moment(n2, n3, params.p3, ctx.ctl);
    return lead(n1, params) *
           detail::inverse_power_moment(q1, n2, n3, params.p3, ctx.ctl, &r.series_terms);
  });
}

EvalReport N_func(long n1, long q, const BigReal& n2, const BigReal& n3, const ParamTriple& params,
                  const EvalContext& ctx) {
  return timed_report(ctx, "N", [&](EvalReport& r) {
    if (q < 0) throw DomainError("N needs q >= 0");
    require_exponents(n2, n3, "N");
    r.recurrence_steps = q + 1;
    return lead(n1, params) * detail::n_bare(q, n2, n3, params.p3, ctx.ctl);
  });
}

EvalReport K1_start(long n1, long q, const BigReal& n2, const BigReal& n3,
                    const ParamTriple& params, const EvalContext& ctx) {
  return timed_report(ctx, "K1", [&](EvalReport& r) {
    require_exponents(n2, n3, "K1");
    return lead(n1, params) * detail::k1_bare(q, n2, n3, params.p3, ctx.ctl, &r.series_terms);
  });
}

BigReal K1_recur(long n1, long q, const BigReal& n2, const BigReal& n3, const ParamTriple& params,
                 const BigReal& shifted, const EvalContext& ctx) {
  PrecisionScope scope(ctx.bits());
  return with_rung("K1_recur", [&] {
    BigReal km = K_minus(n1, q, n2 + BigReal(1), n3, params, ctx).value;
    return rung::K1_step(n2, n3, q, shifted, km);
  });
}

std::vector<IndexTerm> nuG_reduce_q2(long q2, const BigReal& n2, const BigReal& n3) {
  if (q2 < 0) throw DomainError("q2 must be non-negative");
  std::vector<IndexTerm> out;
  BigReal scale = ldexp(BigReal(1), -2 * q2);
  for (long s = 0; s <= q2; ++s) {
    BigReal c = binom(BigReal(q2), s) * scale;
    if (s % 2) c = -c;
    out.push_back({c, n2 + BigReal(2 * (q2 - s)), n3 + BigReal(2 * s)});
  }
  return out;
}

EvalReport nuG_beta_form(long n1, long q1, const BigReal& n2, const BigReal& n3,
                         const ParamTriple& params, const EvalContext& ctx) {
  return timed_report(ctx, "nuG_beta_form", [&](EvalReport& r) {
    require_exponents(n2, n3, "nuG_beta_form");
    return lead(n1, params) * detail::nu_bare(q1, n2, n3, params.p3, ctx.ctl, &r.series_terms);
  });
}

BigReal nuG_recur_dn2(long n1, long q1, const BigReal& n2, const BigReal& n3,
                      const ParamTriple& params, const BigReal& here, const EvalContext& ctx) {
  PrecisionScope scope(ctx.bits());
  return with_rung("nuG_recur_dn2", [&] {
    const BigReal one(1);
    BigReal k1 = K_minus(n1, q1, n3 + one, n2, params, ctx).value;
    BigReal k2 = K_minus(n1, q1, n2, n3 + one, params, ctx).value;
    return rung::nuG_dn2(n2, n3, here, k1, k2);
  });
}

BigReal nuG_recur_dn3(long n1, long q1, const BigReal& n2, const BigReal& n3,
                      const ParamTriple& params, const BigReal& here, const EvalContext& ctx) {
  PrecisionScope scope(ctx.bits());
  return with_rung("nuG_recur_dn3", [&] {
    const BigReal one(1);
    BigReal k1 = K_minus(n1, q1, n2 + one, n3, params, ctx).value;
    BigReal k2 = K_minus(n1, q1, n3, n2 + one, params, ctx).value;
    return rung::nuG_dn3(n2, n3, here, k1, k2);
  });
}

BigReal nuG_recur_q1(long n1, long q1, const BigReal& n2, const BigReal& n3,
                     const ParamTriple& params, const BigReal& below, const EvalContext& ctx) {
  PrecisionScope scope(ctx.bits());
  return with_rung("nuG_recur_q1", [&] {
    if (q1 < 1) throw DomainError("nuG_recur_q1 needs q1 >= 1");
    BigReal boundary = lead(n1, params) * detail::edge_beta(n2, n3) * exp(-params.p3);
    BigReal kab = K_minus(n1, q1, n2, n3, params, ctx).value;
    BigReal kba = K_minus(n1, q1, n3, n2, params, ctx).value;
    return rung::nuG_q1(n2, n3, q1, params.p3, below, boundary, kab, kba);
  });
}

namespace rung {

BigReal G_dn2(const BigReal& a, const BigReal& b, const BigReal& p2, const BigReal& p3,
              const BigReal& g_ab, const BigReal& k_fwd, const BigReal& k_bwd,
              const BigReal& n_term) {
  if (p3.is_zero()) throw DomainError("G recurrence undefined at p3 = 0");
  const BigReal b1 = b + BigReal(1);
  BigReal rhs = (p2 + p3) / p3 * g_ab + p2 / (p3 * b1) * (k_fwd - k_bwd) + n_term / b1;
  return rhs * p3 * b1 / ((p2 - p3) * a);
}

BigReal G_dn3(const BigReal& a, const BigReal& b, const BigReal& p2, const BigReal& p3,
              const BigReal& g_ab, const BigReal& k_fwd, const BigReal& k_bwd,
              const BigReal& n_term) {
  if (p3.is_zero()) throw DomainError("G recurrence undefined at p3 = 0");
  const BigReal a1 = a + BigReal(1);
  BigReal rhs = (p2 - p3) / p3 * g_ab - p2 / (p3 * a1) * (k_fwd - k_bwd) - n_term / a1;
  return rhs * p3 * a1 / ((p2 + p3) * b);
}

BigReal nuG_dn2(const BigReal& a, const BigReal& b, const BigReal& v_ab, const BigReal& km_b1_a,
                const BigReal& km_a_b1) {
  return ((b + BigReal(1)) * v_ab - km_b1_a + km_a_b1) / a;
}

BigReal nuG_dn3(const BigReal& a, const BigReal& b, const BigReal& v_ab, const BigReal& km_a1_b,
                const BigReal& km_b_a1) {
  return ((a + BigReal(1)) * v_ab - km_a1_b + km_b_a1) / b;
}

BigReal nuG_q1(const BigReal& a, const BigReal& b, long q1, const BigReal& p3,
               const BigReal& v_below, const BigReal& boundary, const BigReal& km_ab,
               const BigReal& km_ba) {
  BigReal denom = a + b - BigReal(q1 - 2);
  if (denom.is_zero())
    throw DomainError("q1 recurrence denominator n2+n3-q1+2 vanishes; shift q1 or the indices");
  return (p3 * v_below - boundary + km_ab + km_ba) / denom;
}

BigReal K1_step(const BigReal& a, const BigReal& b, long q, const BigReal& k1_shifted,
                const BigReal& km_a1_b) {
  const BigReal a1 = a + BigReal(1);
  return b / a1 * k1_shifted + km_a1_b / (ldexp(BigReal(1), q) * a1);
}

BigReal K_minus_step(const BigReal& a, const BigReal& b, long s, const BigReal& p3,
                     const BigReal& boundary, const BigReal& km_s, const BigReal& km_lower_sm1,
                     const BigReal& km_lower_s) {
  if (s < 1) throw DomainError("K_minus recurrence needs s >= 1");
  return (boundary - p3 * km_s + (a + b) * km_lower_sm1 - (a - b) * km_lower_s) / BigReal(s);
}

}  // namespace rung

}  // namespace stoaux
