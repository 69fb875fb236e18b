#include <cmath>
#include <vector>

#include "moments.hpp"
#include "report.hpp"
#include "stoaux/auxfun.hpp"
#include "stoaux/errors.hpp"
#include "stoaux/specfun.hpp"

namespace stoaux {

using detail::timed_report;

ScreeningParams::ScreeningParams(const BigReal& p1_, const BigReal& p2_, const BigReal& p3_)
    : ParamTriple{p1_, p2_, p3_} {
  if (p1.sign() <= 0) throw DomainError("screening parameters need p1 > 0");
  if (p2.sign() <= 0) throw DomainError("screening parameters need p2 > 0");
  if (abs(p3) > p2) throw DomainError("screening parameters need -p2 <= p3 <= p2");
}

ScreeningParams ScreeningParams::from_orbitals(const BigReal& zeta, const BigReal& zeta_prime,
                                               const BigReal& distance) {
  if (zeta.sign() <= 0 || zeta_prime.sign() <= 0 || distance.sign() <= 0)
    throw DomainError("orbital exponents and distance must be positive");
  BigReal total = zeta + zeta_prime;
  BigReal p = distance * total / BigReal(2);
  return ScreeningParams(p, p, p * (zeta - zeta_prime) / total);
}

ScreeningParams ScreeningParams::from_pt(const BigReal& p1, const BigReal& p2, const BigReal& t) {
  return ScreeningParams(p1, p2, p2 * t);
}

bool OrderSpec::integer_branch() const { return n2.is_integer() && n3.is_integer(); }

void OrderSpec::validate() const {
  if (n1 < 0) throw DomainError("order needs n1 >= 0");
  if (q < 0) throw DomainError("order needs q >= 0");
  const BigReal m1(-1);
  if (n2 <= m1 || n3 <= m1) throw DomainError("order needs n2, n3 > -1");
}

std::vector<IndexTerm> G_reduce_q(const OrderSpec& order) {
  order.validate();
  return nuG_reduce_q2(order.q, order.n2, order.n3);
}

EvalReport G_integer(const OrderSpec& order, const ScreeningParams& params,
                     const EvalContext& ctx) {
  return timed_report(ctx, "G_integer", [&](EvalReport& r) {
    order.validate();
    if (!order.integer_branch() || order.n2.sign() < 0 || order.n3.sign() < 0)
      throw DomainError("G_integer needs non-negative integer n2, n3");
    const long n2 = order.n2.to_long();
    const long n3 = order.n3.to_long();
    r.series_terms = n2 + n3 + 1;
    BigReal sum = with_cancellation_guard([&] {
      BigReal total;
      BigReal scale;
      for (long s = 0; s <= n2 + n3; ++s) {
        BigReal f = gen_binom_F(s, n2, n3);
        if (f.is_zero()) continue;
        BigReal t = f * mulliken_A(BigReal(n2 + n3 + order.q - s), params.p2, ctx.ctl) *
                    b_integral(order.q + s, params.p3);
        total += t;
        scale = max(scale, abs(t));
      }
      return Guarded{total, scale};
    });
    return order_prefactor(order.n1, params.p1) * sum;
  });
}

namespace {

// Triangular table of ⁻𝒦^{q}-type moments ∫ ξ^{-q} (ξ+1)^{x0+i} (ξ-1)^{y0+j} e^{-lam ξ}
// for i + j <= size, one level q at a time.
class Level {
 public:
  const BigReal& at(long i, long j) const { return rows_[i][j]; }

  static Level base(const BigReal& x0, const BigReal& y0, const BigReal& lam, long size,
                    const SeriesControl& ctl) {
    Level lv;
    lv.size_ = size;
    lv.rows_.resize(size + 1);
    auto& col = lv.rows_[0];
    col.resize(size + 1);
    col[0] = detail::plus_minus_moment(x0, y0, lam, ctl);
    if (size >= 1) col[1] = detail::plus_minus_moment(x0, y0 + BigReal(1), lam, ctl);
    const BigReal two_lam = BigReal(2) * lam;
    for (long j = 1; j < size; ++j) {
      BigReal y = y0 + BigReal(j);
      col[j + 1] = ((x0 + y + BigReal(1) - two_lam) * col[j] + BigReal(2) * y * col[j - 1]) / lam;
    }
    for (long i = 1; i <= size; ++i) {
      auto& row = lv.rows_[i];
      const auto& up = lv.rows_[i - 1];
      row.resize(size - i + 1);
      for (long j = 0; j <= size - i; ++j) row[j] = up[j + 1] + BigReal(2) * up[j];
    }
    return lv;
  }

  Level next(long q, const BigReal& x0, const BigReal& y0, const BigReal& lam,
             const SeriesControl& ctl, long* terms) const {
    Level lv;
    lv.size_ = size_ - 1;
    lv.rows_.resize(lv.size_ + 1);
    for (long i = 0; i <= lv.size_; ++i) lv.rows_[i].resize(lv.size_ - i + 1);
    auto& first = lv.rows_[0];
    first[0] = detail::inverse_power_moment(q, x0, y0, lam, ctl, terms);
    // ξ^{-q}(ξ-1) = ξ^{-(q-1)} - ξ^{-q} and ξ^{-q}(ξ+1) = ξ^{-(q-1)} + ξ^{-q}
    for (long j = 0; j < lv.size_; ++j) first[j + 1] = rows_[0][j] - first[j];
    for (long i = 0; i < lv.size_; ++i)
      for (long j = 0; j + i + 1 <= lv.size_; ++j)
        lv.rows_[i + 1][j] = lv.rows_[i][j] + rows_[i][j];
    return lv;
  }

 private:
  long size_ = 0;
  std::vector<std::vector<BigReal>> rows_;
};

struct SeriesOutcome {
  BigReal value;
  BigReal max_term;
  BigReal tail;
  long terms = 0;
  long steps = 0;
};

// Number of exponential-series terms beyond s = 0 so that the omitted tail,
// bounded by e^{2|p3|} |p3|^{S+1}/(S+1)! relative to the sum, is below one ulp.
long series_length(const BigReal& p3) {
  const double x = std::fabs(p3.to_double());
  if (x == 0.0) return 0;
  const double target = -static_cast<double>(working_bits()) * std::log(2.0) - 2.0 * x;
  for (long s = 0;; ++s) {
    double log_term = static_cast<double>(s + 1) * std::log(x) - std::lgamma(s + 2.0);
    if (log_term < target && static_cast<double>(s + 1) > x) return s;
  }
}

// Σ_s (-p3)^s/s! ∫∫ ν^s (ξ+ν)^A (ξ-ν)^B e^{-lam ξ}; each moment is split by
// (ξν)^s into ξ^{-s}-weighted members produced from the incomplete-beta anchor
// by recurrences over the first index, over q1 and along n2 + n3 = const.
SeriesOutcome exponential_series(const BigReal& A, const BigReal& B, const BigReal& lam,
                                 const BigReal& p3, const SeriesControl& ctl) {
  SeriesOutcome out;
  const long S = series_length(p3);
  BigReal v0 = detail::nu_bare(0, A, B, lam, ctl, &out.terms);
  out.value = v0;
  out.max_term = abs(v0);
  out.terms += 1;
  if (S == 0) return out;

  const BigReal one(1);
  const BigReal two(2);
  const BigReal elam = exp(-lam);
  const long size = 3 * S + 2;
  Level D = Level::base(A, B, lam, size, ctl);
  Level W = Level::base(B, A, lam, size, ctl);

  // q1 = 0 members with the second index fixed at B
  std::vector<BigReal> chain(S + 1);
  chain[0] = v0;
  BigReal v = v0;
  for (long j = 0; j < 2 * S; ++j) {
    BigReal a = A + BigReal(j);
    BigReal edge = detail::edge_beta(a + one, B) * elam;
    v = (two * (a + one) * v + W.at(0, j + 1) - D.at(j + 1, 0) + edge) / lam;
    if ((j + 1) % 2 == 0) chain[(j + 1) / 2] = v;
    ++out.steps;
  }
  std::vector<BigReal> edge(S + 1);
  for (long s = 0; s <= S; ++s) edge[s] = detail::edge_beta(A + BigReal(2 * s), B) * elam;

  BigReal weight(1);  // (-p3)^s / s!
  std::vector<BigReal> vals;
  for (long q = 0; q <= S; ++q) {
    if (q >= 1) {
      D = D.next(q, A, B, lam, ctl, &out.terms);
      W = W.next(q, B, A, lam, ctl, &out.terms);
      for (long s = q; s <= S; ++s) {
        BigReal denom = A + B + BigReal(2 * s - q + 2);
        chain[s] = (lam * chain[s] - edge[s] + D.at(2 * s, 0) + W.at(0, 2 * s)) / denom;
        ++out.steps;
      }
      weight *= -p3;
      weight /= q;
    } else {
      continue;
    }
    const long s = q;
    vals.assign(2 * s + 1, BigReal());
    vals[2 * s] = chain[s];
    BigReal cur = chain[s];
    for (long j = 2 * s; j >= 1; --j) {
      BigReal a = A + BigReal(j);
      BigReal b = B + BigReal(2 * s - j);
      cur = ((b + one) * cur - W.at(2 * s - j + 1, j) + D.at(j, 2 * s - j + 1)) / a;
      vals[j - 1] = cur;
      ++out.steps;
    }
    BigReal m;
    for (long k = 0; k <= s; ++k) {
      BigReal t = binom(BigReal(s), k) * vals[2 * s - 2 * k];
      if (k % 2) m -= t;
      else m += t;
    }
    m = ldexp(m, -2 * s);
    BigReal term = weight * m;
    out.value += term;
    out.max_term = max(out.max_term, abs(term));
    ++out.terms;
  }
  const double x = std::fabs(p3.to_double());
  out.tail = abs(v0) * BigReal(std::exp(static_cast<double>(S + 1) * std::log(x) -
                                        std::lgamma(S + 2.0) + x));
  return out;
}

}  // namespace

EvalReport G_start(const OrderSpec& order, const ScreeningParams& params,
                   const EvalContext& ctx) {
  return timed_report(ctx, "G_start", [&](EvalReport& r) {
    order.validate();
    if (order.q != 0) throw DomainError("G_start needs q = 0; expand with G_reduce_q first");
    SeriesOutcome out;
    const mpfr_prec_t base = working_bits();
    BigReal sum;
    {
      // the lattice recurrences shed a slowly growing number of bits
      PrecisionScope extra(base + 24 + base / 16);
      sum = with_cancellation_guard(
          [&] {
            out = exponential_series(order.n2, order.n3, params.p2, params.p3, ctx.ctl);
            return Guarded{out.value, out.max_term};
          },
          4, 32);
    }
    sum = sum.rounded_to(base);
    BigReal c = order_prefactor(order.n1, params.p1);
    r.series_terms = out.terms;
    r.recurrence_steps = out.steps;
    r.abs_err = c * (out.tail + detail::rounding_bound(out.max_term, 64 + out.steps));
    return c * sum;
  });
}

namespace {

// One q = 0 rung along n2 + n3 = const; `down` moves to (a-1, b+1), otherwise to (a+1, b-1).
BigReal g_rung(long n1, const BigReal& a, const BigReal& b, const ScreeningParams& params,
               const BigReal& g_ab, bool down, const EvalContext& ctx) {
  const BigReal one(1);
  const ParamTriple fwd{params.p1, params.p3, params.p2};
  const ParamTriple bwd{params.p1, -params.p3, params.p2};
  return with_cancellation_guard([&] {
    EvalContext inner = ctx;
    inner.digits = bits_to_digits(working_bits()) - kGuardDigits;
    BigReal kf, kb, nt, res, big;
    const BigReal& p2 = params.p2;
    const BigReal& p3 = params.p3;
    if (down) {
      kf = K_plus(n1, 0, a, b + one, fwd, inner).value;
      kb = K_plus(n1, 0, b + one, a, bwd, inner).value;
      nt = N_func(n1, 0, a, b + one, params, inner).value;
      res = rung::G_dn2(a, b, p2, p3, g_ab, kf, kb, nt);
      BigReal b1 = b + one;
      big = max(abs((p2 + p3) / p3 * g_ab), max(abs(p2 / (p3 * b1) * kf), abs(p2 / (p3 * b1) * kb)));
      big *= abs(p3 * b1 / ((p2 - p3) * a));
    } else {
      kf = K_plus(n1, 0, a + one, b, fwd, inner).value;
      kb = K_plus(n1, 0, b, a + one, bwd, inner).value;
      nt = N_func(n1, 0, a + one, b, params, inner).value;
      res = rung::G_dn3(a, b, p2, p3, g_ab, kf, kb, nt);
      BigReal a1 = a + one;
      big = max(abs((p2 - p3) / p3 * g_ab), max(abs(p2 / (p3 * a1) * kf), abs(p2 / (p3 * a1) * kb)));
      big *= abs(p3 * a1 / ((p2 + p3) * b));
    }
    return Guarded{res, big};
  });
}

}  // namespace

BigReal G_recur_dn2(const OrderSpec& order, const ScreeningParams& params, const BigReal& g_here,
                    const EvalContext& ctx) {
  PrecisionScope scope(ctx.bits());
  return with_rung("G_recur_dn2", [&] {
    order.validate();
    if (params.p3.is_zero()) throw DomainError("G recurrence undefined at p3 = 0; use G_start");
    return g_rung(order.n1, order.n2, order.n3, params, g_here, true, ctx);
  });
}

BigReal G_recur_dn3(const OrderSpec& order, const ScreeningParams& params, const BigReal& g_here,
                    const EvalContext& ctx) {
  PrecisionScope scope(ctx.bits());
  return with_rung("G_recur_dn3", [&] {
    order.validate();
    if (params.p3.is_zero()) throw DomainError("G recurrence undefined at p3 = 0; use G_start");
    return g_rung(order.n1, order.n2, order.n3, params, g_here, false, ctx);
  });
}

EvalReport evaluate_G(const OrderSpec& order, const ScreeningParams& params,
                      const EvalContext& ctx) {
  order.validate();
  if (order.integer_branch() && order.n2.sign() >= 0 && order.n3.sign() >= 0)
    return G_integer(order, params, ctx);
  if (order.q == 0) return G_start(order, params, ctx);

  return timed_report(ctx, "evaluate_G", [&](EvalReport& r) {
    std::vector<IndexTerm> pieces = G_reduce_q(order);
    const long q = order.q;
    std::vector<BigReal> values(q + 1);
    BigReal err;
    auto start_at = [&](long s) {
      OrderSpec o{order.n1, 0, pieces[s].n2, pieces[s].n3};
      EvalReport e = G_start(o, params, ctx);
      r.series_terms += e.series_terms;
      r.recurrence_steps += e.recurrence_steps;
      err += abs(pieces[s].coef) * e.abs_err;
      return e.value;
    };
    if (params.p3.is_zero()) {
      for (long s = 0; s <= q; ++s) values[s] = start_at(s);
    } else if (params.p3.sign() > 0) {
      // moving toward larger n2 damps errors when p3 > 0
      values[q] = start_at(q);
      BigReal cur = values[q];
      BigReal a = pieces[q].n2;
      BigReal b = pieces[q].n3;
      for (long s = q - 1; s >= 0; --s) {
        for (int k = 0; k < 2; ++k) {
          cur = with_rung("G rung (n2+1, n3-1)",
                          [&] { return g_rung(order.n1, a, b, params, cur, false, ctx); });
          a += BigReal(1);
          b -= BigReal(1);
          ++r.recurrence_steps;
        }
        values[s] = cur;
      }
    } else {
      values[0] = start_at(0);
      BigReal cur = values[0];
      BigReal a = pieces[0].n2;
      BigReal b = pieces[0].n3;
      for (long s = 1; s <= q; ++s) {
        for (int k = 0; k < 2; ++k) {
          cur = with_rung("G rung (n2-1, n3+1)",
                          [&] { return g_rung(order.n1, a, b, params, cur, true, ctx); });
          a -= BigReal(1);
          b += BigReal(1);
          ++r.recurrence_steps;
        }
        values[s] = cur;
      }
    }
    BigReal sum;
    BigReal scale;
    for (long s = 0; s <= q; ++s) {
      BigReal t = pieces[s].coef * values[s];
      sum += t;
      scale = max(scale, abs(t));
    }
    r.abs_err = err + detail::rounding_bound(scale, 64 + r.recurrence_steps);
    return sum;
  });
}

}  // namespace stoaux
