#include "criteria.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "stoaux/errors.hpp"
#include "stoaux/specfun.hpp"

namespace stoaux::accept {

namespace {

using Clock = std::chrono::steady_clock;

BigReal D(const std::string& text) { return BigReal::from_string(text); }

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

std::string fixed(double x, int places) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", places, x);
  return buf;
}

double tolerance_for(int digits, int slack) { return std::pow(10.0, -(digits - slack)); }

// Records one residual; keeps the first offending location for the report.
struct Tally {
  double tol;
  Outcome out;
  std::string first_bad;

  void add(double residual, const std::string& where) {
    ++out.checked;
    out.worst = std::max(out.worst, std::isnan(residual) ? INFINITY : residual);
    if (!(residual <= tol) && first_bad.empty()) first_bad = where + " residual " + sci(residual);
  }
  Outcome finish(const std::string& summary) {
    out.passed = first_bad.empty() && out.checked > 0;
    out.detail = summary + ", worst " + sci(out.worst) + " (tol " + sci(tol) + ")";
    if (!first_bad.empty()) out.detail += "; first failure at " + first_bad;
    return out;
  }
};

}  // namespace

std::string draw(std::mt19937& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  return fixed(u(rng), 3);
}

const char* closure_name(Closure c) {
  switch (c) {
    case Closure::G_down_n2: return "G ladder n2-1, n3+1";
    case Closure::G_down_n3: return "G ladder n2+1, n3-1";
    case Closure::NuG_down_n2: return "nuG ladder n2-1, n3+1";
    case Closure::NuG_down_n3: return "nuG ladder n2+1, n3-1";
    case Closure::NuG_raise_q1: return "nuG q1 raise";
    case Closure::K1_ladder: return "K1 ladder";
    case Closure::K_minus_raise: return "K- power raise";
    case Closure::K_minus_expand: return "K- binomial expansion";
  }
  return "?";
}

ClosurePoint closure_point(Closure c, std::mt19937& rng, int oracle_digits) {
  PrecisionScope scope(EvalContext{}.bits());
  QuadSpec spec;
  spec.target_digits = oracle_digits;
  std::uniform_int_distribution<long> small(0, 2);
  std::bernoulli_distribution coin(0.5);

  const long n1 = small(rng);
  const std::string p1 = draw(rng, 0.5, 2.0);
  const std::string p2 = draw(rng, 0.5, 3.0);
  // p3 is a decay rate for the ᵛ𝒢/𝒦 families and a signed fraction of p2 for 𝒢
  std::string p3;
  if (c == Closure::G_down_n2 || c == Closure::G_down_n3) {
    const double frac = std::stod(draw(rng, 0.2, 0.8)) * (coin(rng) ? 1 : -1);
    p3 = fixed(std::stod(p2) * frac, 3);
  } else {
    p3 = draw(rng, 0.3, 2.5);
  }
  const ParamTriple P{D(p1), D(p2), D(p3)};
  const BigReal one(1);
  const BigReal c_pre = order_prefactor(n1, P.p1);

  ClosurePoint pt;
  std::ostringstream where;
  where << closure_name(c) << " n1=" << n1;
  BigReal lhs, rhs;

  switch (c) {
    case Closure::G_down_n2:
    case Closure::G_down_n3: {
      const bool dn2 = c == Closure::G_down_n2;
      const BigReal a = D(dn2 ? draw(rng, 1.1, 2.6) : draw(rng, 0.2, 1.5));
      const BigReal b = D(dn2 ? draw(rng, 0.2, 1.5) : draw(rng, 1.1, 2.6));
      const ParamTriple fwd{P.p1, P.p3, P.p2};
      const ParamTriple bwd{P.p1, -P.p3, P.p2};
      const BigReal g_ab = quad_G({n1, 0, a, b}, P, spec);
      if (dn2) {
        const BigReal kf = quad_K(n1, 0, a, b + one, fwd, spec);
        const BigReal kb = quad_K(n1, 0, b + one, a, bwd, spec);
        const BigReal nt = quad_N(n1, 0, a, b + one, P, spec);
        rhs = rung::G_dn2(a, b, P.p2, P.p3, g_ab, kf, kb, nt);
        lhs = quad_G({n1, 0, a - one, b + one}, P, spec);
      } else {
        const BigReal kf = quad_K(n1, 0, a + one, b, fwd, spec);
        const BigReal kb = quad_K(n1, 0, b, a + one, bwd, spec);
        const BigReal nt = quad_N(n1, 0, a + one, b, P, spec);
        rhs = rung::G_dn3(a, b, P.p2, P.p3, g_ab, kf, kb, nt);
        lhs = quad_G({n1, 0, a + one, b - one}, P, spec);
      }
      where << " a=" << a.to_string(4) << " b=" << b.to_string(4);
      break;
    }
    case Closure::NuG_down_n2:
    case Closure::NuG_down_n3: {
      const bool dn2 = c == Closure::NuG_down_n2;
      const long q1 = small(rng);
      const BigReal a = D(dn2 ? draw(rng, 1.1, 2.6) : draw(rng, 0.2, 1.5));
      const BigReal b = D(dn2 ? draw(rng, 0.2, 1.5) : draw(rng, 1.1, 2.6));
      const BigReal v_ab = quad_nuG(n1, q1, 0, a, b, P, spec);
      if (dn2) {
        const BigReal k1 = quad_K(n1, -q1, b + one, a, P, spec);
        const BigReal k2 = quad_K(n1, -q1, a, b + one, P, spec);
        rhs = rung::nuG_dn2(a, b, v_ab, k1, k2);
        lhs = quad_nuG(n1, q1, 0, a - one, b + one, P, spec);
      } else {
        const BigReal k1 = quad_K(n1, -q1, a + one, b, P, spec);
        const BigReal k2 = quad_K(n1, -q1, b, a + one, P, spec);
        rhs = rung::nuG_dn3(a, b, v_ab, k1, k2);
        lhs = quad_nuG(n1, q1, 0, a + one, b - one, P, spec);
      }
      where << " q1=" << q1 << " a=" << a.to_string(4) << " b=" << b.to_string(4);
      break;
    }
    case Closure::NuG_raise_q1: {
      const long q1 = coin(rng) ? 1 : 2;
      const BigReal a = D(draw(rng, 0.2, 2.0));
      const BigReal b = D(draw(rng, 0.2, 2.0));
      const BigReal below = quad_nuG(n1, q1 - 1, 0, a, b, P, spec);
      const BigReal boundary = c_pre * exp(-P.p2) * pow(BigReal(2), a + b + one) *
                               beta(a + one, b + one) * exp(-P.p3);
      const BigReal k_ab = quad_K(n1, -q1, a, b, P, spec);
      const BigReal k_ba = quad_K(n1, -q1, b, a, P, spec);
      rhs = rung::nuG_q1(a, b, q1, P.p3, below, boundary, k_ab, k_ba);
      lhs = quad_nuG(n1, q1, 0, a, b, P, spec);
      where << " q1=" << q1 << " a=" << a.to_string(4) << " b=" << b.to_string(4);
      break;
    }
    case Closure::K1_ladder: {
      const long q = small(rng);
      const BigReal a = D(draw(rng, 0.2, 2.0));
      const BigReal b = D(draw(rng, 1.1, 2.6));
      const BigReal shifted = quad_K1(n1, q, a + one, b - one, P, spec);
      const BigReal km = quad_K(n1, -q, a + one, b, P, spec);
      rhs = rung::K1_step(a, b, q, shifted, km);
      lhs = quad_K1(n1, q, a, b, P, spec);
      where << " q=" << q << " a=" << a.to_string(4) << " b=" << b.to_string(4);
      break;
    }
    case Closure::K_minus_raise: {
      const long s = coin(rng) ? 1 : 2;
      const BigReal a = D(draw(rng, 1.1, 2.6));
      const BigReal b = D(draw(rng, 1.1, 2.0));
      const BigReal k_s = quad_K(n1, -s, a, b, P, spec);
      const BigReal low_sm1 = quad_K(n1, -(s - 1), a - one, b - one, P, spec);
      const BigReal low_s = quad_K(n1, -s, a - one, b - one, P, spec);
      rhs = rung::K_minus_step(a, b, s, P.p3, BigReal(0), k_s, low_sm1, low_s);
      lhs = quad_K(n1, -(s + 1), a, b, P, spec);
      where << " s=" << s << " a=" << a.to_string(4) << " b=" << b.to_string(4);
      break;
    }
    case Closure::K_minus_expand: {
      const long q1 = 1 + small(rng);
      const BigReal a = D(draw(rng, 0.2, 2.0));
      const BigReal b = D(draw(rng, 0.2, 2.0));
      rhs = BigReal(0);
      for (long s = 0; s <= q1; ++s) {
        BigReal term = binom(BigReal(q1), s) * quad_K(n1, q1 - 2 * s, a + BigReal(s), b + BigReal(s), P, spec);
        rhs += s % 2 ? -term : term;
      }
      lhs = quad_K(n1, -q1, a, b, P, spec);
      where << " q1=" << q1 << " a=" << a.to_string(4) << " b=" << b.to_string(4);
      break;
    }
  }
  where << " p=(" << p1 << "," << p2 << "," << p3 << ")";
  pt.where = where.str();
  pt.residual = rel_diff(rhs, lhs);
  return pt;
}

Outcome closure(Closure c, std::mt19937& rng, int points, int oracle_digits, double tol) {
  Tally t{tol, {}, {}};
  for (int i = 0; i < points; ++i) {
    try {
      ClosurePoint p = closure_point(c, rng, oracle_digits);
      t.add(p.residual, p.where);
    } catch (const std::exception& e) {
      t.add(INFINITY, std::string(closure_name(c)) + ": " + e.what());
    }
  }
  return t.finish(std::string(closure_name(c)) + ": " + std::to_string(t.out.checked) + " points");
}

Outcome oracle_grid(const EvalContext& ctx, const GridOptions& opt) {
  const auto t0 = Clock::now();
  const app::Sweep sweep = app::expand(app::acceptance_grid());
  QuadSpec spec;
  spec.target_digits = opt.oracle_digits;
  const app::VerifySummary v = app::verify(sweep, opt.tolerance, ctx, spec, opt.jobs);
  const double wall = std::chrono::duration<double>(Clock::now() - t0).count();

  Outcome out;
  out.checked = static_cast<long>(v.rows.size());
  out.worst = v.max_rel_dev;
  std::string first_bad;
  for (const auto& r : v.rows) {
    if (r.error.empty() && r.rel_dev <= opt.tolerance) continue;
    std::ostringstream s;
    s << "point " << r.point.id << " (n1=" << r.point.order.n1 << " q=" << r.point.order.q
      << " n2=" << r.point.order.n2.to_string(3) << " n3=" << r.point.order.n3.to_string(3)
      << " p2=" << r.point.params.p2.to_string(3) << " p3=" << r.point.params.p3.to_string(3)
      << ") " << (r.error.empty() ? "deviation " + sci(r.rel_dev) : r.error);
    first_bad = s.str();
    break;
  }
  out.passed = v.failures == 0 && v.skipped == 0 && out.checked > 0 && wall <= opt.budget_seconds;
  std::ostringstream d;
  d << out.checked << " points, max rel dev " << sci(v.max_rel_dev) << ", median "
    << sci(v.median_rel_dev) << " (tol " << sci(opt.tolerance) << "); evaluate_G "
    << fixed(v.eval_seconds, 1) << " s, quad_G " << fixed(v.oracle_seconds, 1) << " s, wall "
    << fixed(wall, 1) << " s (budget " << fixed(opt.budget_seconds, 0) << " s)";
  if (v.skipped) d << "; " << v.skipped << " points skipped";
  if (!first_bad.empty()) d << "; first failure at " << first_bad;
  out.detail = d.str();
  return out;
}

Outcome scalar_identities(const EvalContext& ctx) {
  PrecisionScope scope(ctx.bits());
  const double tight = tolerance_for(ctx.digits, 4);
  const double loose = tolerance_for(ctx.digits, 6);
  Outcome out;
  std::vector<std::string> parts;
  auto run = [&](const std::string& name, double tol, auto&& body) {
    Tally t{tol, {}, {}};
    try {
      body(t);
    } catch (const std::exception& e) {
      t.add(INFINITY, name + ": " + e.what());
    }
    Outcome o = t.finish(name);
    out.checked += o.checked;
    out.worst = std::max(out.worst, o.worst);
    if (!o.passed) parts.push_back(o.detail);
  };
  auto R = [](double x) { return BigReal::from_string(fixed(x, 4)); };

  run("P+Q=1", tight, [&](Tally& t) {
    for (double a = 0.25; a <= 5.0; a += 0.25)
      for (double z = 0.0; z <= 10.0; z += 0.5)
        t.add(rel_diff(inc_gamma_P(R(a), R(z), ctx.ctl) + inc_gamma_Q(R(a), R(z), ctx.ctl), BigReal(1)),
              "alpha=" + fixed(a, 2) + " z=" + fixed(z, 1));
  });
  run("beta complement", tight, [&](Tally& t) {
    for (double n = 0.25; n <= 4.0; n += 0.75)
      for (double m = 0.25; m <= 4.0; m += 0.75)
        for (double z = 0.05; z < 1.0; z += 0.1) {
          BigReal s = inc_beta(R(n), R(m), R(z), ctx.ctl) + inc_beta(R(m), R(n), BigReal(1) - R(z), ctx.ctl);
          t.add(rel_diff(s, beta(R(n), R(m))), "n=" + fixed(n, 2) + " n'=" + fixed(m, 2) + " z=" + fixed(z, 2));
        }
  });
  run("normalised beta complement and shifts", loose, [&](Tally& t) {
    const BigReal one(1);
    for (double n : {1.3, 2.7, 3.5})
      for (double m : {1.6, 2.2, 4.0})
        for (double z = 0.1; z < 0.95; z += 0.1) {
          const std::string at = "n=" + fixed(n, 1) + " n'=" + fixed(m, 1) + " z=" + fixed(z, 1);
          t.add(rel_diff(norm_beta(R(n), R(m), R(z), ctx.ctl) + norm_beta(R(m), R(n), one - R(z), ctx.ctl), one), at);
          t.add(rel_diff(norm_beta_shift_up(R(n), R(m), R(z), ctx.ctl),
                         norm_beta(R(n) + one, R(m) - one, R(z), ctx.ctl)), "up " + at);
          t.add(rel_diff(norm_beta_shift_down(R(n), R(m), R(z), ctx.ctl),
                         norm_beta(R(n) - one, R(m) + one, R(z), ctx.ctl)), "down " + at);
        }
  });
  run("normalised beta derivative", 1e-8, [&](Tally& t) {
    const BigReal h = BigReal::from_string("1e-12");
    for (auto [n, m] : {std::pair{1.3, 2.1}, std::pair{0.6, 3.4}, std::pair{2.5, 0.8}})
      for (int k = 1; k <= 9; ++k) {
        const BigReal z = R(0.1 * k);
        BigReal fd = (norm_beta(R(n), R(m), z + h, ctx.ctl) - norm_beta(R(n), R(m), z - h, ctx.ctl)) / (BigReal(2) * h);
        t.add(rel_diff(norm_beta_deriv(R(n), R(m), z), fd), "n=" + fixed(n, 1) + " n'=" + fixed(m, 1) + " z=" + fixed(0.1 * k, 1));
      }
  });
  run("elimination identity", loose, [&](Tally& t) {
    for (double N : {1.0, 2.5, 3.7, 6.0})
      for (long L : {0L, 1L, 2L})
        for (double x : {0.5, 1.0, 2.0, 5.0}) {
          if (N - L <= 0 && std::floor(N - L) == N - L) continue;
          t.add(elimination_identity_residual(R(N), L, R(x), ctx.ctl).to_double(),
                "N=" + fixed(N, 1) + " L=" + std::to_string(L) + " x=" + fixed(x, 1));
        }
  });
  run("B integral paths", 1e-12, [&](Tally& t) {
    for (long a = 0; a <= 10; ++a)
      for (double x = -20.0; x <= 20.0; x += 0.625) {
        if (x == 0.0) continue;
        t.add(rel_diff(b_integral_upward(a, R(x)), b_integral_mulliken(a, R(x))),
              "alpha=" + std::to_string(a) + " pt=" + fixed(x, 3));
      }
  });

  out.passed = parts.empty() && out.checked > 0;
  out.detail = std::to_string(out.checked) + " checks, worst " + sci(out.worst) + " against per-identity tolerances (" +
               sci(tight) + " / " + sci(loose) + " / 1e-8 / 1e-12)";
  for (const auto& p : parts) out.detail += "; " + p;
  return out;
}

Outcome symmetry(const EvalContext& ctx, std::mt19937& rng, int points, double tol) {
  PrecisionScope scope(ctx.bits());
  Tally t{tol, {}, {}};
  std::uniform_int_distribution<long> small(0, 2);
  std::uniform_int_distribution<long> bit(0, 1);
  for (int i = 0; i < points; ++i) {
    const long n1 = bit(rng);
    const long q = small(rng);
    const std::string n2 = draw(rng, 0.1, 2.5), n3 = draw(rng, 0.1, 2.5);
    const std::string p1 = draw(rng, 0.5, 3.0), p2 = draw(rng, 0.5, 6.0);
    const std::string p3 = fixed(std::stod(p2) * std::stod(draw(rng, -0.9, 0.9)), 3);
    const std::string at = "G n1=" + std::to_string(n1) + " q=" + std::to_string(q) + " n=(" + n2 + "," +
                           n3 + ") p=(" + p1 + "," + p2 + "," + p3 + ")";
    try {
      const BigReal a = evaluate_G({n1, q, D(n2), D(n3)}, ScreeningParams(D(p1), D(p2), D(p3)), ctx).value;
      BigReal b = evaluate_G({n1, q, D(n3), D(n2)}, ScreeningParams(D(p1), D(p2), -D(p3)), ctx).value;
      // (ξν)^q picks up (-1)^q under ν -> -ν
      if (q % 2) b = -b;
      t.add(rel_diff(a, b), at);
    } catch (const std::exception& e) {
      t.add(INFINITY, at + ": " + e.what());
    }
  }
  for (int i = 0; i < points; ++i) {
    const long n1 = bit(rng);
    const long q1 = small(rng);
    const std::string n2 = draw(rng, 0.1, 2.5), n3 = draw(rng, 0.1, 2.5);
    const std::string p1 = draw(rng, 0.5, 3.0), p2 = draw(rng, 0.5, 3.0), p3 = draw(rng, 0.3, 4.0);
    const std::string at = "nuG n1=" + std::to_string(n1) + " q1=" + std::to_string(q1) + " n=(" + n2 +
                           "," + n3 + ") p=(" + p1 + "," + p2 + "," + p3 + ")";
    try {
      const ParamTriple P{D(p1), D(p2), D(p3)};
      const BigReal a = nuG_beta_form(n1, q1, D(n2), D(n3), P, ctx).value;
      const BigReal b = nuG_beta_form(n1, q1, D(n3), D(n2), P, ctx).value;
      t.add(rel_diff(a, b), at);
    } catch (const std::exception& e) {
      t.add(INFINITY, at + ": " + e.what());
    }
  }
  return t.finish(std::to_string(points) + " G points with p3 -> -p3 (sign (-1)^q) and " + std::to_string(points) +
                  " nuG points, n2 <-> n3");
}

Outcome integer_continuity(const EvalContext& ctx, double eps, double tol) {
  struct Case {
    long n1, q;
    int n2, n3;
    double p2, t;
  };
  static const Case cases[] = {
      {0, 0, 1, 1, 1.0, 0.3}, {0, 1, 2, 0, 2.0, -0.5}, {1, 0, 0, 2, 4.0, 0.6},
      {0, 0, 2, 1, 1.5, 0.0}, {1, 1, 1, 3, 2.0, 0.4},  {0, 0, 3, 2, 3.0, -0.7},
      {0, 1, 0, 0, 1.0, 0.2}, {1, 0, 2, 2, 0.8, -0.3}, {0, 2, 1, 0, 2.5, 0.5},
      {0, 0, 3, 1, 5.0, 0.8},
  };
  PrecisionScope scope(ctx.bits());
  Tally t{tol, {}, {}};
  const BigReal e = BigReal::from_string(sci(eps));
  int k = 0;
  for (const Case& c : cases) {
    const BigReal p2 = D(fixed(c.p2, 3));
    const ScreeningParams params(p2, p2, p2 * D(fixed(c.t, 3)));
    const int dir = (k++ % 2) ? -1 : 1;
    std::ostringstream at;
    at << "n1=" << c.n1 << " q=" << c.q << " n=(" << c.n2 << "," << c.n3 << ") shifted "
       << (dir > 0 ? "(+,-)" : "(-,+)") << " p2=" << c.p2 << " t=" << c.t;
    try {
      const BigReal exact = G_integer({c.n1, c.q, BigReal(c.n2), BigReal(c.n3)}, params, ctx).value;
      const BigReal shift = dir > 0 ? e : -e;
      const OrderSpec near{c.n1, c.q, BigReal(c.n2) + shift, BigReal(c.n3) - shift};
      t.add(rel_diff(evaluate_G(near, params, ctx).value, exact), at.str());
    } catch (const std::exception& ex) {
      t.add(INFINITY, at.str() + ": " + ex.what());
    }
  }
  return t.finish(std::to_string(t.out.checked) + " integer points at offset " + sci(eps));
}

app::Sweep bench_sweep() {
  app::SweepSpec s;
  s.n1 = {{0}};
  s.q = {{0, 1}};
  s.n2 = {{0.5, 1.3}};
  s.n3 = {{1.5}};
  s.p2 = {{1, 4}};
  s.t = {{0.3, -0.5}};
  return app::expand(s);
}

BenchOutcome benchmark(const EvalContext& ctx, int repetitions, double max_ladder_ratio,
                       double min_oracle_ratio) {
  BenchOutcome b;
  b.summary = app::bench(bench_sweep(), repetitions, ctx, true);
  Outcome& o = b.outcome;
  long errors = 0;
  for (const auto& r : b.summary.rows) {
    ++o.checked;
    if (!r.error.empty()) ++errors;
  }
  const double lr = b.summary.ladder_over_integer;
  const double orr = b.summary.oracle_over_ladder;
  o.worst = lr;
  o.passed = errors == 0 && o.checked > 0 && lr > 0 && lr <= max_ladder_ratio && orr >= min_oracle_ratio;
  std::ostringstream d;
  d << o.checked << " points, medians: G_integer " << sci(b.summary.integer_median) << " s, evaluate_G "
    << sci(b.summary.ladder_median) << " s, quad_G " << sci(b.summary.oracle_median)
    << " s; evaluate_G/G_integer = " << fixed(lr, 1) << " (need <= " << fixed(max_ladder_ratio, 0)
    << "), quad_G/evaluate_G = " << fixed(orr, 1) << " (need >= " << fixed(min_oracle_ratio, 0) << ")";
  if (errors) d << "; " << errors << " points raised errors";
  o.detail = d.str();
  return b;
}

Outcome closed_forms(const EvalContext& ctx) {
  PrecisionScope scope(ctx.bits());
  Tally t{tolerance_for(ctx.digits, 4), {}, {}};
  const BigReal one(1), two(2), zero(0);
  try {
    t.add(rel_diff(evaluate_G({0, 0, zero, zero}, ScreeningParams(one, one, zero), ctx).value, two * exp(-one)),
          "G(0,0,0,0;1,1,0)");
    t.add(rel_diff(N_func(0, 0, zero, zero, {one, one, one}, ctx).value, one - exp(-two)), "N(0,0,0,0;1,1,1)");
    t.add(rel_diff(K_plus(0, 0, zero, zero, {one, one, one}, ctx).value, exp(-two)), "K+(0,0,0,0;1,1,1)");
  } catch (const std::exception& e) {
    t.add(INFINITY, e.what());
  }
  return t.finish("G = 2/e, N = 1 - e^-2, K+ = e^-2");
}

}  // namespace stoaux::accept
