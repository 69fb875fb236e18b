#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>
#include <sstream>

#include "stoaux/app.hpp"
#include "stoaux/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace stoaux::app {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string short_decimal(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Exact decimal reading of a sweep coordinate, so 0.3 means 3/10.
BigReal exact(double x) { return BigReal::from_string(short_decimal(x)); }

bool whole(double x) { return std::floor(x) == x; }

double iqr(std::vector<double> xs) {
  if (xs.size() < 2) return 0.0;
  std::sort(xs.begin(), xs.end());
  auto at = [&](double f) {
    double pos = f * static_cast<double>(xs.size() - 1);
    size_t lo = static_cast<size_t>(std::floor(pos));
    size_t hi = std::min(lo + 1, xs.size() - 1);
    return xs[lo] + (pos - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
  };
  return at(0.75) - at(0.25);
}

}  // namespace

void parallel_for(long n, int jobs, const std::function<void(long)>& body) {
#ifdef _OPENMP
  if (jobs > 1 && n > 1) {
    const mpfr_prec_t bits = working_bits();
    std::exception_ptr failure;
#pragma omp parallel num_threads(jobs)
    {
      PrecisionScope scope(bits);
#pragma omp for schedule(dynamic, 1)
      for (long i = 0; i < n; ++i) {
        try {
          body(i);
        } catch (...) {
#pragma omp critical(stoaux_parallel_for)
          if (!failure) failure = std::current_exception();
        }
      }
    }
    if (failure) std::rethrow_exception(failure);
    return;
  }
#endif
  (void)jobs;
  for (long i = 0; i < n; ++i) body(i);
}

Range Range::parse(const std::string& text) {
  Range r;
  if (text.empty()) return r;
  if (text.find(':') != std::string::npos) {
    double start, stop, step;
    char c1, c2;
    std::istringstream in(text);
    if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0))
      throw std::invalid_argument("range '" + text + "' is not start:stop:step with step > 0");
    for (long k = 0;; ++k) {
      double v = std::stod(short_decimal(start + static_cast<double>(k) * step));
      if (v > stop + 1e-12 * std::max(1.0, std::fabs(stop))) break;
      r.values.push_back(v);
    }
    return r;
  }
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    size_t used = 0;
    double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad number '" + item + "'");
    r.values.push_back(v);
  }
  return r;
}

Sweep expand(const SweepSpec& spec) {
  Sweep out;
  long id = 0;
  for (double n1 : spec.n1.values)
    for (double q : spec.q.values)
      for (double n2 : spec.n2.values)
        for (double n3 : spec.n3.values)
          for (double p2 : spec.p2.values)
            for (double t : spec.t.values) {
              try {
                if (!whole(n1) || !whole(q)) throw DomainError("n1 and q must be integers");
                OrderSpec order{static_cast<long>(n1), static_cast<long>(q), exact(n2), exact(n3)};
                order.validate();
                BigReal p2b = exact(p2);
                BigReal p1b = spec.p1 ? exact(*spec.p1) : p2b;
                BigReal p3b = p2b * exact(t);
                ScreeningParams params(p1b, p2b, p3b);
                out.points.push_back({++id, order, params});
              } catch (const NumericError&) {
                ++out.skipped;
              }
            }
  return out;
}

SweepSpec acceptance_grid() {
  SweepSpec s;
  s.n1 = {{0, 1}};
  s.q = {{0, 1}};
  s.n2 = {{0.3, 0.5, 1.5}};
  s.n3 = {{0.3, 0.5, 1.5}};
  s.p2 = {{0.5, 2, 8}};
  s.t = {{0, 0.2, 0.9}};
  return s;
}

double median(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  const size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

VerifySummary verify(const Sweep& sweep, double tolerance, const EvalContext& ctx,
                     const QuadSpec& quad, int jobs) {
  VerifySummary s;
  s.skipped = sweep.skipped;
  s.rows.resize(sweep.points.size());
  QuadSpec inner = quad;
  inner.parallel = inner.parallel && jobs <= 1;
  parallel_for(static_cast<long>(sweep.points.size()), jobs, [&](long i) {
    PointResult& r = s.rows[i];
    r.point = sweep.points[i];
    const ScreeningParams params(r.point.params.p1, r.point.params.p2, r.point.params.p3);
    try {
      r.report = evaluate_G(r.point.order, params, ctx);
      auto t0 = Clock::now();
      r.oracle = quad_G(r.point.order, params, inner);
      r.oracle_time = seconds_since(t0);
      r.rel_dev = rel_diff(r.report->value, *r.oracle);
    } catch (const std::exception& e) {
      r.error = e.what();
    }
  });
  std::vector<double> devs;
  for (const auto& r : s.rows) {
    if (!r.error.empty() || r.rel_dev > tolerance) ++s.failures;
    if (r.error.empty()) {
      devs.push_back(r.rel_dev);
      s.max_rel_dev = std::max(s.max_rel_dev, r.rel_dev);
    }
    if (r.report) s.eval_seconds += r.report->wall_time;
    s.oracle_seconds += r.oracle_time;
  }
  s.median_rel_dev = median(devs);
  return s;
}

BenchSummary bench(const Sweep& sweep, int repetitions, const EvalContext& ctx, bool with_oracle) {
  BenchSummary s;
  const int reps = std::max(1, repetitions);
  PrecisionScope scope(ctx.bits());
  std::vector<double> ints, ladders, oracles;
  for (const SweepPoint& p : sweep.points) {
    BenchRow row;
    row.point = p;
    try {
      const ScreeningParams params(p.params.p1, p.params.p2, p.params.p3);
      OrderSpec matched = p.order;
      matched.n2 = floor(p.order.n2 + BigReal(0.5));
      matched.n3 = floor(p.order.n3 + BigReal(0.5));
      std::vector<double> ti, tl;
      for (int k = 0; k < reps; ++k) {
        auto t0 = Clock::now();
        G_integer(matched, params, ctx);
        ti.push_back(seconds_since(t0));
        t0 = Clock::now();
        evaluate_G(p.order, params, ctx);
        tl.push_back(seconds_since(t0));
      }
      row.integer_median = median(ti);
      row.ladder_median = median(tl);
      if (reps > 1)
        row.unstable = iqr(ti) > 0.2 * row.integer_median || iqr(tl) > 0.2 * row.ladder_median;
      if (with_oracle) {
        QuadSpec q;
        q.target_digits = ctx.digits;
        q.parallel = false;
        auto t0 = Clock::now();
        quad_G(p.order, params, q);
        row.oracle_median = seconds_since(t0);
        oracles.push_back(row.oracle_median);
      }
      ints.push_back(row.integer_median);
      ladders.push_back(row.ladder_median);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    s.rows.push_back(std::move(row));
  }
  s.integer_median = median(ints);
  s.ladder_median = median(ladders);
  s.oracle_median = median(oracles);
  if (s.integer_median > 0) s.ladder_over_integer = s.ladder_median / s.integer_median;
  if (s.ladder_median > 0 && with_oracle) s.oracle_over_ladder = s.oracle_median / s.ladder_median;
  return s;
}

void write_csv_header(std::ostream& os) {
  os << "id,n1,q,n2,n3,p1,p2,p3,value,abs_err,terms,time_s\n";
}

void write_csv_row(std::ostream& os, const SweepPoint& p, const EvalReport& r, int digits) {
  char t[32];
  std::snprintf(t, sizeof t, "%.6g", r.wall_time);
  os << p.id << ',' << p.order.n1 << ',' << p.order.q << ',' << p.order.n2.to_string(12) << ','
     << p.order.n3.to_string(12) << ',' << p.params.p1.to_string(12) << ','
     << p.params.p2.to_string(12) << ',' << p.params.p3.to_string(12) << ','
     << r.value.to_string(digits) << ',' << r.abs_err.to_string(3) << ','
     << r.series_terms + r.recurrence_steps << ',' << t << '\n';
}

}  // namespace stoaux::app
