// Serial reference vs OpenMP kernels, and the evaluation-path timing ratios.
#include <omp.h>

#include <chrono>
#include <cstdio>

#include "CLI11.hpp"
#include "criteria.hpp"

using namespace stoaux;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"stoaux benchmark"};
  EvalContext ctx;
  int reps = 3;
  int threads = omp_get_max_threads();
  int oracle_digits = 20;
  bool skip_ratios = false;
  cli.add_option("--digits", ctx.digits, "working digits")->check(CLI::Range(16, 200));
  cli.add_option("--repetitions", reps, "timed repetitions per point")->check(CLI::PositiveNumber);
  cli.add_option("--threads", threads, "OpenMP threads for the parallel runs")->check(CLI::PositiveNumber);
  cli.add_option("--oracle-digits", oracle_digits, "quadrature target digits")->check(CLI::Range(6, 60));
  cli.add_flag("--skip-ratios", skip_ratios, "only compare serial and parallel kernels");
  CLI11_PARSE(cli, argc, argv);
  omp_set_num_threads(threads);
  std::printf("threads %d (processors %d), digits %d\n\n", threads, omp_get_num_procs(), ctx.digits);

  // quadrature: serial node loop vs OpenMP node loop
  std::printf("%-34s %10s %10s %8s %s\n", "quad_G point", "serial s", "omp s", "speedup", "bitwise");
  const app::Sweep sample = accept::bench_sweep();
  for (size_t i = 0; i < sample.points.size(); i += 4) {
    const app::SweepPoint& p = sample.points[i];
    QuadSpec spec;
    spec.target_digits = oracle_digits;
    spec.parallel = false;
    auto t0 = Clock::now();
    const BigReal serial = quad_G(p.order, p.params, spec);
    const double ts = since(t0);
    spec.parallel = true;
    t0 = Clock::now();
    const BigReal par = quad_G(p.order, p.params, spec);
    const double tp = since(t0);
    char label[64];
    std::snprintf(label, sizeof label, "q=%ld n=(%s,%s) p2=%s p3=%s", p.order.q, p.order.n2.to_string(2).c_str(),
                  p.order.n3.to_string(2).c_str(), p.params.p2.to_string(2).c_str(),
                  p.params.p3.to_string(2).c_str());
    std::printf("%-34s %10.3f %10.3f %8.2f %s\n", label, ts, tp, ts / tp, serial == par ? "equal" : "DIFFER");
  }

  // sweep: one point per thread vs strictly serial
  {
    QuadSpec spec;
    spec.target_digits = 12;
    spec.parallel = false;
    auto t0 = Clock::now();
    const app::VerifySummary s1 = app::verify(sample, 1e-8, ctx, spec, 1);
    const double ts = since(t0);
    t0 = Clock::now();
    const app::VerifySummary sp = app::verify(sample, 1e-8, ctx, spec, threads);
    const double tp = since(t0);
    bool same = s1.rows.size() == sp.rows.size();
    for (size_t i = 0; same && i < s1.rows.size(); ++i)
      same = s1.rows[i].report && sp.rows[i].report && s1.rows[i].report->value == sp.rows[i].report->value;
    std::printf("\nverify sweep, %zu points: serial %.2f s, %d threads %.2f s, speedup %.2f, values %s\n",
                sample.points.size(), ts, threads, tp, ts / tp, same ? "equal" : "DIFFER");
  }

  if (skip_ratios) return 0;
  const accept::BenchOutcome b = accept::benchmark(ctx, reps, 25.0, 10.0);
  std::printf("\n%-34s %12s %12s %12s %s\n", "evaluation paths", "G_integer s", "evaluate_G s", "quad_G s", "");
  for (const auto& r : b.summary.rows) {
    char label[64];
    std::snprintf(label, sizeof label, "q=%ld n=(%s,%s) p2=%s p3=%s", r.point.order.q,
                  r.point.order.n2.to_string(2).c_str(), r.point.order.n3.to_string(2).c_str(),
                  r.point.params.p2.to_string(2).c_str(), r.point.params.p3.to_string(2).c_str());
    std::printf("%-34s %12.3e %12.3e %12.3e %s%s\n", label, r.integer_median, r.ladder_median, r.oracle_median,
                r.unstable ? "unstable " : "", r.error.c_str());
  }
  std::printf("\n%s %s\n", b.outcome.passed ? "PASS" : "FAIL", b.outcome.detail.c_str());
  return 0;
}
