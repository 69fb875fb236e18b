// Acceptance run: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <set>

#include "CLI11.hpp"
#include "criteria.hpp"

using namespace stoaux;
using namespace stoaux::accept;

namespace {

void print(int id, const char* title, const Outcome& o, double seconds) {
  std::printf("criterion %d %-28s %s  %s  [%.1f s]\n", id, title, o.passed ? "PASS" : "FAIL",
              o.detail.c_str(), seconds);
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"stoaux acceptance criteria"};
  std::set<int> only;
  std::set<int> expect_fail;
  unsigned seed = 20240917;
  int jobs = 1;
  EvalContext ctx;
  ctx.digits = 32;
  cli.add_option("--only", only, "run only these criteria")->check(CLI::Range(1, 7));
  cli.add_option("--expect-fail", expect_fail,
                 "criteria whose FAIL is known and analysed; they do not set the exit status")
      ->check(CLI::Range(1, 7));
  cli.add_option("--seed", seed, "seed for the random points");
  cli.add_option("--jobs", jobs, "threads for the oracle grid");
  cli.add_option("--digits", ctx.digits, "working digits")->check(CLI::Range(16, 200));
  CLI11_PARSE(cli, argc, argv);

  auto wanted = [&](int id) { return only.empty() || only.count(id); };
  int unexpected = 0;
  auto record = [&](int id, const char* title, auto&& run) {
    if (!wanted(id)) return;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("aborted: ") + e.what();
    }
    print(id, title, o, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    const bool expected_failure = expect_fail.count(id) > 0;
    if (o.passed == expected_failure) {
      ++unexpected;
      if (expected_failure) std::printf("  criterion %d passed although listed as an expected failure\n", id);
    }
  };

  record(1, "oracle equivalence grid", [&] {
    GridOptions opt;
    opt.jobs = jobs;
    return oracle_grid(ctx, opt);
  });

  record(2, "recurrence closure", [&] {
    std::mt19937 rng(seed);
    Outcome all;
    all.passed = true;
    std::string parts;
    for (Closure c : {Closure::G_down_n2, Closure::G_down_n3, Closure::NuG_down_n2, Closure::NuG_down_n3,
                      Closure::NuG_raise_q1, Closure::K1_ladder, Closure::K_minus_raise}) {
      Outcome o = closure(c, rng, 5, 18, 1e-12);
      std::printf("  %s %s\n", o.passed ? "ok  " : "FAIL", o.detail.c_str());
      all.passed = all.passed && o.passed;
      all.checked += o.checked;
      all.worst = std::max(all.worst, o.worst);
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "7 identities, %ld points, worst residual %.2e (tol 1.00e-12)", all.checked,
                  all.worst);
    all.detail = buf;
    return all;
  });

  record(3, "scalar kernel identities", [&] { return scalar_identities(ctx); });

  record(4, "symmetry", [&] {
    std::mt19937 rng(seed + 4);
    return symmetry(ctx, rng, 20, 1e-10);
  });

  record(5, "integer continuity", [&] { return integer_continuity(ctx, 1e-5, 1e-4); });

  record(6, "benchmark ratios", [&] { return benchmark(ctx, 3, 25.0, 10.0).outcome; });

  record(7, "closed-form values", [&] { return closed_forms(ctx); });

  return unexpected == 0 ? 0 : 1;
}
