#pragma once

#include <random>
#include <string>
#include <vector>

#include "stoaux/app.hpp"
#include "stoaux/context.hpp"

// Checks shared by the acceptance binary and the unit tests.
namespace stoaux::accept {

struct Outcome {
  bool passed = false;
  double worst = 0.0;  // largest relative deviation or residual seen
  long checked = 0;
  std::string detail;
};

// --- recurrence closure, every term from quadrature ------------------------

enum class Closure {
  G_down_n2,        // 𝒢_{a-1,b+1} from 𝒢_{a,b}
  G_down_n3,        // 𝒢_{a+1,b-1} from 𝒢_{a,b}
  NuG_down_n2,      // ᵛ𝒢 ladder toward smaller n2
  NuG_down_n3,      // ᵛ𝒢 ladder toward smaller n3
  NuG_raise_q1,     // ᵛ𝒢^{q1} from ᵛ𝒢^{q1-1}
  K1_ladder,        // ¹𝒦_{a,b} from ¹𝒦_{a+1,b-1}
  K_minus_raise,    // ⁻𝒦^{s+1} from ⁻𝒦^{s} and the lowered pair
  K_minus_expand,   // ⁻𝒦^{q1} as a binomial sum of ±𝒦 at shifted indices
};

const char* closure_name(Closure c);

struct ClosurePoint {
  std::string where;  // readable parameters
  double residual = 0.0;
};

// Residual of one random valid point; values drawn from `rng` are rounded to
// three decimals.
ClosurePoint closure_point(Closure c, std::mt19937& rng, int oracle_digits);

Outcome closure(Closure c, std::mt19937& rng, int points, int oracle_digits, double tol);

// --- the suites ------------------------------------------------------------

struct GridOptions {
  double tolerance = 1e-8;
  int oracle_digits = 12;
  double budget_seconds = 600.0;
  int jobs = 1;
};
Outcome oracle_grid(const EvalContext& ctx, const GridOptions& opt);

Outcome scalar_identities(const EvalContext& ctx);

Outcome symmetry(const EvalContext& ctx, std::mt19937& rng, int points, double tol);

Outcome integer_continuity(const EvalContext& ctx, double eps, double tol);

struct BenchOutcome {
  Outcome outcome;
  app::BenchSummary summary;
};
app::Sweep bench_sweep();
BenchOutcome benchmark(const EvalContext& ctx, int repetitions, double max_ladder_ratio,
                       double min_oracle_ratio);

Outcome closed_forms(const EvalContext& ctx);

// Uniform draw rounded to three decimals, as exact decimal text.
std::string draw(std::mt19937& rng, double lo, double hi);

}  // namespace stoaux::accept
