#include <random>

#include "criteria.hpp"
#include "test_util.hpp"

using namespace stoaux;
using namespace stoaux::accept;

// One quadrature-only point per recurrence; the acceptance run covers more.
TEST_CASE("recurrences close with every term from quadrature") {
  std::mt19937 rng(7);
  for (Closure c : {Closure::G_down_n2, Closure::G_down_n3, Closure::NuG_down_n2, Closure::NuG_down_n3,
                    Closure::NuG_raise_q1, Closure::K1_ladder, Closure::K_minus_raise, Closure::K_minus_expand}) {
    const ClosurePoint p = closure_point(c, rng, 16);
    CHECK_MESSAGE(p.residual <= 1e-12, p.where << " residual " << p.residual);
  }
}

TEST_CASE("random draws are reproducible three-decimal values") {
  std::mt19937 a(11), b(11);
  for (int i = 0; i < 20; ++i) {
    const std::string x = draw(a, 0.2, 1.5);
    CHECK(x == draw(b, 0.2, 1.5));
    CHECK(x.size() == 5);
    const double v = std::stod(x);
    CHECK(v >= 0.2);
    CHECK(v <= 1.5);
  }
}

TEST_CASE("closed-form and scalar suites pass at the default precision") {
  EvalContext ctx;
  const Outcome c = closed_forms(ctx);
  CHECK_MESSAGE(c.passed, c.detail);
  const Outcome s = scalar_identities(ctx);
  CHECK_MESSAGE(s.passed, s.detail);
}
