#include "stoaux/auxfun.hpp"
#include "stoaux/errors.hpp"
#include "stoaux/oracle.hpp"
#include "stoaux/specfun.hpp"
#include "test_util.hpp"

using namespace stoaux;
using test::close;
using test::R;

namespace {

QuadSpec at(int digits, bool parallel = true) {
  QuadSpec s;
  s.target_digits = digits;
  s.parallel = parallel;
  return s;
}

}  // namespace

TEST_CASE("quadrature reproduces closed forms") {
  test::Working w;
  const BigReal one(1), two(2), zero(0);
  const ParamTriple unit{one, one, one};
  CHECK(close(quad_G({0, 0, zero, zero}, {one, one, zero}, at(20)), two * exp(-one), 1e-20));
  CHECK(close(quad_G({0, 0, zero, zero}, {one, one, R("0.5")}, at(20)), two * exp(-one) * sinh(R("0.5")) / R("0.5"),
              1e-20));
  CHECK(close(quad_N(0, 0, zero, zero, unit, at(20)), one - exp(-two), 1e-20));
  CHECK(close(quad_K(0, 0, zero, zero, unit, at(20)), exp(-two), 1e-20));
  CHECK(close(quad_K(0, -1, zero, zero, unit, at(20)), R("0.0807068391874163622180500996276"), 1e-20));
  CHECK(close(quad_K1(0, 0, zero, zero, unit, at(20)), R(3) * exp(-two), 1e-20));
  CHECK(close(quad_nuG(0, 1, 0, zero, zero, unit, at(20)), R("0.161413678374832724436100199255"), 1e-20));
}

TEST_CASE("quadrature against high-precision references") {
  test::Working w;
  CHECK(close(quad_G({1, 1, R("1.5"), R("0.5")}, {R(1), R(2), R(1)}, at(16)),
              R("-0.08367591287600089651100883003167733969291"), 1e-15));
  CHECK(close(quad_G({0, 0, R("-0.7"), R("-0.4")}, {R(1), R(2), R("0.6")}, at(14)),
              R("0.1349815813976577006941249128430419872463"), 1e-13));
  CHECK(close(quad_K1(0, 1, R("0.7"), R("1.3"), {R(1), R(1), R("0.9")}, at(16)),
              R("0.5620050553087305460205020069255692357501"), 1e-15));
  CHECK(close(quad_nuG(0, 0, 2, R("0.5"), R("1.5"), {R(1), R(1), R("0.8")}, at(16)),
              R("17.65476561373518576291327007494794426612"), 1e-15));
}

TEST_CASE("q reduction is consistent under quadrature") {
  test::Working w;
  const OrderSpec o{0, 1, R("0.7"), R("1.3")};
  const ParamTriple p{R(1), R("1.5"), R("0.4")};
  BigReal sum;
  for (const IndexTerm& t : G_reduce_q(o)) sum += t.coef * quad_G({0, 0, t.n2, t.n3}, p, at(16));
  CHECK(close(sum, quad_G(o, p, at(16)), 1e-15));
}

TEST_CASE("P plus Q auxiliary integrals reduce to the gamma-free integral") {
  test::Working w;
  const long n1 = 1;
  const BigReal n2 = R("0.5"), n3 = R("1.5"), n4 = R("2.5");
  const ParamTriple p{R("0.9"), R("1.5"), R("0.3")};
  const BigReal sum = quad_PQ_aux(n1, 0, n2, n3, n4, p, GammaBranch::P, at(14)) +
                      quad_PQ_aux(n1, 0, n2, n3, n4, p, GammaBranch::Q, at(14));
  // p1^n1/(n4-n1)_n1 ∫∫ ... = 𝒢 · n1!/(n4-n1)_n1
  const BigReal expect = quad_G({n1, 0, n2, n3}, p, at(14)) / pochhammer(n4 - BigReal(n1), n1);
  CHECK(close(sum, expect, 1e-13));
}

TEST_CASE("serial and OpenMP node loops give identical sums") {
  test::Working w;
  const OrderSpec o{0, 1, R("0.3"), R("1.5")};
  const ParamTriple p{R(2), R(2), R("0.4")};
  CHECK(quad_G(o, p, at(14, false)) == quad_G(o, p, at(14, true)));
  CHECK(quad_K1(0, 1, R("0.7"), R("1.3"), {R(1), R(1), R("0.9")}, at(14, false)) ==
        quad_K1(0, 1, R("0.7"), R("1.3"), {R(1), R(1), R("0.9")}, at(14, true)));
}

TEST_CASE("explicit cutoff agrees with the automatic one") {
  test::Working w;
  QuadSpec s = at(16);
  s.xi_cutoff = 80.0;
  const ParamTriple p{R(1), R(2), R("0.5")};
  CHECK(close(quad_G({0, 0, R("0.5"), R("0.5")}, p, s), quad_G({0, 0, R("0.5"), R("0.5")}, p, at(16)), 1e-15));
}

TEST_CASE("oracle errors") {
  test::Working w;
  const ParamTriple p{R(1), R(1), R(1)};
  CHECK_THROWS_AS(quad_K(0, 0, R(1), R(1), {R(1), R(1), R(0)}, at(12)), DomainError);
  CHECK_THROWS_AS(quad_G({0, 0, R(1), R(1)}, {R(1), R(0), R(0)}, at(12)), DomainError);
  CHECK_THROWS_AS(quad_N(0, 0, R(-1), R(1), p, at(12)), DomainError);
  CHECK_THROWS_AS(quad_PQ_aux(2, 0, R(1), R(1), R(2), p, GammaBranch::P, at(12)), DomainError);
  CHECK_THROWS_AS(quad_G({0, 0, R(1), R(1)}, p, at(3)), DomainError);
  QuadSpec coarse = at(40);
  coarse.max_levels = 4;
  CHECK_THROWS_AS(quad_G({0, 0, R("-0.7"), R("-0.4")}, {R(1), R(2), R("0.6")}, coarse), NonConvergence);
}
