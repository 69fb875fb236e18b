#include <cmath>

#include "stoaux/app.hpp"
#include "stoaux/auxfun.hpp"
#include "stoaux/errors.hpp"
#include "stoaux/specfun.hpp"
#include "test_util.hpp"

using namespace stoaux;
using test::close;
using test::R;

namespace {

ScreeningParams SP(const char* p1, const char* p2, const char* p3) {
  return ScreeningParams(R(p1), R(p2), R(p3));
}
ParamTriple PT(const char* p1, const char* p2, const char* p3) { return {R(p1), R(p2), R(p3)}; }

// references are mpmath quadratures good to about 31 digits
void check_report(const EvalReport& r, const char* want, double rel) { CHECK(close(r.value, R(want), rel)); }

}  // namespace

TEST_CASE("closed forms") {
  test::Working w;
  const BigReal one(1), two(2), zero(0), e = exp(one);
  CHECK(close(evaluate_G({0, 0, zero, zero}, ScreeningParams(one, one, zero)).value, two / e, 1e-30));
  CHECK(close(N_func(0, 0, zero, zero, {one, one, one}).value, one - exp(-two), 1e-30));
  CHECK(close(K_plus(0, 0, zero, zero, {one, one, one}).value, exp(-two), 1e-30));
  CHECK(close(K1_start(0, 0, zero, zero, {one, one, one}).value, R(3) * exp(-two), 1e-30));
  // e^{-1} E1(1) and 2 e^{-1} E1(1)
  CHECK(close(K_minus(0, 1, zero, zero, {one, one, one}).value, R("0.0807068391874163622180500996276"), 1e-29));
  CHECK(close(nuG_beta_form(0, 1, zero, zero, {one, one, one}).value,
              R("0.161413678374832724436100199255"), 1e-29));
  // separable: A_0(p2) B_0(p3)
  const BigReal half = R("0.5");
  CHECK(close(G_start({0, 0, zero, zero}, ScreeningParams(one, one, half)).value,
              two * exp(-one) * sinh(half) / half, 1e-30));
  // p1^n1/n1! scaling
  CHECK(close(evaluate_G({2, 0, half, half}, SP("3", "1", "0.2")).value,
              R("4.5") * evaluate_G({0, 0, half, half}, SP("3", "1", "0.2")).value, 1e-30));
}

TEST_CASE("G against high-precision references") {
  test::Working w;
  check_report(evaluate_G({2, 0, R(1), R(1)}, SP("1.5", "2", "1")), "0.3804113433807131286609234530816319802957", 1e-30);
  check_report(evaluate_G({1, 1, R("1.5"), R("0.5")}, SP("1", "2", "1")), "-0.08367591287600089651100883003167733969291",
               1e-28);
  check_report(evaluate_G({0, 0, R("0.5"), R("0.5")}, SP("1", "1", "0.3")), "1.410625654155918253329221626258017283731",
               1e-28);
  check_report(evaluate_G({0, 2, R("0.7"), R("1.3")}, SP("1", "1.5", "-0.6")), "1.965983935301437517144665255165104449998",
               1e-28);
  check_report(evaluate_G({0, 0, R("1.5"), R("0.3")}, SP("1", "8", "7.2")), "0.001517812384559793078484870417664619417988",
               1e-26);
  check_report(evaluate_G({0, 0, R("-0.7"), R("-0.4")}, SP("1", "2", "0.6")), "0.1349815813976577006941249128430419872463",
               1e-24);
}

TEST_CASE("sub-functions against high-precision references") {
  test::Working w;
  check_report(nuG_beta_form(0, 1, R("0.5"), R("1.5"), PT("1", "1", "0.8")), "0.88803452640313884612782893491392478921",
               1e-28);
  app::Request req{"nuG", {R(0), R(0), R(2), R("0.5"), R("1.5")}, {R(1), R(1), R("0.8")}};
  check_report(app::evaluate(req, {}), "17.65476561373518576291327007494794426612", 1e-28);
  check_report(K_plus(0, 0, R("0.5"), R("0.5"), PT("1", "1", "1")), "0.2214292954820093480304641837690133130827", 1e-28);
  check_report(K_plus(0, 2, R("1.2"), R("0.3"), PT("1", "1.5", "0.7")), "14.86620249536475363876367810415663655424", 1e-28);
  check_report(K_minus(0, 2, R("0.6"), R("1.1"), PT("1", "1", "0.8")), "0.082328584077707337522047458784504806596", 1e-28);
  check_report(K1_start(0, 1, R("0.7"), R("1.3"), PT("1", "1", "0.9")), "0.5620050553087305460205020069255692357501", 1e-28);
  check_report(N_func(0, 0, R("1.5"), R("0.5"), PT("1", "1", "0.5")), "0.5223613857287399745748492307558987297213", 1e-28);
}

TEST_CASE("integer branch agrees with the series start") {
  test::Working w;
  for (int n2 : {0, 1, 2})
    for (int n3 : {0, 1, 3})
      for (const char* p3 : {"0", "0.7", "-1.4"}) {
        const OrderSpec o{1, 0, R(n2), R(n3)};
        const ScreeningParams p = SP("1.2", "2", p3);
        CHECK_MESSAGE(close(G_integer(o, p).value, G_start(o, p).value, 1e-28),
                      "n2=" << n2 << " n3=" << n3 << " p3=" << p3);
      }
}

TEST_CASE("q reduction reproduces the direct integrand expansion") {
  test::Working w;
  const OrderSpec o{0, 2, R("0.7"), R("1.3")};
  const ScreeningParams p = SP("1", "1.5", "0.4");
  BigReal sum;
  for (const IndexTerm& t : G_reduce_q(o)) sum += t.coef * G_start({0, 0, t.n2, t.n3}, p).value;
  CHECK(close(sum, evaluate_G(o, p).value, 1e-28));
  CHECK(G_reduce_q({0, 0, R("0.5"), R("0.5")}).size() == 1);
}

TEST_CASE("G recurrence rungs reproduce direct starts") {
  test::Working w;
  const ScreeningParams p = SP("1", "2", "0.8");
  const OrderSpec here{0, 0, R("1.7"), R("0.4")};
  const BigReal g = G_start(here, p).value;
  CHECK(close(G_recur_dn2(here, p, g), G_start({0, 0, R("0.7"), R("1.4")}, p).value, 1e-26));
  CHECK(close(G_recur_dn3(here, p, g), G_start({0, 0, R("2.7"), R("-0.6")}, p).value, 1e-26));
  CHECK_THROWS_AS(G_recur_dn2(here, SP("1", "2", "0"), g), DomainError);
}

TEST_CASE("nuG and K1 recurrences reproduce direct starts") {
  test::Working w;
  const ParamTriple p = PT("1.3", "0.7", "1.1");
  const BigReal a = R("1.6"), b = R("0.9"), one(1);
  const BigReal v = nuG_beta_form(1, 1, a, b, p).value;
  CHECK(close(nuG_recur_dn2(1, 1, a, b, p, v), nuG_beta_form(1, 1, a - one, b + one, p).value, 1e-26));
  CHECK(close(nuG_recur_dn3(1, 1, a, b, p, v), nuG_beta_form(1, 1, a + one, b - one, p).value, 1e-26));
  CHECK(close(nuG_recur_q1(1, 2, a, b, p, nuG_beta_form(1, 1, a, b, p).value), nuG_beta_form(1, 2, a, b, p).value,
              1e-26));
  const BigReal shifted = K1_start(0, 1, a + one, b - one, p).value;
  CHECK(close(K1_recur(0, 1, a, b, p, shifted), K1_start(0, 1, a, b, p).value, 1e-26));
}

TEST_CASE("K minus equals K plus at zeroth power") {
  test::Working w;
  for (const char* n2 : {"0.3", "1.7", "2"})
    for (const char* n3 : {"0", "0.45", "1.2"}) {
      const ParamTriple p = PT("1.1", "0.6", "1.3");
      CHECK(close(K_minus(1, 0, R(n2), R(n3), p).value, K_plus(1, 0, R(n2), R(n3), p).value, 1e-28));
    }
}

TEST_CASE("G decreases with p2 when the integrand is positive") {
  test::Working w;
  BigReal prev;
  bool first = true;
  for (const char* p2 : {"0.5", "0.9", "1.5", "2.5", "4", "6", "8"}) {
    const BigReal v = evaluate_G({0, 0, R("0.3"), R("1.5")}, ScreeningParams(R(1), R(p2), R(p2) * R("0.2"))).value;
    if (!first) CHECK_MESSAGE(v < prev, "p2=" << p2);
    prev = v;
    first = false;
  }
}

TEST_CASE("higher working precision agrees") {
  const OrderSpec o{1, 1, R("0.3"), R("1.5")};
  EvalContext hi;
  hi.digits = 64;
  BigReal a, b;
  {
    PrecisionScope s(hi.bits());
    b = evaluate_G(o, SP("2", "2", "1.8"), hi).value;
  }
  {
    test::Working w;
    a = evaluate_G(o, SP("2", "2", "1.8")).value;
  }
  CHECK(close(a, b, 1e-30));
}

TEST_CASE("input validation") {
  test::Working w;
  CHECK_THROWS_AS(SP("1", "1", "1.5"), DomainError);
  CHECK_THROWS_AS(SP("0", "1", "0.5"), DomainError);
  CHECK_THROWS_AS(SP("1", "-1", "0"), DomainError);
  CHECK_THROWS_AS(evaluate_G({0, 0, R(-1), R(1)}, SP("1", "1", "0")), DomainError);
  CHECK_THROWS_AS(evaluate_G({-1, 0, R(1), R(1)}, SP("1", "1", "0")), DomainError);
  CHECK_THROWS_AS(evaluate_G({0, -2, R(1), R(1)}, SP("1", "1", "0")), DomainError);
  CHECK(OrderSpec{0, 0, R(2), R(0)}.integer_branch());
  CHECK_FALSE(OrderSpec{0, 0, R("2.5"), R(0)}.integer_branch());
  // orbital form: p3 = p2 (ζ - ζ')/(ζ + ζ')
  const ScreeningParams o = ScreeningParams::from_orbitals(R(3), R(1), R(2));
  CHECK(close(o.p2, R(4), 1e-30));
  CHECK(close(o.p3, R(2), 1e-30));
  CHECK(close(ScreeningParams::from_pt(R(1), R(2), R("-0.5")).p3, R(-1), 1e-30));
}

TEST_CASE("error estimate bounds the deviation from a 64-digit evaluation") {
  struct Case {
    long n1, q;
    const char *n2, *n3, *p2, *p3;
  };
  const Case cases[] = {{0, 0, "0.5", "0.5", "1", "0.3"},   {1, 1, "1.5", "0.5", "2", "1"},
                        {0, 2, "0.7", "1.3", "1.5", "-0.6"}, {0, 0, "1.5", "0.3", "8", "7.2"},
                        {0, 1, "0.3", "1.5", "8", "-8"},     {0, 0, "-0.7", "-0.4", "2", "0.6"}};
  EvalContext hi;
  hi.digits = 64;
  for (const Case& c : cases) {
    const OrderSpec o{c.n1, c.q, R(c.n2), R(c.n3)};
    EvalReport lo;
    {
      test::Working w;
      lo = evaluate_G(o, SP(c.p2, c.p2, c.p3));
    }
    PrecisionScope s(hi.bits());
    const BigReal ref = evaluate_G(o, ScreeningParams(R(c.p2), R(c.p2), R(c.p3)), hi).value;
    CHECK_MESSAGE(abs(lo.value - ref) <= lo.abs_err, "n=(" << c.n2 << "," << c.n3 << ") p2=" << c.p2 << " p3=" << c.p3
                                                            << " error " << abs(lo.value - ref).to_string(3)
                                                            << " estimate " << lo.abs_err.to_string(3));
  }
}

TEST_CASE("error estimate grows with the steep corner of the grid") {
  test::Working w;
  const EvalReport soft = evaluate_G({0, 0, R("0.5"), R("0.5")}, SP("0.5", "0.5", "0"));
  const EvalReport hard = evaluate_G({0, 0, R("1.5"), R("0.3")}, SP("8", "8", "7.2"));
  CHECK(soft.abs_err < abs(soft.value) * R(1e-30));
  CHECK(hard.abs_err < abs(hard.value) * R(1e-26));
  CHECK(hard.series_terms + hard.recurrence_steps > soft.series_terms + soft.recurrence_steps);
}
