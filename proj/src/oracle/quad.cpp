#include <algorithm>
#include <cmath>

#include "stoaux/errors.hpp"
#include "stoaux/oracle.hpp"
#include "stoaux/specfun.hpp"
#include "tanh_sinh.hpp"

namespace stoaux {

using quad::Grid;
using quad::Interval;
using quad::Point;
using quad::Rule;
using quad::Setup;
using quad::Sum;

namespace {

void require_above_minus_one(const BigReal& e, const char* what) {
  if (e <= BigReal(-1)) throw DomainError(std::string(what) + ": endpoint exponent must exceed -1");
}

double weakest(const BigReal& a, const BigReal& b) {
  return std::min({a.to_double(), b.to_double(), 0.0});
}

double cutoff_for(const QuadSpec& spec, double decay, double degree, double spread) {
  if (spec.xi_cutoff) return *spec.xi_cutoff;
  return quad::auto_cutoff(decay, degree, spread, spec.target_digits);
}

BigReal lead(long n1, const ParamTriple& p) { return order_prefactor(n1, p.p1) * exp(-p.p2); }

// x^e for x > 0 without a pow call when e vanishes.
BigReal power(const BigReal& x, const BigReal& e) {
  if (e.is_zero()) return BigReal(1);
  return exp(e * log(x));
}

const std::vector<Interval>& nu_panel() {
  thread_local const std::vector<Interval> panel{{BigReal(-1), BigReal(1)}};
  return panel;
}

// ∫∫ over u = ξ-1 ∈ [0, cutoff-1] and ν ∈ [-1, 1] of
// outer(ξ) * inner_fac(ν) * (ξ+ν)^n2 (ξ-ν)^n3 * extra(ξ+ν).
template <class Outer, class NuFac, class Extra>
BigReal spheroidal(const QuadSpec& spec, const Setup& setup, const char* what, double cutoff,
                   const BigReal& n2, const BigReal& n3, Outer&& outer, NuFac&& nu_fac,
                   Extra&& extra) {
  const auto panels = quad::xi_panels(cutoff);
  return quad::refine(spec, setup, what, [&](int level) {
    auto rule = Rule::get(setup.bits, level, setup.tail_bits);
    const Grid inner = quad::make_grid(*rule, nu_panel());
    std::vector<BigReal> fac(inner.size());
    for (size_t j = 0; j < inner.size(); ++j) fac[j] = nu_fac(inner.points[j].x) * inner.weights[j];
    const Grid outer_grid = quad::make_grid(*rule, panels);
    return quad::integrate(
        outer_grid,
        [&](size_t, const Point& u) {
          Sum acc;
          for (size_t j = 0; j < inner.size(); ++j) {
            const Point& v = inner.points[j];
            BigReal plus = u.x + v.from_lo;
            BigReal minus = u.x + v.to_hi;
            BigReal t = fac[j] * exp(n2 * log(plus) + n3 * log(minus)) * extra(plus);
            acc.magnitude += abs(t);
            acc.value += t;
          }
          const BigReal o = outer(u.x + BigReal(1));
          return Sum{acc.value * o, acc.magnitude * abs(o)};
        },
        spec.parallel);
  });
}

struct Unit {
  BigReal operator()(const BigReal&) const { return BigReal(1); }
};

}  // namespace

BigReal quad_G(const OrderSpec& order, const ParamTriple& params, const QuadSpec& spec) {
  order.validate();
  if (params.p2.sign() <= 0) throw DomainError("quad_G needs p2 > 0");
  const Setup setup(spec, weakest(order.n2, order.n3));
  PrecisionScope scope(setup.bits);
  const double cutoff = cutoff_for(spec, params.p2.to_double(),
                                   (order.n2 + order.n3).to_double() + static_cast<double>(order.q),
                                   2.0 * std::fabs(params.p3.to_double()));
  const long q = order.q;
  const BigReal& p2 = params.p2;
  const BigReal& p3 = params.p3;
  BigReal v = spheroidal(
      spec, setup, "quad_G", cutoff, order.n2, order.n3,
      [&](const BigReal& xi) { return pow(xi, q) * exp(-p2 * xi); },
      [&](const BigReal& nu) { return pow(nu, q) * exp(-p3 * nu); }, Unit{});
  return order_prefactor(order.n1, params.p1) * v;
}

BigReal quad_PQ_aux(long n1, long q, const BigReal& n2, const BigReal& n3, const BigReal& n4,
                    const ParamTriple& params, GammaBranch which, const QuadSpec& spec) {
  OrderSpec order{n1, q, n2, n3};
  order.validate();
  const BigReal shape = n4 - BigReal(n1);
  if (shape.sign() <= 0) throw DomainError("quad_PQ_aux needs n4 - n1 > 0");
  if (params.p2.sign() <= 0) throw DomainError("quad_PQ_aux needs p2 > 0");
  const Setup setup(spec, weakest(n2, n3));
  PrecisionScope scope(setup.bits);
  const double cutoff = cutoff_for(spec, params.p2.to_double(),
                                   (n2 + n3).to_double() + static_cast<double>(q),
                                   2.0 * std::fabs(params.p3.to_double()));
  const BigReal& p1 = params.p1;
  const BigReal& p2 = params.p2;
  const BigReal& p3 = params.p3;
  BigReal v = spheroidal(
      spec, setup, "quad_PQ_aux", cutoff, n2, n3,
      [&](const BigReal& xi) { return pow(xi, q) * exp(-p2 * xi); },
      [&](const BigReal& nu) { return pow(nu, q) * exp(-p3 * nu); },
      [&](const BigReal& plus) {
        // ξ + ν = u + (1 + ν) is what `plus` holds
        BigReal z = p1 * plus;
        return which == GammaBranch::P ? inc_gamma_P(shape, z) : inc_gamma_Q(shape, z);
      });
  return pow(p1, n1) / pochhammer(shape, n1) * v;
}

BigReal quad_N(long n1, long q, const BigReal& n2, const BigReal& n3, const ParamTriple& params,
               const QuadSpec& spec) {
  if (q < 0) throw DomainError("quad_N needs q >= 0");
  require_above_minus_one(n2, "quad_N");
  require_above_minus_one(n3, "quad_N");
  const Setup setup(spec, weakest(n2, n3));
  PrecisionScope scope(setup.bits);
  const BigReal& p3 = params.p3;
  BigReal v = quad::refine(spec, setup, "quad_N", [&](int level) {
    auto rule = Rule::get(setup.bits, level, setup.tail_bits);
    return quad::integrate(
        quad::make_grid(*rule, nu_panel()),
        [&](size_t, const Point& v) {
          return quad::single(pow(v.x, q) * exp(n2 * log(v.from_lo) + n3 * log(v.to_hi) - p3 * v.x));
        },
        false);
  });
  return lead(n1, params) * v;
}

BigReal quad_K(long n1, long q, const BigReal& n2, const BigReal& n3, const ParamTriple& params,
               const QuadSpec& spec) {
  require_above_minus_one(n3, "quad_K");
  if (params.p3.sign() <= 0) throw DomainError("quad_K needs a positive decay p3");
  const Setup setup(spec, weakest(n3, BigReal(0)));
  PrecisionScope scope(setup.bits);
  const double cutoff = cutoff_for(spec, params.p3.to_double(),
                                   (n2 + n3).to_double() + static_cast<double>(q), 0.0);
  const auto panels = quad::xi_panels(cutoff);
  const BigReal& lam = params.p3;
  const BigReal one(1);
  const BigReal two(2);
  BigReal v = quad::refine(spec, setup, "quad_K", [&](int level) {
    auto rule = Rule::get(setup.bits, level, setup.tail_bits);
    return quad::integrate(
        quad::make_grid(*rule, panels),
        [&](size_t, const Point& u) {
          BigReal xi = u.x + one;
          return quad::single(pow(xi, q) * power(u.x + two, n2) * exp(n3 * log(u.x) - lam * xi));
        },
        spec.parallel);
  });
  return lead(n1, params) * v;
}

BigReal quad_nuG(long n1, long q1, long q2, const BigReal& n2, const BigReal& n3,
                 const ParamTriple& params, const QuadSpec& spec) {
  OrderSpec order{n1, q2, n2, n3};
  order.validate();
  if (q1 < 0) throw DomainError("quad_nuG needs q1 >= 0");
  if (params.p3.sign() <= 0) throw DomainError("quad_nuG needs a positive decay p3");
  const Setup setup(spec, weakest(n2, n3));
  PrecisionScope scope(setup.bits);
  const double cutoff =
      cutoff_for(spec, params.p3.to_double(),
                 (n2 + n3).to_double() + static_cast<double>(q2 - q1), 0.0);
  const BigReal& lam = params.p3;
  BigReal v = spheroidal(
      spec, setup, "quad_nuG", cutoff, n2, n3,
      [&](const BigReal& xi) { return pow(xi, q2 - q1) * exp(-lam * xi); },
      [&](const BigReal& nu) { return pow(nu, q2); }, Unit{});
  return lead(n1, params) * v;
}

BigReal quad_K1(long n1, long q, const BigReal& n2, const BigReal& n3, const ParamTriple& params,
                const QuadSpec& spec) {
  require_above_minus_one(n2, "quad_K1");
  require_above_minus_one(n3, "quad_K1");
  if (params.p3.sign() <= 0) throw DomainError("quad_K1 needs a positive decay p3");
  const Setup setup(spec, weakest(n2, n3));
  PrecisionScope scope(setup.bits);
  const BigReal m = n2 + n3 - BigReal(q) + BigReal(1);
  const double cutoff = cutoff_for(spec, params.p3.to_double(), m.to_double(), 0.0);
  const auto panels = quad::xi_panels(cutoff);
  const BigReal& lam = params.p3;
  const BigReal one(1);
  BigReal v = quad::refine(spec, setup, "quad_K1", [&](int level) {
    auto rule = Rule::get(setup.bits, level, setup.tail_bits);
    return quad::integrate(
        quad::make_grid(*rule, panels),
        [&](size_t, const Point& u) {
          BigReal xi = u.x + one;
          BigReal two_xi = ldexp(xi, 1);
          BigReal z = (xi + one) / two_xi;
          BigReal z_comp = u.x / two_xi;  // 1 - z
          BigReal beta_part;
          quad::for_each_node(*rule, Interval{BigReal(0), z}, [&](const Point& t, const BigReal& w) {
            beta_part += w * exp(n2 * log(t.from_lo) + n3 * log(z_comp + t.to_hi));
          });
          return quad::single(power(two_xi, m) * beta_part * exp(-lam * xi));
        },
        spec.parallel);
  });
  return lead(n1, params) * v;
}

}  // namespace stoaux
