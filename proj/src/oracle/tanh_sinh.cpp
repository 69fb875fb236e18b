#include "tanh_sinh.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "stoaux/context.hpp"
#include "stoaux/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace stoaux::quad {

std::shared_ptr<const Rule> Rule::get(mpfr_prec_t bits, int level, long tail_bits) {
  using Key = std::tuple<mpfr_prec_t, int, long>;
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const Rule>> cache;
  const Key key{bits, level, tail_bits};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }

  PrecisionScope scope(bits);
  auto rule = std::make_shared<Rule>();
  const double half_pi = M_PI / 2;
  const double u_max = 0.5 * static_cast<double>(tail_bits) * std::log(2.0) + 2.0;
  const BigReal h = ldexp(BigReal(1), -level);
  const BigReal pi = const_pi();
  const BigReal half_pi_big = ldexp(pi, -1);
  const BigReal one(1);
  for (long k = 0;; ++k) {
    const double t_d = std::ldexp(static_cast<double>(k), -level);
    if (half_pi * std::sinh(t_d) > u_max) break;
    BigReal t = h * BigReal(k);
    BigReal u = half_pi_big * sinh(t);
    BigReal e = exp(-2L * u);
    BigReal denom = one + e;
    rule->nodes_.push_back({e / denom, h * pi * cosh(t) * e / (denom * denom)});
  }

  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(key, rule);
  return it->second;
}

void for_each_node(const Rule& rule, const Interval& panel,
                   const std::function<void(const Point&, const BigReal&)>& fn) {
  const BigReal len = panel.hi - panel.lo;
  const auto& nodes = rule.nodes();
  for (size_t k = nodes.size(); k-- > 1;) {
    BigReal d = len * nodes[k].gap;
    fn(Point{panel.lo + d, d, len - d}, nodes[k].weight * len);
  }
  {
    BigReal d = ldexp(len, -1);
    fn(Point{panel.lo + d, d, d}, nodes[0].weight * len);
  }
  for (size_t k = 1; k < nodes.size(); ++k) {
    BigReal d = len * nodes[k].gap;
    fn(Point{panel.hi - d, len - d, d}, nodes[k].weight * len);
  }
}

Grid make_grid(const Rule& rule, const std::vector<Interval>& panels) {
  Grid g;
  for (const auto& panel : panels)
    for_each_node(rule, panel, [&](const Point& p, const BigReal& w) {
      g.points.push_back(p);
      g.weights.push_back(w);
    });
  return g;
}

Sum integrate(const Grid& grid, const Integrand& f, bool parallel) {
  const long n = static_cast<long>(grid.size());
  std::vector<Sum> vals(grid.size());
#ifdef _OPENMP
  if (parallel && omp_get_max_threads() > 1) {
    const mpfr_prec_t bits = working_bits();
    std::exception_ptr failure;
#pragma omp parallel
    {
      PrecisionScope scope(bits);
#pragma omp for schedule(dynamic, 8)
      for (long i = 0; i < n; ++i) {
        try {
          vals[i] = f(static_cast<size_t>(i), grid.points[i]);
        } catch (...) {
#pragma omp critical(stoaux_quad_failure)
          if (!failure) failure = std::current_exception();
        }
      }
    }
    if (failure) std::rethrow_exception(failure);
  } else
#endif
  {
    (void)parallel;
    for (long i = 0; i < n; ++i) vals[i] = f(static_cast<size_t>(i), grid.points[i]);
  }
  Sum out;
  for (long i = 0; i < n; ++i) {
    out.value += grid.weights[i] * vals[i].value;
    out.magnitude += abs(grid.weights[i]) * vals[i].magnitude;
  }
  return out;
}

Setup::Setup(const QuadSpec& spec, double weakest) {
  if (spec.target_digits < 4) throw DomainError("quadrature target below 4 digits");
  bits = digits_to_bits(spec.target_digits + 10);
  double power = std::max(weakest, -0.95);
  power = std::min(power, 0.0);
  tail_bits = static_cast<long>(std::ceil(static_cast<double>(bits + 16) / (1.0 + power)));
  PrecisionScope scope(bits);
  tol = pow(BigReal(10), -static_cast<long>(spec.target_digits));
}

std::vector<Interval> xi_panels(double cutoff) {
  if (!(cutoff > 1.0)) throw DomainError("ξ cutoff must exceed 1");
  std::vector<Interval> out;
  const double top = cutoff - 1.0;
  double lo = 0.0;
  double width = 1.0;
  while (lo < top) {
    double hi = std::min(lo + width, top);
    out.push_back({BigReal(lo), BigReal(hi)});
    lo = hi;
    width *= 2.0;
  }
  return out;
}

double auto_cutoff(double decay, double degree, double spread, int digits) {
  if (!(decay > 0.0)) throw DomainError("ξ integral needs a positive decay rate");
  const double need = (digits + 5) * std::log(10.0) + spread + std::max(0.0, -std::log(decay));
  const double k = std::max(0.0, degree);
  double x = 2.0;
  while (decay * (x - 1.0) - k * std::log(x + 1.0) < need) x *= 1.25;
  return x;
}

BigReal refine(const QuadSpec& spec, const Setup& setup, const char* what,
               const std::function<Sum(int level)>& level_value) {
  PrecisionScope scope(setup.bits);
  const int first = 3;
  if (spec.max_levels <= first) throw DomainError("QuadSpec.max_levels must exceed 3");
  Sum prev = level_value(first);
  BigReal diff;
  for (int level = first + 1; level <= spec.max_levels; ++level) {
    Sum cur = level_value(level);
    diff = abs(cur.value - prev.value);
    if (diff <= setup.tol * cur.magnitude) {
      // below the resolution of the rule the sum is cancellation noise
      if (abs(cur.value) <= setup.tol * cur.magnitude) return BigReal(0);
      return cur.value;
    }
    prev = std::move(cur);
  }
  std::ostringstream msg;
  msg << what << ": refinement stalled at level " << spec.max_levels << " (last change "
      << diff.to_string(3) << ")";
  throw NonConvergence(msg.str());
}

}  // namespace stoaux::quad
