#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "stoaux/bigreal.hpp"
#include "stoaux/oracle.hpp"

namespace stoaux::quad {

// Abscissa with its distances to both panel ends, so integrands with
// algebraic endpoint factors never form 1 - x by subtraction.
struct Point {
  BigReal x;
  BigReal from_lo;
  BigReal to_hi;
};

struct Interval {
  BigReal lo;
  BigReal hi;
};

struct Sum {
  BigReal value;
  BigReal magnitude;  // Σ |w f|, with inner sums counted term by term
};

inline Sum single(const BigReal& v) { return {v, abs(v)}; }

// Tanh-sinh nodes on the unit interval at step 2^-level, kept while the
// distance to the nearer end exceeds 2^-tail_bits.
class Rule {
 public:
  struct Node {
    BigReal gap;     // distance to the nearer end
    BigReal weight;  // per unit length
  };

  static std::shared_ptr<const Rule> get(mpfr_prec_t bits, int level, long tail_bits);
  const std::vector<Node>& nodes() const { return nodes_; }

 private:
  std::vector<Node> nodes_;
};

// Calls fn(point, weight) for every node of `rule` mapped onto [lo, hi].
void for_each_node(const Rule& rule, const Interval& panel,
                   const std::function<void(const Point&, const BigReal&)>& fn);

// All nodes of a panel list in a fixed order.
struct Grid {
  std::vector<Point> points;
  std::vector<BigReal> weights;
  size_t size() const { return points.size(); }
};
Grid make_grid(const Rule& rule, const std::vector<Interval>& panels);

// Returns the integrand value with the magnitude of any inner sum behind it.
using Integrand = std::function<Sum(size_t index, const Point& p)>;

// Weighted sum over the grid; the parallel path evaluates on the OpenMP pool
// and sums in grid order, so both paths give identical results.
Sum integrate(const Grid& grid, const Integrand& f, bool parallel);

// Precision, node truncation and ξ panels shared by the oracle entry points.
struct Setup {
  mpfr_prec_t bits;
  long tail_bits;
  BigReal tol;

  // `weakest` is the most negative algebraic exponent at an endpoint.
  Setup(const QuadSpec& spec, double weakest);
};

// u = ξ - 1 panels [0,1], [1,3], [3,7], ... ending at cutoff - 1.
std::vector<Interval> xi_panels(double cutoff);

// ξ beyond which e^{-decay ξ} ξ^degree is below 10^-(digits+5) of the bulk,
// with `spread` the extra log-range of the remaining factors.
double auto_cutoff(double decay, double degree, double spread, int digits);

// Raises the level until two successive values agree to spec.target_digits of
// Σ|w f|; a value below that resolution is returned as zero.
BigReal refine(const QuadSpec& spec, const Setup& setup, const char* what,
               const std::function<Sum(int level)>& level_value);

}  // namespace stoaux::quad
