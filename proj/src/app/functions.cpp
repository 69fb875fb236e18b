#include <algorithm>
#include <chrono>

#include "stoaux/app.hpp"
#include "stoaux/errors.hpp"
#include "stoaux/specfun.hpp"

namespace stoaux::app {

namespace {

long as_long(const BigReal& v, const char* what) {
  if (!v.is_integer()) throw DomainError(std::string(what) + " must be an integer");
  return v.to_long();
}

void require_sizes(const Request& r, size_t indices, size_t params) {
  if (r.indices.size() != indices || r.params.size() != params)
    throw DomainError(r.function + ": expected " + std::to_string(indices) + " indices and " +
                      std::to_string(params) + " parameters");
}

ParamTriple triple(const Request& r) { return {r.params[0], r.params[1], r.params[2]}; }

template <class Fn>
EvalReport scalar(const EvalContext& ctx, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  PrecisionScope scope(ctx.bits());
  EvalReport r;
  r.value = fn();
  r.abs_err = abs(r.value) * ldexp(BigReal(16), -static_cast<long>(working_bits()));
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

GammaBranch branch_of(const BigReal& v) {
  long b = as_long(v, "branch");
  if (b != 0 && b != 1) throw DomainError("branch must be 0 (P) or 1 (Q)");
  return b == 0 ? GammaBranch::P : GammaBranch::Q;
}

}  // namespace

const std::vector<std::string>& function_names() {
  static const std::vector<std::string> names{"G",  "nuG",     "Kplus",   "Kminus", "K1",
                                              "N",  "A",       "B",       "incgamma", "incbeta",
                                              "1F1", "besselI", "besselK", "PQaux"};
  return names;
}

bool has_oracle(const std::string& f) {
  return f == "G" || f == "nuG" || f == "Kplus" || f == "Kminus" || f == "K1" || f == "N" ||
         f == "PQaux";
}

EvalReport evaluate(const Request& req, const EvalContext& ctx) {
  PrecisionScope scope(ctx.bits());
  const std::string& f = req.function;
  if (f == "G") {
    require_sizes(req, 4, 3);
    OrderSpec order{as_long(req.indices[0], "n1"), as_long(req.indices[1], "q"), req.indices[2],
                    req.indices[3]};
    return evaluate_G(order, ScreeningParams(req.params[0], req.params[1], req.params[2]), ctx);
  }
  if (f == "nuG") {
    require_sizes(req, 5, 3);
    const long n1 = as_long(req.indices[0], "n1");
    const long q1 = as_long(req.indices[1], "q1");
    const long q2 = as_long(req.indices[2], "q2");
    const auto start = std::chrono::steady_clock::now();
    EvalReport total;
    for (const IndexTerm& t : nuG_reduce_q2(q2, req.indices[3], req.indices[4])) {
      EvalReport part = nuG_beta_form(n1, q1, t.n2, t.n3, triple(req), ctx);
      total.value += t.coef * part.value;
      total.abs_err += abs(t.coef) * part.abs_err;
      total.series_terms += part.series_terms;
      total.recurrence_steps += part.recurrence_steps;
    }
    total.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return total;
  }
  if (f == "Kplus" || f == "Kminus" || f == "K1" || f == "N") {
    require_sizes(req, 4, 3);
    const long n1 = as_long(req.indices[0], "n1");
    const long q = as_long(req.indices[1], "q");
    const BigReal& n2 = req.indices[2];
    const BigReal& n3 = req.indices[3];
    if (f == "Kplus") return K_plus(n1, q, n2, n3, triple(req), ctx);
    if (f == "Kminus") return K_minus(n1, q, n2, n3, triple(req), ctx);
    if (f == "K1") return K1_start(n1, q, n2, n3, triple(req), ctx);
    return N_func(n1, q, n2, n3, triple(req), ctx);
  }
  if (f == "A") {
    require_sizes(req, 1, 1);
    return scalar(ctx, [&] { return mulliken_A(req.indices[0], req.params[0], ctx.ctl); });
  }
  if (f == "B") {
    require_sizes(req, 1, 1);
    return scalar(ctx, [&] { return b_integral(as_long(req.indices[0], "alpha"), req.params[0]); });
  }
  if (f == "incgamma") {
    require_sizes(req, 2, 1);
    return scalar(ctx, [&] {
      return branch_of(req.indices[1]) == GammaBranch::P
                 ? inc_gamma_P(req.indices[0], req.params[0], ctx.ctl)
                 : inc_gamma_Q(req.indices[0], req.params[0], ctx.ctl);
    });
  }
  if (f == "incbeta") {
    require_sizes(req, 2, 1);
    return scalar(ctx, [&] { return inc_beta(req.indices[0], req.indices[1], req.params[0], ctx.ctl); });
  }
  if (f == "1F1") {
    require_sizes(req, 2, 1);
    return scalar(ctx, [&] { return kummer_1F1(req.indices[0], req.indices[1], req.params[0], ctx.ctl); });
  }
  if (f == "besselI") {
    require_sizes(req, 2, 1);
    return scalar(ctx, [&] {
      long sign = as_long(req.indices[1], "sign");
      return bessel_half_I(as_long(req.indices[0], "l"), sign >= 0 ? 1 : -1, req.params[0]);
    });
  }
  if (f == "besselK") {
    require_sizes(req, 1, 1);
    return scalar(ctx, [&] { return bessel_half_K(as_long(req.indices[0], "l"), req.params[0]); });
  }
  if (f == "PQaux") throw DomainError("PQaux has no analytic path; only the oracle evaluates it");
  throw DomainError("unknown function '" + f + "'");
}

BigReal evaluate_oracle(const Request& req, const QuadSpec& spec) {
  const std::string& f = req.function;
  if (f == "G") {
    require_sizes(req, 4, 3);
    OrderSpec order{as_long(req.indices[0], "n1"), as_long(req.indices[1], "q"), req.indices[2],
                    req.indices[3]};
    return quad_G(order, triple(req), spec);
  }
  if (f == "nuG") {
    require_sizes(req, 5, 3);
    return quad_nuG(as_long(req.indices[0], "n1"), as_long(req.indices[1], "q1"),
                    as_long(req.indices[2], "q2"), req.indices[3], req.indices[4], triple(req),
                    spec);
  }
  if (f == "Kplus" || f == "Kminus" || f == "K1" || f == "N") {
    require_sizes(req, 4, 3);
    const long n1 = as_long(req.indices[0], "n1");
    const long q = as_long(req.indices[1], "q");
    if (f == "Kplus") return quad_K(n1, q, req.indices[2], req.indices[3], triple(req), spec);
    if (f == "Kminus") return quad_K(n1, -q, req.indices[2], req.indices[3], triple(req), spec);
    if (f == "K1") return quad_K1(n1, q, req.indices[2], req.indices[3], triple(req), spec);
    return quad_N(n1, q, req.indices[2], req.indices[3], triple(req), spec);
  }
  if (f == "PQaux") {
    require_sizes(req, 6, 3);
    return quad_PQ_aux(as_long(req.indices[0], "n1"), as_long(req.indices[1], "q"), req.indices[2],
                       req.indices[3], req.indices[4], triple(req), branch_of(req.indices[5]), spec);
  }
  throw DomainError("no quadrature path for '" + f + "'");
}

}  // namespace stoaux::app
