#pragma once

#include <chrono>

#include "stoaux/bigreal.hpp"
#include "stoaux/context.hpp"
#include "stoaux/errors.hpp"

namespace stoaux::detail {

// Rounding bound for a value produced by `ops` operations at the current precision.
inline BigReal rounding_bound(const BigReal& scale, long ops) {
  return abs(scale) * ldexp(BigReal(ops < 1 ? 1 : ops), -static_cast<long>(working_bits()));
}

// Runs `fn(report)` at the context precision, times it, tags failures with
// `rung`, and fills a default error estimate when `fn` leaves it unset.
template <class Fn>
EvalReport timed_report(const EvalContext& ctx, const char* rung, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  PrecisionScope scope(ctx.bits());
  EvalReport r;
  r.value = with_rung(rung, [&] { return fn(r); });
  if (r.abs_err.is_zero())
    r.abs_err = rounding_bound(r.value, 16 + r.series_terms + r.recurrence_steps);
  r.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace stoaux::detail
