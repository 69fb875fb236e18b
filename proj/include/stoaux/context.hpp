#pragma once

#include <optional>
#include <string>

#include "stoaux/bigreal.hpp"

namespace stoaux {

constexpr int kDefaultDigits = 32;
constexpr int kMinDigits = 16;
// Extra decimal digits carried internally on top of the requested precision.
constexpr int kGuardDigits = 12;

struct SeriesControl {
  // Unset means "as small as the working precision resolves".
  std::optional<double> rel_tol;
  long max_terms = 10000;
  int consecutive_small = 2;
};

struct EvalContext {
  int digits = kDefaultDigits;
  SeriesControl ctl;

  mpfr_prec_t bits() const { return digits_to_bits(digits + kGuardDigits); }
};

// Requested digits from the environment (STOAUX_DIGITS) or the default.
int digits_from_env(int fallback = kDefaultDigits);

struct EvalReport {
  BigReal value;
  BigReal abs_err;
  long series_terms = 0;
  long recurrence_steps = 0;
  double wall_time = 0.0;
};

// Running sum of an infinite series under a SeriesControl stopping rule.
class SeriesSum {
 public:
  SeriesSum(const SeriesControl& ctl, std::string what);

  // Adds a term; true once the stopping rule is satisfied.
  bool add(const BigReal& term);

  const BigReal& value() const { return sum_; }
  // Largest partial-sum magnitude seen; gauges cancellation.
  const BigReal& magnitude() const { return mag_; }
  long terms() const { return terms_; }
  const BigReal& last_term() const { return last_; }

 private:
  SeriesControl ctl_;
  std::string what_;
  BigReal sum_;
  BigReal mag_;
  BigReal last_;
  BigReal tol_;
  long terms_ = 0;
  int small_run_ = 0;
};

// Relative tolerance implied by a control block at the current precision.
BigReal series_tolerance(const SeriesControl& ctl);

}  // namespace stoaux
