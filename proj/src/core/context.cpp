#include "stoaux/context.hpp"

#include <cstdlib>
#include <string>

#include "stoaux/errors.hpp"

namespace stoaux {

int digits_from_env(int fallback) {
  const char* env = std::getenv("STOAUX_DIGITS");
  if (!env || !*env) return fallback;
  char* end = nullptr;
  long d = std::strtol(env, &end, 10);
  if (*end != '\0' || d < kMinDigits || d > 2000)
    throw std::invalid_argument("STOAUX_DIGITS must be an integer in [16, 2000]");
  return static_cast<int>(d);
}

BigReal series_tolerance(const SeriesControl& ctl) {
  if (ctl.rel_tol) return BigReal(*ctl.rel_tol);
  return ldexp(BigReal(1), -static_cast<long>(working_bits()));
}

SeriesSum::SeriesSum(const SeriesControl& ctl, std::string what)
    : ctl_(ctl), what_(std::move(what)), tol_(series_tolerance(ctl)) {}

bool SeriesSum::add(const BigReal& term) {
  if (terms_ >= ctl_.max_terms)
    throw SeriesDivergence(what_ + ": no convergence within " +
                           std::to_string(ctl_.max_terms) + " terms");
  sum_ += term;
  last_ = term;
  ++terms_;
  BigReal a = abs(sum_);
  if (a > mag_) mag_ = a;
  if (!term.is_finite() || !sum_.is_finite())
    throw SeriesDivergence(what_ + ": non-finite partial sum");
  if (abs(term) <= tol_ * a) {
    ++small_run_;
  } else {
    small_run_ = 0;
  }
  return small_run_ >= ctl_.consecutive_small;
}

}  // namespace stoaux
