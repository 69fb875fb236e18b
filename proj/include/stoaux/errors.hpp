#pragma once

#include <stdexcept>
#include <string>

namespace stoaux {

// Numerical failures carry exit code 3 at the CLI, fixture problems 4.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PoleError : public NumericError {
 public:
  using NumericError::NumericError;
};

class DomainError : public NumericError {
 public:
  using NumericError::NumericError;
};

class SeriesDivergence : public NumericError {
 public:
  using NumericError::NumericError;
};

class NonConvergence : public NumericError {
 public:
  using NumericError::NumericError;
};

class OverflowError : public NumericError {
 public:
  using NumericError::NumericError;
};

class FixtureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Prefixes a rung name onto a numeric failure while keeping its type.
template <class Fn>
auto with_rung(const std::string& rung, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const PoleError& e) {
    throw PoleError(rung + ": " + e.what());
  } catch (const DomainError& e) {
    throw DomainError(rung + ": " + e.what());
  } catch (const SeriesDivergence& e) {
    throw SeriesDivergence(rung + ": " + e.what());
  } catch (const NonConvergence& e) {
    throw NonConvergence(rung + ": " + e.what());
  } catch (const OverflowError& e) {
    throw OverflowError(rung + ": " + e.what());
  }
}

}  // namespace stoaux
