#pragma once

#include <string>

#include "doctest.h"
#include "stoaux/bigreal.hpp"
#include "stoaux/context.hpp"

namespace stoaux::test {

// Working precision used by the unit tests (the library default).
struct Working {
  PrecisionScope scope{EvalContext{}.bits()};
};

inline BigReal R(double x) { return BigReal(x); }
inline BigReal R(int x) { return BigReal(x); }
inline BigReal R(long x) { return BigReal(x); }
inline BigReal R(const char* s) { return BigReal::from_string(s); }

inline bool close(const BigReal& got, const BigReal& want, double rel) {
  double d = rel_diff(got, want);
  if (!(d <= rel)) {
    MESSAGE("got " << got.to_string(40) << " want " << want.to_string(40) << " rel " << d);
    return false;
  }
  return true;
}

}  // namespace stoaux::test
