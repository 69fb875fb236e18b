#pragma once

#include <optional>

#include "stoaux/auxfun.hpp"
#include "stoaux/bigreal.hpp"
#include "stoaux/specfun.hpp"

// Brute-force quadrature of the defining integrals, used as ground truth.
namespace stoaux {

struct QuadSpec {
  int target_digits = 30;
  // Upper ξ limit; unset picks one whose exponential tail is below 10^-(target_digits+5).
  std::optional<double> xi_cutoff;
  // Finest tanh-sinh level tried (step 2^-level) before NonConvergence.
  int max_levels = 9;
  // Evaluate outer nodes on the OpenMP pool; the sum order is fixed either way.
  bool parallel = true;
};

// 𝒢^{n1,q}_{n2 n3}(p1,p2,p3).
BigReal quad_G(const OrderSpec& order, const ParamTriple& params, const QuadSpec& spec = {});

// p1^n1/(n4-n1)_n1 ∫∫ (ξν)^q (ξ+ν)^n2 (ξ-ν)^n3 {P|Q}[n4-n1, p1(ξ+ν)] e^{-p2 ξ - p3 ν}.
BigReal quad_PQ_aux(long n1, long q, const BigReal& n2, const BigReal& n3, const BigReal& n4,
                    const ParamTriple& params, GammaBranch which, const QuadSpec& spec = {});

// 𝒩^{n1,q}_{n2 n3}.
BigReal quad_N(long n1, long q, const BigReal& n2, const BigReal& n3, const ParamTriple& params,
               const QuadSpec& spec = {});
// ±𝒦 with ξ^{q}; negative q gives ⁻𝒦^{-q}.
BigReal quad_K(long n1, long q, const BigReal& n2, const BigReal& n3, const ParamTriple& params,
               const QuadSpec& spec = {});
// ᵛ𝒢^{n1,q1,q2}_{n2 n3}.
BigReal quad_nuG(long n1, long q1, long q2, const BigReal& n2, const BigReal& n3,
                 const ParamTriple& params, const QuadSpec& spec = {});
// ¹𝒦^{n1,q}_{n2 n3} with the incomplete beta function itself integrated numerically.
BigReal quad_K1(long n1, long q, const BigReal& n2, const BigReal& n3, const ParamTriple& params,
                const QuadSpec& spec = {});

}  // namespace stoaux
