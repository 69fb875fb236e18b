#pragma once

#include <vector>

#include "stoaux/bigreal.hpp"
#include "stoaux/context.hpp"

namespace stoaux {

// Three parameters in the order the sub-functions use them: p1 enters the
// prefactor p1^n1/n1!, p2 the constant factor e^{-p2}, p3 the exponential decay.
struct ParamTriple {
  BigReal p1;
  BigReal p2;
  BigReal p3;
};

// Screening parameters of 𝒢: p1 > 0, p2 > 0, |p3| <= p2.
class ScreeningParams : public ParamTriple {
 public:
  ScreeningParams(const BigReal& p1, const BigReal& p2, const BigReal& p3);

  // p1 = p2 = R(ζ+ζ')/2 and p3 = p2 (ζ-ζ')/(ζ+ζ').
  static ScreeningParams from_orbitals(const BigReal& zeta, const BigReal& zeta_prime,
                                       const BigReal& distance);
  // p3 = p2 t.
  static ScreeningParams from_pt(const BigReal& p1, const BigReal& p2, const BigReal& t);
};

struct OrderSpec {
  long n1 = 0;
  long q = 0;
  BigReal n2;
  BigReal n3;

  // True when both n2 and n3 are integers.
  bool integer_branch() const;
  // Throws DomainError unless n1, q >= 0 and n2, n3 > -1.
  void validate() const;
};

// coef * F(n2, n3) for some family F at a fixed remaining index.
struct IndexTerm {
  BigReal coef;
  BigReal n2;
  BigReal n3;
};

// 𝒢^{n1,q}_{n2 n3}(p1,p2,p3) = p1^n1/n1! ∫_1^∞∫_{-1}^1 (ξν)^q (ξ+ν)^n2 (ξ-ν)^n3 e^{-p2 ξ - p3 ν}.
EvalReport evaluate_G(const OrderSpec& order, const ScreeningParams& params,
                      const EvalContext& ctx = {});

// Binomial expansion for non-negative integer n2, n3.
EvalReport G_integer(const OrderSpec& order, const ScreeningParams& params,
                     const EvalContext& ctx = {});

// Exact expansion of the (ξν)^q factor onto q = 0 members.
std::vector<IndexTerm> G_reduce_q(const OrderSpec& order);

// The exponential series in p3 for a q = 0 member.
EvalReport G_start(const OrderSpec& order, const ScreeningParams& params,
                   const EvalContext& ctx = {});

// q = 0 rungs along n2 + n3 = const; need p3 != 0.
// 𝒢 at (n2-1, n3+1) from 𝒢 at (n2, n3).
BigReal G_recur_dn2(const OrderSpec& order, const ScreeningParams& params, const BigReal& g_here,
                    const EvalContext& ctx = {});
// 𝒢 at (n2+1, n3-1) from 𝒢 at (n2, n3).
BigReal G_recur_dn3(const OrderSpec& order, const ScreeningParams& params, const BigReal& g_here,
                    const EvalContext& ctx = {});

// ᵛ𝒢^{n1,q1,q2}_{n2 n3} = p1^n1/n1! e^{-p2} ∫∫ ξ^{-q1} (ξν)^q2 (ξ+ν)^n2 (ξ-ν)^n3 e^{-p3 ξ}.
std::vector<IndexTerm> nuG_reduce_q2(long q2, const BigReal& n2, const BigReal& n3);
EvalReport nuG_beta_form(long n1, long q1, const BigReal& n2, const BigReal& n3,
                         const ParamTriple& params, const EvalContext& ctx = {});
// ᵛ𝒢^{q1,0} at (n2-1, n3+1) from its value at (n2, n3).
BigReal nuG_recur_dn2(long n1, long q1, const BigReal& n2, const BigReal& n3,
                      const ParamTriple& params, const BigReal& here, const EvalContext& ctx = {});
// ᵛ𝒢^{q1,0} at (n2+1, n3-1) from its value at (n2, n3).
BigReal nuG_recur_dn3(long n1, long q1, const BigReal& n2, const BigReal& n3,
                      const ParamTriple& params, const BigReal& here, const EvalContext& ctx = {});
// ᵛ𝒢^{q1,0} from ᵛ𝒢^{q1-1,0} at the same indices.
BigReal nuG_recur_q1(long n1, long q1, const BigReal& n2, const BigReal& n3,
                     const ParamTriple& params, const BigReal& below, const EvalContext& ctx = {});

// ¹𝒦^{n1,q}_{n2 n3} = p1^n1/n1! e^{-p2} ∫_1^∞ (2ξ)^{n2+n3-q+1} B_{n2+1,n3+1}((ξ+1)/2ξ) e^{-p3 ξ}.
EvalReport K1_start(long n1, long q, const BigReal& n2, const BigReal& n3,
                    const ParamTriple& params, const EvalContext& ctx = {});
// ¹𝒦 at (n2, n3) from ¹𝒦 at (n2+1, n3-1).
BigReal K1_recur(long n1, long q, const BigReal& n2, const BigReal& n3, const ParamTriple& params,
                 const BigReal& shifted, const EvalContext& ctx = {});

// ±𝒦^{n1,q}_{n2 n3} = p1^n1/n1! e^{-p2} ∫_1^∞ ξ^{±q} (ξ+1)^n2 (ξ-1)^n3 e^{-p3 ξ}, p3 > 0.
EvalReport K_plus(long n1, long q, const BigReal& n2, const BigReal& n3,
                  const ParamTriple& params, const EvalContext& ctx = {});
EvalReport K_minus(long n1, long q1, const BigReal& n2, const BigReal& n3,
                   const ParamTriple& params, const EvalContext& ctx = {});

// 𝒩^{n1,q}_{n2 n3} = p1^n1/n1! e^{-p2} ∫_{-1}^1 ν^q (1+ν)^n2 (1-ν)^n3 e^{-p3 ν}.
EvalReport N_func(long n1, long q, const BigReal& n2, const BigReal& n3,
                  const ParamTriple& params, const EvalContext& ctx = {});

// p1^n1 / n1!
BigReal order_prefactor(long n1, const BigReal& p1);

// Recurrence rungs as pure formulas of their constituent terms, so they can
// be checked against independently computed values.
namespace rung {

// 𝒢_{a-1,b+1} from 𝒢_{a,b}; k_fwd = ⁺𝒦^{0}_{a,b+1}(p1,p3,p2),
// k_bwd = ⁺𝒦^{0}_{b+1,a}(p1,-p3,p2), n_term = 𝒩^{0}_{a,b+1}(p1,p2,p3).
BigReal G_dn2(const BigReal& a, const BigReal& b, const BigReal& p2, const BigReal& p3,
              const BigReal& g_ab, const BigReal& k_fwd, const BigReal& k_bwd,
              const BigReal& n_term);
// 𝒢_{a+1,b-1} from 𝒢_{a,b}; k_fwd = ⁺𝒦^{0}_{a+1,b}(p1,p3,p2),
// k_bwd = ⁺𝒦^{0}_{b,a+1}(p1,-p3,p2), n_term = 𝒩^{0}_{a+1,b}(p1,p2,p3).
BigReal G_dn3(const BigReal& a, const BigReal& b, const BigReal& p2, const BigReal& p3,
              const BigReal& g_ab, const BigReal& k_fwd, const BigReal& k_bwd,
              const BigReal& n_term);

// ᵛ𝒢^{q1,0}_{a-1,b+1} from ᵛ𝒢^{q1,0}_{a,b}, with ⁻𝒦^{q1}_{b+1,a} and ⁻𝒦^{q1}_{a,b+1}.
BigReal nuG_dn2(const BigReal& a, const BigReal& b, const BigReal& v_ab, const BigReal& km_b1_a,
                const BigReal& km_a_b1);
// ᵛ𝒢^{q1,0}_{a+1,b-1} from ᵛ𝒢^{q1,0}_{a,b}, with ⁻𝒦^{q1}_{a+1,b} and ⁻𝒦^{q1}_{b,a+1}.
BigReal nuG_dn3(const BigReal& a, const BigReal& b, const BigReal& v_ab, const BigReal& km_a1_b,
                const BigReal& km_b_a1);
// ᵛ𝒢^{q1,0}_{a,b} from ᵛ𝒢^{q1-1,0}_{a,b}; boundary = p1^n1/n1! e^{-p2} 2^{a+b+1} B(a+1,b+1) e^{-p3}.
BigReal nuG_q1(const BigReal& a, const BigReal& b, long q1, const BigReal& p3,
               const BigReal& v_below, const BigReal& boundary, const BigReal& km_ab,
               const BigReal& km_ba);
// ¹𝒦^{q}_{a,b} from ¹𝒦^{q}_{a+1,b-1} and ⁻𝒦^{q}_{a+1,b}.
BigReal K1_step(const BigReal& a, const BigReal& b, long q, const BigReal& k1_shifted,
                const BigReal& km_a1_b);
// ⁻𝒦^{s+1}_{a,b} from ⁻𝒦^{s}_{a,b}, ⁻𝒦^{s-1}_{a-1,b-1}, ⁻𝒦^{s}_{a-1,b-1}; s >= 1.
// boundary = p1^n1/n1! e^{-p2} 2^a e^{-p3} when b = 0, else 0.
BigReal K_minus_step(const BigReal& a, const BigReal& b, long s, const BigReal& p3,
                     const BigReal& boundary, const BigReal& km_s, const BigReal& km_lower_sm1,
                     const BigReal& km_lower_s);

}  // namespace rung

}  // namespace stoaux
