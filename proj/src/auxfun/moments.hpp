#pragma once

#include <vector>

#include "stoaux/bigreal.hpp"
#include "stoaux/context.hpp"

// Prefactor-free one-dimensional integrals over ξ in [1, ∞) and ν in [-1, 1]
// with decay rate lam, shared by the auxiliary-function kernels.
namespace stoaux::detail {

// ∫ ξ^m e^{-lam ξ}, any real m, lam > 0.
BigReal xi_moment(const BigReal& m, const BigReal& lam, const SeriesControl& ctl);

// ∫ ξ^mu (ξ-1)^nu e^{-lam ξ}, nu > -1.
BigReal shifted_moment(const BigReal& mu, const BigReal& nu, const BigReal& lam,
                       const SeriesControl& ctl);

// H_k = ∫ ξ^{mu-k} (ξ-1)^{nu+k} e^{-lam ξ} for k = 0..count-1, by Miller's
// backward recurrence normalised at k = 0.
std::vector<BigReal> shifted_moment_ladder(const BigReal& mu, const BigReal& nu,
                                           const BigReal& lam, long count,
                                           const SeriesControl& ctl);

// ∫ (ξ+1)^x (ξ-1)^y e^{-lam ξ}, y > -1.
BigReal plus_minus_moment(const BigReal& x, const BigReal& y, const BigReal& lam,
                          const SeriesControl& ctl);

// ∫ ξ^{-q} (ξ+1)^x (ξ-1)^y e^{-lam ξ} by the binomial series in (ξ-1)/2ξ.
BigReal inverse_power_moment(long q, const BigReal& x, const BigReal& y, const BigReal& lam,
                             const SeriesControl& ctl, long* terms = nullptr);

// ∫ (2ξ)^{a+b-q+1} B_{a+1,b+1}((ξ+1)/2ξ) e^{-lam ξ}.
BigReal k1_bare(long q, const BigReal& a, const BigReal& b, const BigReal& lam,
                const SeriesControl& ctl, long* terms = nullptr);
// ∫ (2ξ)^{a+b-q+1} B_{a+1,b+1}(1/2) e^{-lam ξ}.
BigReal k2_bare(long q, const BigReal& a, const BigReal& b, const BigReal& lam,
                const SeriesControl& ctl);
// ∫∫ ξ^{-q} (ξ+ν)^a (ξ-ν)^b e^{-lam ξ} through the incomplete-beta form.
BigReal nu_bare(long q, const BigReal& a, const BigReal& b, const BigReal& lam,
                const SeriesControl& ctl, long* terms = nullptr);

// ∫ ν^q (1+ν)^a (1-ν)^b e^{-lam ν}, any real lam.
BigReal n_bare(long q, const BigReal& a, const BigReal& b, const BigReal& lam,
               const SeriesControl& ctl);

// 2^{a+b+1} B(a+1, b+1) = ∫ (1+ν)^a (1-ν)^b dν.
BigReal edge_beta(const BigReal& a, const BigReal& b);

}  // namespace stoaux::detail
