#pragma once

#include "lrgf/covariance.hpp"
#include "lrgf/quadratic_form.hpp"
#include "lrgf/spectral_model.hpp"

namespace lrgf {

// Exact Var(Q_n) for Gaussian fields from pairing the four factors:
//   Var(Q_n) = n^{-2d} sum_{m,m'} g_m g_{m'} sum_u N_{m,m'}(u)
//              [ r(u) r(u+m-m') + r(u-m') r(u+m) ],
// where N_{m,m'}(u) counts pairs i in S_m, i+u in S_{m'} (exact overlap).
// Q_n here is the Eq.-style window form (both indices inside A_n).
double wick_variance_qn(const SpectralModel& model,
                        const QuadraticFormSpec& spec, long n);
double wick_variance_qn(const LagCovariance& cov,
                        const QuadraticFormSpec& spec, long n);

// Exact Var(r-hat(h)) for the margin-using estimator
// r-hat(h) = n^{-d} sum_{i in A_n} X_i X_{i+h}:
//   Var = n^{-2d} sum_u prod_k (n - |u_k|) [ r(u)^2 + r(u+h) r(u-h) ].
double wick_variance_rhat(const SpectralModel& model, std::span<const long> h,
                          long n);
double wick_variance_rhat(const LagCovariance& cov, std::span<const long> h,
                          long n);

}  // namespace lrgf
