#pragma once

#include <span>
#include <vector>

namespace lrgf {

// Neumaier-compensated sum (order-stable up to rounding of the running
// compensation; used so aggregation order cannot shift reported moments).
double compensated_sum(std::span<const double> xs);

struct MomentSummary {
    long count = 0;
    double mean = 0.0, mean_se = 0.0;
    double variance = 0.0, variance_se = 0.0;  // unbiased, jackknife SE
    double skewness = 0.0, skewness_se = 0.0;
    double excess_kurtosis = 0.0, excess_kurtosis_se = 0.0;
};

// Moment estimators with jackknife standard errors (robust to non-normal
// samples, which is what the non-central runs produce).
MomentSummary summarize_moments(std::span<const double> xs);

// sup_x |F_hat(x) - Phi((x - mean)/sd)| against a normal fitted to the
// sample; a shape diagnostic only.
double ks_distance_fitted_normal(std::span<const double> xs);

struct NormalityDiagnostics {
    long count = 0;
    double skewness = 0.0, skewness_se = 0.0;
    double excess_kurtosis = 0.0, excess_kurtosis_se = 0.0;
    double ks_distance = 0.0;
};

// Requires >= 500 samples and nonzero variance.
NormalityDiagnostics normality_diagnostics(std::span<const double> xs);

struct SlopeFit {
    double slope = 0.0;
    double half_width = 0.0;  // 95% from residual-based SE (Student t)
    double intercept = 0.0;
};

// OLS of log(var) on log(n); needs >= 3 points with positive variances.
SlopeFit estimate_scaling_exponent(
    std::span<const std::pair<double, double>> n_and_var);

}  // namespace lrgf
