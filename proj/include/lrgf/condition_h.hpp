#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lrgf/quadratic_form.hpp"
#include "lrgf/spectral_model.hpp"

namespace lrgf {

enum class ConditionHStatus {
    HoldsByLemma,
    FailsLemmaRegion,
    NumericFinite,
    NumericUnstable,
};

enum class ConditionHMode { Auto, Analytic, Numeric };

struct ConditionHVerdict {
    ConditionHStatus status;
    std::string criterion;  // which analytic region decided, when analytic
    std::string detail;     // the inequality (or stability diagnostics)
    double estimate = 0.0;  // numeric path: importance-sampling estimate
    double std_error = 0.0;
    double drift = 0.0;     // relative range across the doubling ladder
    std::vector<double> doubling_estimates;
};

struct NumericHOptions {
    long base_samples = 1L << 17;
    int doublings = 4;
    std::uint64_t seed = 318837252;
    double stable_rel_range = 0.10;
};

// Decides the integrability condition on (atilde, gtilde):
//  - analytic path: the product-bound region (alpha > -d/2, beta > -d/2,
//    alpha + beta < -d/4) for isotropic/product filters, or the two-line
//    region (alpha_p, alpha_q > -1/2, beta > -1, alpha_p+alpha_q+beta <
//    -1/2); outside them the verdict is FailsLemmaRegion.
//  - numeric path: importance-sampled estimate of the full integral over
//    R^{4d} (inner t, s integrals folded into the sample space), with the
//    proposal density prod (1+|u_k|)^{-2}; "stable" means the cumulative
//    estimate moves by less than 10% across 4 sample-size doublings.
// Analytic mode on a kind without a region throws ContractError
// ("no analytic region; numeric only").
ConditionHVerdict check_condition_h(const SpectralModel& model,
                                    const QuadraticFormSpec& spec,
                                    ConditionHMode mode = ConditionHMode::Auto,
                                    const NumericHOptions& opts = {});

}  // namespace lrgf
