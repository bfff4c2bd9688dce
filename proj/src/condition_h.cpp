#include "lrgf/condition_h.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lrgf/rng.hpp"

namespace lrgf {

namespace {

bool has_analytic_region(const SpectralModel& model) {
    switch (model.kind()) {
        case ModelKind::Isotropic:
        case ModelKind::Product:
        case ModelKind::TwoLines:
            return true;
        default:
            return false;
    }
}

ConditionHVerdict analytic_verdict(const SpectralModel& model,
                                   const QuadraticFormSpec& spec) {
    if (!spec.gtilde_product_bound())
        throw ContractError(
            "analytic regions assume |gtilde| bounded by a product of "
            "coordinate powers");
    const double beta = spec.beta();
    const double d = static_cast<double>(model.dimension());
    ConditionHVerdict v;
    std::ostringstream detail;
    if (model.kind() == ModelKind::TwoLines) {
        v.criterion = "two-line region";
        const double ap = model.alpha_p(), aq = model.alpha_q();
        const bool holds = ap > -0.5 && aq > -0.5 && beta > -1.0 &&
                           ap + aq + beta < -0.5;
        detail << "alpha_p=" << ap << ", alpha_q=" << aq << ", beta=" << beta
               << "; needs alpha_p,alpha_q > -1/2, beta > -1, "
                  "alpha_p+alpha_q+beta < -1/2";
        v.status = holds ? ConditionHStatus::HoldsByLemma
                         : ConditionHStatus::FailsLemmaRegion;
    } else {
        v.criterion = "product-bound region";
        const double alpha = model.alpha();
        const bool holds = alpha > -d / 2.0 && beta > -d / 2.0 &&
                           alpha + beta < -d / 4.0;
        detail << "alpha=" << alpha << ", beta=" << beta
               << "; needs alpha > -d/2, beta > -d/2, alpha+beta < -d/4 "
                  "(d="
               << model.dimension() << ")";
        v.status = holds ? ConditionHStatus::HoldsByLemma
                         : ConditionHStatus::FailsLemmaRegion;
    }
    v.detail = detail.str();
    return v;
}

// Draw from the per-coordinate proposal q(u) = (1/2)(1+|u|)^{-2}.
double draw_proposal(RngStream& rng) {
    const double v = rng.next_u01();
    const double mag = v / (1.0 - v);
    return rng.next_u64() & 1 ? mag : -mag;
}

double proposal_density(double u) {
    const double b = 1.0 + std::abs(u);
    return 0.5 / (b * b);
}

ConditionHVerdict numeric_verdict(const SpectralModel& model,
                                  const QuadraticFormSpec& spec,
                                  const NumericHOptions& opts) {
    const int d = model.dimension();
    const int coords = 4 * d;
    RngStream rng(opts.seed, 0);

    long double acc = 0.0L;
    long double acc_sq = 0.0L;
    long total = 0;
    std::vector<double> marks;
    double u[8];
    double x[2], y[2], t[2], s[2];

    long target = opts.base_samples;
    for (int stage = 0; stage <= opts.doublings; ++stage) {
        for (; total < target; ++total) {
            double qdens = 1.0;
            for (int c = 0; c < coords; ++c) {
                u[c] = draw_proposal(rng);
                qdens *= proposal_density(u[c]);
            }
            for (int j = 0; j < d; ++j) {
                x[j] = u[j];
                y[j] = u[d + j];
                t[j] = u[2 * d + j];
                s[j] = u[3 * d + j];
            }
            const double ax = model.tilde_a(std::span<const double>(x, d));
            const double ay = model.tilde_a(std::span<const double>(y, d));
            const double gt =
                std::abs(spec.gtilde(std::span<const double>(t, d)));
            const double gs =
                std::abs(spec.gtilde(std::span<const double>(s, d)));
            double denom = 1.0;
            for (int j = 0; j < d; ++j) {
                denom *= (1.0 + std::abs(x[j] + t[j])) *
                         (1.0 + std::abs(y[j] - t[j])) *
                         (1.0 + std::abs(x[j] + s[j])) *
                         (1.0 + std::abs(y[j] - s[j]));
            }
            const double value = ax * ax * ay * ay * gt * gs / denom;
            const double w = value / qdens;
            acc += w;
            acc_sq += w * w;
        }
        marks.push_back(static_cast<double>(acc / total));
        target *= 2;
    }

    ConditionHVerdict v;
    v.doubling_estimates = marks;
    v.estimate = marks.back();
    const double n = static_cast<double>(total);
    const double mean = v.estimate;
    const double var =
        std::max(0.0L, acc_sq / total - static_cast<long double>(mean) * mean);
    v.std_error = std::sqrt(static_cast<double>(var) / n);
    const auto [mn, mx] = std::minmax_element(marks.begin(), marks.end());
    v.drift = (*mx - *mn) / std::abs(marks.back());
    v.criterion = "importance-sampling stability";
    std::ostringstream detail;
    detail << "relative range " << v.drift << " across " << opts.doublings
           << " doublings (threshold " << opts.stable_rel_range << ")";
    v.detail = detail.str();
    v.status = v.drift < opts.stable_rel_range
                   ? ConditionHStatus::NumericFinite
                   : ConditionHStatus::NumericUnstable;
    return v;
}

}  // namespace

ConditionHVerdict check_condition_h(const SpectralModel& model,
                                    const QuadraticFormSpec& spec,
                                    ConditionHMode mode,
                                    const NumericHOptions& opts) {
    if (model.dimension() != spec.dimension())
        throw ContractError("model/form dimension mismatch");
    switch (mode) {
        case ConditionHMode::Analytic:
            if (!has_analytic_region(model))
                throw ContractError(
                    "no analytic region for this model kind; numeric only");
            return analytic_verdict(model, spec);
        case ConditionHMode::Numeric:
            return numeric_verdict(model, spec, opts);
        case ConditionHMode::Auto:
            if (has_analytic_region(model) && spec.gtilde_product_bound())
                return analytic_verdict(model, spec);
            return numeric_verdict(model, spec, opts);
    }
    throw ContractError("bad condition-(H) mode");
}

}  // namespace lrgf
