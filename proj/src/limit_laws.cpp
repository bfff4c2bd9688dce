#include "lrgf/limit_laws.hpp"

#include <cmath>

#include "lrgf/quadrature.hpp"
#include "lrgf/wick.hpp"

namespace lrgf {

namespace {

void require_density_in_l2(const SpectralModel& model) {
    if (!model.density_in_l2())
        throw DivergenceError("not in CLT regime: f is not in L2 for " +
                              model.describe());
}

// int_E f^2(x) w(x) dx with w a bounded even trig weight.
double integral_fsq_weighted(const SpectralModel& model,
                             const std::function<double(std::span<const double>)>& w,
                             long osc_degree, double abs_tol) {
    const double osc = kPi / (1.0 + static_cast<double>(osc_degree));
    if (model.dimension() == 1) {
        quad::Options opts;
        opts.abs_tol = abs_tol;
        opts.max_initial_width = osc;
        return quad::integrate_value(
            [&](double x) {
                const double f = model.density1(x);
                const double xs[1] = {x};
                return f * f * w(std::span<const double>(xs, 1));
            },
            -kPi, kPi, opts, model.density_cuts_1d(2.0));
    }
    return quad::integrate2d(
        [&](double x1, double x2) {
            const double f = model.density2(x1, x2);
            const double xs[2] = {x1, x2};
            return f * f * w(std::span<const double>(xs, 2));
        },
        -kPi, kPi, -kPi, kPi, abs_tol,
        [&model](double y) { return model.density_inner_cuts(y, 2.0); },
        model.density_outer_cuts(2.0), osc);
}

}  // namespace

double clt_variance(const SpectralModel& model, const QuadraticFormSpec& spec,
                    double abs_tol) {
    if (model.dimension() != spec.dimension())
        throw ContractError("model/form dimension mismatch");
    require_density_in_l2(model);
    const double scale = 2.0 * std::pow(kTwoPi, 3.0 * model.dimension());
    const double integral = integral_fsq_weighted(
        model,
        [&spec](std::span<const double> x) {
            const std::complex<double> g = spec.symbol(x);
            return (g * g).real();
        },
        2 * spec.support_radius(), abs_tol / scale);
    return scale * integral;
}

double fourier_coeff_fsq(const SpectralModel& model, std::span<const long> h,
                         double abs_tol) {
    if (static_cast<int>(h.size()) != model.dimension())
        throw ContractError("lag dimension mismatch");
    require_density_in_l2(model);
    long deg = 2 * std::labs(h[0]);
    if (h.size() == 2) deg = std::max(deg, 2 * std::labs(h[1]));
    const double h1 = 2.0 * static_cast<double>(h[0]);
    const double h2 = h.size() == 2 ? 2.0 * static_cast<double>(h[1]) : 0.0;
    return integral_fsq_weighted(
        model,
        [h1, h2](std::span<const double> x) {
            double phase = h1 * x[0];
            if (x.size() == 2) phase += h2 * x[1];
            return std::cos(phase);
        },
        deg, abs_tol);
}

double fourier_coeff_fsq1(const SpectralModel& model, long h, double abs_tol) {
    const long hv[1] = {h};
    return fourier_coeff_fsq(model, std::span<const long>(hv, 1), abs_tol);
}

Sigma2Estimate sigma2_one_direction(double alpha, long p, double l0,
                                    std::vector<long> ladder) {
    if (!(alpha > -0.5 && alpha < -0.25))
        throw ContractError(
            "one-direction limit variance needs -1/2 < alpha < -1/4");
    if (p < 1) throw ContractError("one-direction limit variance needs p >= 1");
    if (ladder.size() < 3) throw ContractError("ladder needs >= 3 points");

    const SpectralModel model =
        SpectralModel::one_direction(alpha, static_cast<double>(p), l0);
    const long h[2] = {1, 0};  // h2 != p h1 for any p >= 1

    Sigma2Estimate est;
    est.ladder = ladder;
    const double rate = 4.0 * alpha + 3.0;
    for (long n : ladder) {
        const double v =
            wick_variance_rhat(model, std::span<const long>(h, 2), n);
        est.scaled_variances.push_back(v * std::pow(static_cast<double>(n), rate));
    }

    // One Richardson step per trailing triple: v_n = sigma^2 + c n^{-gamma}
    // with the decay ratio read off the differences.
    auto extrapolate = [](double v0, double v1, double v2) {
        const double d0 = v1 - v0;
        const double d1 = v2 - v1;
        if (d0 == 0.0 || d1 == 0.0 || std::abs(d1) >= std::abs(d0))
            return v2;  // differences not contracting; take the last value
        const double rho = d1 / d0;
        return v2 + d1 * rho / (1.0 - rho);
    };
    const std::size_t k = est.scaled_variances.size();
    const double ex_last =
        extrapolate(est.scaled_variances[k - 3], est.scaled_variances[k - 2],
                    est.scaled_variances[k - 1]);
    double spread = std::abs(ex_last - est.scaled_variances[k - 1]);
    if (k >= 4) {
        const double ex_prev = extrapolate(est.scaled_variances[k - 4],
                                           est.scaled_variances[k - 3],
                                           est.scaled_variances[k - 2]);
        spread = std::max(spread, std::abs(ex_last - ex_prev));
    }
    est.value = ex_last;
    est.uncertainty = spread;
    est.flagged = !(spread <= 0.10 * std::abs(ex_last));
    return est;
}

}  // namespace lrgf
