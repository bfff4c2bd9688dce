#include "lrgf/covariance.hpp"

#include <cmath>

#include "lrgf/error.hpp"
#include "lrgf/special.hpp"

namespace lrgf {

namespace {

double covariance_1d(const SpectralModel& model, long h, double abs_tol) {
    quad::Options opts;
    opts.abs_tol = abs_tol;
    opts.max_initial_width = kPi / (1.0 + std::abs(static_cast<double>(h)));
    const double hd = static_cast<double>(h);
    return quad::integrate_value(
        [&model, hd](double x) {
            return model.density1(x) * std::cos(hd * x);
        },
        -kPi, kPi, opts, model.density_cuts_1d());
}

double covariance_2d(const SpectralModel& model, long h1, long h2,
                     double abs_tol) {
    const double h1d = static_cast<double>(h1);
    const double h2d = static_cast<double>(h2);
    const double osc =
        kPi / (1.0 + std::max(std::abs(h1d), std::abs(h2d)));
    return quad::integrate2d(
        [&model, h1d, h2d](double x1, double x2) {
            return model.density2(x1, x2) * std::cos(h1d * x1 + h2d * x2);
        },
        -kPi, kPi, -kPi, kPi, abs_tol,
        [&model](double x2) { return model.density_inner_cuts(x2); },
        model.density_outer_cuts(), osc);
}

}  // namespace

double covariance(const SpectralModel& model, std::span<const long> h,
                  double abs_tol) {
    if (static_cast<int>(h.size()) != model.dimension())
        throw ContractError("lag dimension does not match model dimension");
    if (model.dimension() == 1) return covariance_1d(model, h[0], abs_tol);
    if (model.dimension() == 2)
        return covariance_2d(model, h[0], h[1], abs_tol);
    throw ContractError("covariance quadrature supports d <= 2");
}

double covariance(const SpectralModel& model, long h1, double abs_tol) {
    const long h[1] = {h1};
    return covariance(model, std::span<const long>(h, 1), abs_tol);
}

double covariance(const SpectralModel& model, long h1, long h2,
                  double abs_tol) {
    const long h[2] = {h1, h2};
    return covariance(model, std::span<const long>(h, 2), abs_tol);
}

double sigma_tilde(const std::function<double(double)>& ftilde, long h1,
                   double abs_tol, const std::vector<quad::SingularCut>& cuts) {
    quad::Options opts;
    opts.abs_tol = abs_tol;
    opts.max_initial_width =
        kPi / (1.0 + std::abs(static_cast<double>(h1)));
    const double hd = static_cast<double>(h1);
    return quad::integrate_value(
        [&ftilde, hd](double x) { return ftilde(x) * std::cos(hd * x); },
        -kPi, kPi, opts, cuts);
}

double covariance_one_direction(double p,
                                const std::function<double(double)>& ftilde,
                                long h1, long h2, double abs_tol,
                                const std::vector<quad::SingularCut>& ftilde_cuts) {
    const double st = sigma_tilde(ftilde, h1, abs_tol, ftilde_cuts);
    const double offset = static_cast<double>(h2) - p * static_cast<double>(h1);
    if (offset == 0.0) return st;
    return sinc(offset * kPi) * st;
}

std::vector<double> covariance_series_1d(const SpectralModel& model,
                                         long max_lag) {
    if (model.dimension() != 1)
        throw ContractError("covariance_series_1d needs d = 1");
    std::vector<double> out(static_cast<std::size_t>(max_lag) + 1, 0.0);
    switch (model.kind()) {
        case ModelKind::WhiteNoise:
            out[0] = 1.0;
            return out;
        case ModelKind::Isotropic:
        case ModelKind::Product: {
            if (!model.has_constant_l1())
                throw ContractError(
                    "bulk covariance series needs a constant L1 factor");
            const double scale = model.l1().at_zero * model.l1().at_zero;
            for (long h = 0; h <= max_lag; ++h)
                out[static_cast<std::size_t>(h)] =
                    scale *
                    special::power_law_cosine_transform(2.0 * model.alpha(), h);
            return out;
        }
        default:
            throw ContractError(
                "bulk covariance series supports d = 1 power-law models");
    }
}

std::vector<double> rtilde_series(const SpectralModel& model, long max_lag) {
    if (model.kind() != ModelKind::OneDirection)
        throw ContractError("rtilde_series needs a one-direction model");
    std::vector<double> out(static_cast<std::size_t>(max_lag) + 1, 0.0);
    const double l0 = model.ftilde_scale();
    for (long h = 0; h <= max_lag; ++h)
        out[static_cast<std::size_t>(h)] =
            l0 * special::power_law_cosine_transform(2.0 * model.alpha(), h);
    return out;
}

double CovarianceTable::at(long h1) const {
    if (dimension != 1) throw ContractError("table is not 1-dimensional");
    if (std::labs(h1) > radius) throw ContractError("lag outside table radius");
    return values[static_cast<std::size_t>(h1 + radius)];
}

double CovarianceTable::at(long h1, long h2) const {
    if (dimension != 2) throw ContractError("table is not 2-dimensional");
    if (std::labs(h1) > radius || std::labs(h2) > radius)
        throw ContractError("lag outside table radius");
    const long side = 2 * radius + 1;
    return values[static_cast<std::size_t>((h1 + radius) * side +
                                           (h2 + radius))];
}

LagCovariance::LagCovariance(const SpectralModel& model, long max_abs_lag)
    : dimension_(model.dimension()), radius_(max_abs_lag) {
    const std::size_t count = static_cast<std::size_t>(max_abs_lag) + 1;
    switch (model.kind()) {
        case ModelKind::WhiteNoise:
            // r is a delta; factors as a delta per axis.
            mode_ = dimension_ == 1 ? Mode::Series1D : Mode::ProductAxes;
            series_.assign(count, 0.0);
            series_[0] = 1.0;
            return;
        case ModelKind::Isotropic:
        case ModelKind::Product: {
            if (dimension_ == 1) {
                mode_ = Mode::Series1D;
                series_ = covariance_series_1d(model, max_abs_lag);
                return;
            }
            if (model.kind() == ModelKind::Product &&
                model.has_constant_l1()) {
                mode_ = Mode::ProductAxes;
                scale_ = model.l1().at_zero * model.l1().at_zero;
                series_.resize(count);
                const double axis_exp =
                    2.0 * model.alpha() / model.dimension();
                for (long u = 0; u <= max_abs_lag; ++u)
                    series_[static_cast<std::size_t>(u)] =
                        special::power_law_cosine_transform(axis_exp, u);
                return;
            }
            break;  // dense table fallback
        }
        case ModelKind::OneDirection:
            mode_ = Mode::OneDirectionLine;
            p_ = model.slope_p();
            series_ = rtilde_series(model, max_abs_lag);
            return;
        case ModelKind::TwoLines:
            break;  // dense table fallback
    }
    mode_ = Mode::Table;
    if (max_abs_lag > 64)
        throw ResourceError(
            "lag covariance table would need more than 64^d quadratures; "
            "model has no fast path");
    table_ = covariance_table(model, max_abs_lag);
}

double LagCovariance::at(long u) const {
    if (dimension_ != 1) throw ContractError("lag dimension mismatch");
    u = std::labs(u);
    if (u > radius_) throw ContractError("lag outside precomputed radius");
    return series_[static_cast<std::size_t>(u)];
}

double LagCovariance::at(long u1, long u2) const {
    if (dimension_ != 2) throw ContractError("lag dimension mismatch");
    if (std::labs(u1) > radius_ || std::labs(u2) > radius_)
        throw ContractError("lag outside precomputed radius");
    switch (mode_) {
        case Mode::ProductAxes:
            return scale_ * series_[static_cast<std::size_t>(std::labs(u1))] *
                   series_[static_cast<std::size_t>(std::labs(u2))];
        case Mode::OneDirectionLine: {
            const double offset = static_cast<double>(u2) -
                                  p_ * static_cast<double>(u1);
            const double rt = series_[static_cast<std::size_t>(std::labs(u1))];
            if (offset == 0.0) return rt;
            return sinc(offset * kPi) * rt;
        }
        case Mode::Table:
            return table_.at(u1, u2);
        default:
            throw ContractError("inconsistent lag covariance mode");
    }
}

CovarianceTable covariance_table(const SpectralModel& model, long radius,
                                 double abs_tol) {
    CovarianceTable table;
    table.dimension = model.dimension();
    table.radius = radius;
    const long side = 2 * radius + 1;
    if (model.dimension() == 1) {
        table.values.assign(static_cast<std::size_t>(side), 0.0);
        for (long h = 0; h <= radius; ++h) {
            const double v = covariance(model, h, abs_tol);
            table.values[static_cast<std::size_t>(radius + h)] = v;
            table.values[static_cast<std::size_t>(radius - h)] = v;
        }
        return table;
    }
    if (model.dimension() != 2)
        throw ContractError("covariance tables support d <= 2");
    table.values.assign(static_cast<std::size_t>(side * side), 0.0);
    for (long h1 = 0; h1 <= radius; ++h1) {
        for (long h2 = -radius; h2 <= radius; ++h2) {
            if (h1 == 0 && h2 < 0) continue;  // filled by mirror
            const double v = covariance(model, h1, h2, abs_tol);
            table.values[static_cast<std::size_t>((h1 + radius) * side +
                                                  (h2 + radius))] = v;
            table.values[static_cast<std::size_t>((radius - h1) * side +
                                                  (radius - h2))] = v;
        }
    }
    return table;
}

}  // namespace lrgf
