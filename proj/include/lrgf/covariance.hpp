#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lrgf/quadrature.hpp"
#include "lrgf/spectral_model.hpp"

namespace lrgf {

// r(h) = int_E e^{i<h,x>} f(x) dx, by panel quadrature of the even part
// f(x) cos(<h,x>); computing only the cosine part makes r(h) = r(-h) hold
// bit for bit.
double covariance(const SpectralModel& model, std::span<const long> h,
                  double abs_tol = 1e-8);
double covariance(const SpectralModel& model, long h1, double abs_tol = 1e-8);
double covariance(const SpectralModel& model, long h1, long h2,
                  double abs_tol = 1e-8);

// sigma~(h1) = int_{-pi}^{pi} e^{i h1 x} ftilde(x) dx for an even density;
// `cuts` declares ftilde's singularities.
double sigma_tilde(const std::function<double(double)>& ftilde, long h1,
                   double abs_tol = 1e-9,
                   const std::vector<quad::SingularCut>& cuts = {});

// Closed-form covariance of the one-direction model
// f(x1,x2) = (2 pi)^{-1} ftilde(x1 + p x2):
//   sigma(h1,h2) = sigma~(h1)                     if h2 = p h1
//                = sinc((h2 - p h1) pi) sigma~(h1) otherwise.
double covariance_one_direction(double p,
                                const std::function<double(double)>& ftilde,
                                long h1, long h2, double abs_tol = 1e-9,
                                const std::vector<quad::SingularCut>& ftilde_cuts = {});

// Bulk lag series r(0), r(1), ..., r(max_lag) for d = 1 catalog models with
// constant L1: exact via the Gamma/oscillatory-tail closed form instead of
// one quadrature per lag. Throws ContractError for models it cannot do.
std::vector<double> covariance_series_1d(const SpectralModel& model,
                                         long max_lag);

// rtilde(0..max_lag) for a one-direction model (covariance of ftilde).
std::vector<double> rtilde_series(const SpectralModel& model, long max_lag);

// Dense table of covariances over |h|_inf <= radius.
struct CovarianceTable {
    int dimension = 1;
    long radius = 0;
    std::vector<double> values;  // (2r+1)^d, row-major in (h1 [, h2])

    double at(long h1) const;
    double at(long h1, long h2) const;
};

CovarianceTable covariance_table(const SpectralModel& model, long radius,
                                 double abs_tol = 1e-8);

// Random-access r(u) for |u|_inf <= radius with model-aware fast paths
// (exact transforms for d=1 power laws and separable/one-direction d=2
// models); other models fall back to a quadrature table, which is refused
// above radius 64 (ResourceError).
class LagCovariance {
public:
    LagCovariance(const SpectralModel& model, long max_abs_lag);

    int dimension() const { return dimension_; }
    long radius() const { return radius_; }
    double at(long u) const;
    double at(long u1, long u2) const;

private:
    enum class Mode { Series1D, ProductAxes, OneDirectionLine, Table };
    int dimension_;
    long radius_;
    Mode mode_;
    std::vector<double> series_;  // per-axis (or rtilde) series by |u|
    double scale_ = 1.0;          // L1(0)^2 for separable models
    double p_ = 0.0;              // one-direction slope
    CovarianceTable table_;
};

}  // namespace lrgf
