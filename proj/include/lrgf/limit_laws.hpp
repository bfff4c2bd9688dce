#pragma once

#include <array>
#include <vector>

#include "lrgf/quadratic_form.hpp"
#include "lrgf/spectral_model.hpp"

namespace lrgf {

// Gaussian limit variance 2 (2 pi)^{3d} int_E f^2(t) g^2(t) dt for the
// normalized quadratic form n^{d/2}(Q_n - E Q_n). g^2 is the square of the
// (possibly complex) symbol; its odd imaginary part integrates to zero, so
// the real even part is what is computed. Throws DivergenceError ("not in
// CLT regime") when f is not square integrable.
double clt_variance(const SpectralModel& model, const QuadraticFormSpec& spec,
                    double abs_tol = 1e-8);

// (2h)-th Fourier coefficient of f^2: int_E e^{i<2h,x>} f^2(x) dx.
// 2 (2 pi)^d * this equals clt_variance of the weight-at(-h) form.
double fourier_coeff_fsq(const SpectralModel& model, std::span<const long> h,
                         double abs_tol = 1e-8);
double fourier_coeff_fsq1(const SpectralModel& model, long h,
                          double abs_tol = 1e-8);

// Limit variance of the one-direction anomaly,
// sigma^2_{alpha,p} = lim n^{4 alpha + 3} Var(r-hat(h)) for h2 != p h1:
// exact Wick variances on an n-ladder, Richardson-extrapolated; the
// extrapolation spread is carried as the uncertainty.
struct Sigma2Estimate {
    double value = 0.0;
    double uncertainty = 0.0;   // extrapolation spread (absolute)
    bool flagged = false;       // spread > 10% of value
    std::vector<long> ladder;
    std::vector<double> scaled_variances;  // n^{4a+3} Var at each ladder n
};

Sigma2Estimate sigma2_one_direction(double alpha, long p, double l0 = 1.0,
                                    std::vector<long> ladder = {64, 128, 256,
                                                                512});

}  // namespace lrgf
