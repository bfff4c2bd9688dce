#pragma once

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "lrgf/covariance.hpp"
#include "lrgf/field.hpp"
#include "lrgf/spectral_model.hpp"

namespace lrgf {

// Finite-support real weights (g_j) and the induced symbol
// g(t) = (2 pi)^{-d} sum_j g_j e^{-i<j,t>}. Real weights make the symbol
// conjugate-symmetric automatically. Optional metadata describes the
// homogeneous decomposition g = gtilde * L2 used by the limit-law machinery;
// the default (beta = 0, gtilde = 1, L2(0) = g(0)) covers delta-type
// weights.
class QuadraticFormSpec {
public:
    struct Weight {
        std::array<long, 2> lag;  // lag[1] unused when d = 1
        double value;
    };

    QuadraticFormSpec(int dimension, std::vector<Weight> weights);

    // Weights for r-hat(h)-style forms: a single unit weight at j = -h, so
    // that g(t) = (2 pi)^{-d} e^{i<h,t>}.
    static QuadraticFormSpec covariance_lag(int dimension,
                                            std::span<const long> h);
    static QuadraticFormSpec covariance_lag1(long h);
    static QuadraticFormSpec covariance_lag2(long h1, long h2);

    int dimension() const { return dimension_; }
    const std::vector<Weight>& weights() const { return weights_; }
    long support_radius() const { return support_radius_; }

    std::complex<double> symbol(std::span<const double> t) const;

    // Homogeneous-decomposition metadata.
    double beta() const { return beta_; }
    double l2_zero() const { return l2_zero_; }
    double gtilde(std::span<const double> t) const {
        return gtilde_ ? gtilde_(t) : 1.0;
    }
    bool gtilde_is_one() const { return !gtilde_; }
    // |gtilde(x)| <= c prod |x_i|^{2 beta / d} (hypothesis of the analytic
    // integrability regions); holds trivially for the default gtilde = 1.
    bool gtilde_product_bound() const { return gtilde_product_bound_; }

    QuadraticFormSpec& with_symbol_metadata(
        double beta, double l2_zero,
        std::function<double(std::span<const double>)> gtilde = nullptr,
        bool product_bound = true);

    QuadraticFormSpec scaled(double c) const;

private:
    int dimension_;
    std::vector<Weight> weights_;
    long support_radius_ = 0;
    double beta_ = 0.0;
    double l2_zero_ = 0.0;
    std::function<double(std::span<const double>)> gtilde_;
    bool gtilde_product_bound_ = true;
};

// Q_n = n^{-d} sum_{i,j in A_n} g_{i-j} X_i X_j, by lag grouping (exact).
double quadratic_form(const FieldSample& field, const QuadraticFormSpec& spec);

// Same value via FFT cross-correlation of the windowed field; exact lag
// identity, O(n^d log n).
double quadratic_form_fft(const FieldSample& field,
                          const QuadraticFormSpec& spec);

// E[Q_n] = sum_m g_m r(m) prod_k (1 - |m_k|/n).
double expected_q(const SpectralModel& model, const QuadraticFormSpec& spec,
                  long n, double cov_tol = 1e-8);
// Same with covariances supplied (avoids repeated quadrature).
double expected_q(const LagCovariance& cov, const QuadraticFormSpec& spec,
                  long n);

// r-hat(h) = n^{-d} sum_{i in A_n} X_i X_{i+h}; needs margin >= |h|_inf.
double empirical_cov(const FieldSample& field, std::span<const long> h);
double empirical_cov1(const FieldSample& field, long h);
double empirical_cov2(const FieldSample& field, long h1, long h2);

// Centered variant: X replaced by X - Xbar_n (mean over A_n).
double empirical_cov_centered(const FieldSample& field,
                              std::span<const long> h);

// I_n(t) = (2 pi n)^{-d} |sum_{k in A_n} X_k e^{i<k,t>}|^2 >= 0.
double periodogram(const FieldSample& field, std::span<const double> t);

}  // namespace lrgf
