#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "lrgf/error.hpp"
#include "lrgf/quadrature.hpp"
#include "lrgf/special.hpp"

namespace lrgf {

enum class ModelKind { WhiteNoise, Isotropic, Product, TwoLines, OneDirection };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& s);

// Bounded factor, continuous at zero with a declared nonzero value there.
// Serializable form is the constant; closures are for in-process use only.
struct BoundedFactor {
    double at_zero = 1.0;
    std::function<double(std::span<const double>)> fn;  // null => constant

    double operator()(std::span<const double> x) const {
        return fn ? fn(x) : at_zero;
    }
    bool is_const() const { return !fn; }

    static BoundedFactor constant(double c) { return BoundedFactor{c, nullptr}; }
};

// One catalog entry: filter a(x) = tilde_a(x) * L1(x) on E = [-pi, pi]^d,
// with spectral density f = |a|^2. Immutable after construction.
class SpectralModel {
public:
    static SpectralModel white_noise(int dimension);
    static SpectralModel isotropic(int dimension, double alpha,
                                   BoundedFactor l1 = BoundedFactor::constant(1.0));
    static SpectralModel product(int dimension, double alpha,
                                 BoundedFactor l1 = BoundedFactor::constant(1.0));
    static SpectralModel two_lines(double alpha_p, double alpha_q, double p,
                                   double q,
                                   BoundedFactor l1 = BoundedFactor::constant(1.0));
    // f(x1, x2) = (2 pi)^{-1} ftilde(x1 + p x2) with
    // ftilde(u) = l0 |u|^{2 alpha} on [-pi, pi], extended 2pi-periodically.
    static SpectralModel one_direction(double alpha, double p, double l0 = 1.0);

    int dimension() const { return dimension_; }
    ModelKind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    double alpha_p() const { return alpha_p_; }
    double alpha_q() const { return alpha_q_; }
    double slope_p() const { return p_; }
    double slope_q() const { return q_; }
    double ftilde_scale() const { return l0_; }
    const BoundedFactor& l1() const { return l1_; }

    // Homogeneity degree of the homogeneous part tilde_a.
    double homogeneity_degree() const;

    // Filter amplitude a(x). Throws SingularPointError where |a| = inf.
    std::complex<double> eval_filter(std::span<const double> x) const;

    // Homogeneous part tilde_a evaluated on all of R^d (no periodization).
    double tilde_a(std::span<const double> x) const;

    // f(x) = |a(x)|^2; +inf at singular points is fine for integration.
    double density(std::span<const double> x) const;
    double density1(double x) const;
    double density2(double x1, double x2) const;

    // Periodized 1-d density for OneDirection: ftilde on R.
    double ftilde(double u) const;
    // Antiderivatives of ftilde on R (F(0) = G(0) = 0); these make exact
    // closed-form cell masses possible for the spectral synthesis grid.
    double ftilde_antiderivative(double u) const;
    double ftilde_antiderivative2(double u) const;

    bool density_in_l2() const;
    bool has_constant_l1() const { return l1_.is_const(); }

    // Singular structure of f^power on E, for quadrature drivers. Each cut
    // carries the local exponent of the integrand (power = 1 for f itself,
    // 2 for f^2).
    // d=1: x-values where f blows up.
    std::vector<quad::SingularCut> density_cuts_1d(double power = 1.0) const;
    // d=2: x1-singularities of the slice at height x2, and the x2 values
    // where the slice integral changes character.
    std::vector<quad::SingularCut> density_inner_cuts(double x2,
                                                      double power = 1.0) const;
    std::vector<quad::SingularCut> density_outer_cuts(double power = 1.0) const;

    bool is_singular_at(std::span<const double> x) const;

    std::string describe() const;

private:
    SpectralModel() = default;

    int dimension_ = 1;
    ModelKind kind_ = ModelKind::WhiteNoise;
    double alpha_ = 0.0;     // Isotropic/Product/OneDirection degree
    double alpha_p_ = 0.0;   // TwoLines
    double alpha_q_ = 0.0;   // TwoLines
    double p_ = 0.0;         // TwoLines / OneDirection slope
    double q_ = 0.0;         // TwoLines second slope
    double l0_ = 1.0;        // OneDirection ftilde scale
    BoundedFactor l1_ = BoundedFactor::constant(1.0);
};

}  // namespace lrgf
