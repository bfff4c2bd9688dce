#include "lrgf/spectral_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lrgf {

namespace {

// Wrap u into [-pi, pi).
double wrap_to_pi(double u) {
    double w = std::remainder(u, kTwoPi);
    if (w == kPi) w = -kPi;
    return w;
}

}  // namespace

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::WhiteNoise: return "white_noise";
        case ModelKind::Isotropic: return "isotropic";
        case ModelKind::Product: return "product";
        case ModelKind::TwoLines: return "two_lines";
        case ModelKind::OneDirection: return "one_direction";
    }
    return "unknown";
}

ModelKind model_kind_from_string(const std::string& s) {
    if (s == "white_noise") return ModelKind::WhiteNoise;
    if (s == "isotropic") return ModelKind::Isotropic;
    if (s == "product") return ModelKind::Product;
    if (s == "two_lines") return ModelKind::TwoLines;
    if (s == "one_direction") return ModelKind::OneDirection;
    throw ConfigError("unknown model kind: " + s);
}

SpectralModel SpectralModel::white_noise(int dimension) {
    if (dimension < 1) throw AdmissibilityError("dimension must be >= 1");
    SpectralModel m;
    m.dimension_ = dimension;
    m.kind_ = ModelKind::WhiteNoise;
    m.l1_ = BoundedFactor::constant(1.0);
    return m;
}

SpectralModel SpectralModel::isotropic(int dimension, double alpha,
                                       BoundedFactor l1) {
    if (dimension < 1) throw AdmissibilityError("dimension must be >= 1");
    if (!(alpha > -dimension / 2.0))
        throw AdmissibilityError("isotropic model needs alpha > -d/2");
    if (l1.at_zero == 0.0) throw AdmissibilityError("L1(0) must be nonzero");
    SpectralModel m;
    m.dimension_ = dimension;
    m.kind_ = ModelKind::Isotropic;
    m.alpha_ = alpha;
    m.l1_ = std::move(l1);
    return m;
}

SpectralModel SpectralModel::product(int dimension, double alpha,
                                     BoundedFactor l1) {
    if (dimension < 1) throw AdmissibilityError("dimension must be >= 1");
    if (!(alpha > -dimension / 2.0))
        throw AdmissibilityError("product model needs alpha > -d/2");
    if (l1.at_zero == 0.0) throw AdmissibilityError("L1(0) must be nonzero");
    SpectralModel m;
    m.dimension_ = dimension;
    m.kind_ = ModelKind::Product;
    m.alpha_ = alpha;
    m.l1_ = std::move(l1);
    return m;
}

SpectralModel SpectralModel::two_lines(double alpha_p, double alpha_q, double p,
                                       double q, BoundedFactor l1) {
    if (!(alpha_p > -0.5) || !(alpha_q > -0.5))
        throw AdmissibilityError("two-line model needs alpha_p, alpha_q > -1/2");
    if (p == q) throw AdmissibilityError("two-line model needs p != q");
    if (l1.at_zero == 0.0) throw AdmissibilityError("L1(0) must be nonzero");
    SpectralModel m;
    m.dimension_ = 2;
    m.kind_ = ModelKind::TwoLines;
    m.alpha_p_ = alpha_p;
    m.alpha_q_ = alpha_q;
    m.alpha_ = alpha_p + alpha_q;  // homogeneity degree of tilde_a
    m.p_ = p;
    m.q_ = q;
    m.l1_ = std::move(l1);
    return m;
}

SpectralModel SpectralModel::one_direction(double alpha, double p, double l0) {
    if (!(alpha > -0.5) || !(alpha < 0.0))
        throw AdmissibilityError("one-direction model needs -1/2 < alpha < 0");
    if (l0 <= 0.0) throw AdmissibilityError("ftilde scale must be positive");
    SpectralModel m;
    m.dimension_ = 2;
    m.kind_ = ModelKind::OneDirection;
    m.alpha_ = alpha;
    m.p_ = p;
    m.l0_ = l0;
    return m;
}

double SpectralModel::homogeneity_degree() const {
    switch (kind_) {
        case ModelKind::WhiteNoise: return 0.0;
        case ModelKind::TwoLines: return alpha_p_ + alpha_q_;
        default: return alpha_;
    }
}

double SpectralModel::tilde_a(std::span<const double> x) const {
    switch (kind_) {
        case ModelKind::WhiteNoise:
            return std::pow(kTwoPi, -dimension_ / 2.0);
        case ModelKind::Isotropic: {
            double n2 = 0.0;
            for (double xi : x) n2 += xi * xi;
            return std::pow(n2, alpha_ / 2.0);
        }
        case ModelKind::Product: {
            double v = 1.0;
            for (double xi : x) v *= std::pow(std::abs(xi), alpha_ / dimension_);
            return v;
        }
        case ModelKind::TwoLines:
            return std::pow(std::abs(x[0] + p_ * x[1]), alpha_p_) *
                   std::pow(std::abs(x[0] + q_ * x[1]), alpha_q_);
        case ModelKind::OneDirection:
            // Homogeneous envelope of the density along the memory line;
            // used by the numeric integrability check, not by the density.
            return std::pow(std::abs(x[0] + p_ * x[1]), alpha_);
    }
    return 0.0;
}

double SpectralModel::ftilde(double u) const {
    if (kind_ != ModelKind::OneDirection)
        throw ContractError("ftilde is defined only for one-direction models");
    const double w = std::abs(wrap_to_pi(u));
    return l0_ * std::pow(w, 2.0 * alpha_);
}

double SpectralModel::ftilde_antiderivative(double u) const {
    if (kind_ != ModelKind::OneDirection)
        throw ContractError("ftilde antiderivatives need a one-direction model");
    const double s = 2.0 * alpha_ + 1.0;
    const double per_period = 2.0 * l0_ * std::pow(kPi, s) / s;
    const double m = std::round(u / kTwoPi);
    const double t = u - kTwoPi * m;
    const double phi =
        l0_ * std::copysign(std::pow(std::abs(t), s), t) / s;
    return m * per_period + phi;
}

double SpectralModel::ftilde_antiderivative2(double u) const {
    if (kind_ != ModelKind::OneDirection)
        throw ContractError("ftilde antiderivatives need a one-direction model");
    const double s = 2.0 * alpha_ + 1.0;
    const double per_period = 2.0 * l0_ * std::pow(kPi, s) / s;
    const double m = std::round(u / kTwoPi);
    const double t = u - kTwoPi * m;
    const double psi = l0_ * std::pow(std::abs(t), s + 1.0) / (s * (s + 1.0));
    return kPi * per_period * m * m + m * per_period * t + psi;
}

double SpectralModel::density(std::span<const double> x) const {
    switch (kind_) {
        case ModelKind::WhiteNoise:
            return std::pow(kTwoPi, -static_cast<double>(dimension_));
        case ModelKind::OneDirection:
            if (x.size() < 2)
                throw ContractError("one-direction density needs d = 2");
            return ftilde(x[0] + p_ * x[1]) / kTwoPi;
        default: {
            const double t = tilde_a(x) * l1_(x);
            return t * t;
        }
    }
}

double SpectralModel::density1(double x) const {
    if (dimension_ != 1) throw ContractError("density1 needs d = 1");
    const double xs[1] = {x};
    return density(std::span<const double>(xs, 1));
}

double SpectralModel::density2(double x1, double x2) const {
    if (dimension_ != 2) throw ContractError("density2 needs d = 2");
    const double xs[2] = {x1, x2};
    return density(std::span<const double>(xs, 2));
}

bool SpectralModel::is_singular_at(std::span<const double> x) const {
    switch (kind_) {
        case ModelKind::WhiteNoise:
            return false;
        case ModelKind::Isotropic:
        case ModelKind::Product: {
            if (alpha_ >= 0.0) return false;
            if (kind_ == ModelKind::Isotropic) {
                double n2 = 0.0;
                for (double xi : x) n2 += xi * xi;
                return n2 == 0.0;
            }
            return std::any_of(x.begin(), x.end(),
                               [](double xi) { return xi == 0.0; });
        }
        case ModelKind::TwoLines:
            return (alpha_p_ < 0.0 && x[0] + p_ * x[1] == 0.0) ||
                   (alpha_q_ < 0.0 && x[0] + q_ * x[1] == 0.0);
        case ModelKind::OneDirection:
            return wrap_to_pi(x[0] + p_ * x[1]) == 0.0;
    }
    return false;
}

std::complex<double> SpectralModel::eval_filter(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dimension_)
        throw ContractError("point dimension does not match model dimension");
    if (is_singular_at(x))
        throw SingularPointError("filter is singular at the given point");
    if (kind_ == ModelKind::OneDirection)
        return {std::sqrt(density(x)), 0.0};
    return {tilde_a(x) * l1_(x), 0.0};
}

bool SpectralModel::density_in_l2() const {
    switch (kind_) {
        case ModelKind::WhiteNoise: return true;
        case ModelKind::Isotropic:
        case ModelKind::Product: return 4.0 * alpha_ > -dimension_;
        case ModelKind::TwoLines:
            return 4.0 * alpha_p_ > -1.0 && 4.0 * alpha_q_ > -1.0;
        case ModelKind::OneDirection: return 4.0 * alpha_ > -1.0;
    }
    return false;
}

std::vector<quad::SingularCut> SpectralModel::density_cuts_1d(
    double power) const {
    if (dimension_ != 1) throw ContractError("density_cuts_1d needs d = 1");
    if (kind_ == ModelKind::WhiteNoise || alpha_ >= 0.0) return {};
    return {{0.0, 2.0 * alpha_ * power}};
}

std::vector<quad::SingularCut> SpectralModel::density_inner_cuts(
    double x2, double power) const {
    if (dimension_ != 2) throw ContractError("density_inner_cuts needs d = 2");
    switch (kind_) {
        case ModelKind::WhiteNoise: return {};
        case ModelKind::Isotropic:
            // Slices off x2 = 0 are smooth; the x2 = 0 slice never gets
            // evaluated because 0 is an outer cut.
            if (x2 != 0.0) return {};
            return {{0.0, 2.0 * alpha_ * power}};
        case ModelKind::Product:
            return {{0.0, alpha_ * power}};
        case ModelKind::TwoLines:
            return {{-p_ * x2, 2.0 * alpha_p_ * power},
                    {-q_ * x2, 2.0 * alpha_q_ * power}};
        case ModelKind::OneDirection: {
            std::vector<quad::SingularCut> cuts;
            // x1 + p x2 = 2 pi m within x1 in [-pi, pi]
            const double lo = (-kPi + p_ * x2) / kTwoPi;
            const double hi = (kPi + p_ * x2) / kTwoPi;
            for (long m = static_cast<long>(std::floor(lo)) - 1;
                 m <= static_cast<long>(std::ceil(hi)) + 1; ++m) {
                const double x1 = kTwoPi * static_cast<double>(m) - p_ * x2;
                if (x1 >= -kPi && x1 <= kPi)
                    cuts.push_back({x1, 2.0 * alpha_ * power});
            }
            return cuts;
        }
    }
    return {};
}

std::vector<quad::SingularCut> SpectralModel::density_outer_cuts(
    double power) const {
    if (dimension_ != 2) throw ContractError("density_outer_cuts needs d = 2");
    switch (kind_) {
        case ModelKind::WhiteNoise: return {};
        case ModelKind::Isotropic:
            return {{0.0, 2.0 * alpha_ * power + 1.0}};
        case ModelKind::Product:
            return {{0.0, alpha_ * power}};
        case ModelKind::TwoLines:
            return {{0.0, 2.0 * (alpha_p_ + alpha_q_) * power + 1.0}};
        case ModelKind::OneDirection: {
            if (p_ == 0.0) return {};
            std::vector<quad::SingularCut> cuts;
            // Slice integrals have cusps where a singular line crosses the
            // x1 boundary of the box.
            const double kink = 2.0 * alpha_ * power + 1.0;
            for (long m = -8; m <= 8; ++m) {
                for (double edge : {-kPi, kPi}) {
                    const double x2 =
                        (kTwoPi * static_cast<double>(m) - edge) / p_;
                    if (x2 > -kPi && x2 < kPi) cuts.push_back({x2, kink});
                }
            }
            return cuts;
        }
    }
    return {};
}

std::string SpectralModel::describe() const {
    std::ostringstream os;
    os << to_string(kind_) << "(d=" << dimension_;
    switch (kind_) {
        case ModelKind::WhiteNoise: break;
        case ModelKind::Isotropic:
        case ModelKind::Product: os << ", alpha=" << alpha_; break;
        case ModelKind::TwoLines:
            os << ", alpha_p=" << alpha_p_ << ", alpha_q=" << alpha_q_
               << ", p=" << p_ << ", q=" << q_;
            break;
        case ModelKind::OneDirection:
            os << ", alpha=" << alpha_ << ", p=" << p_ << ", L0=" << l0_;
            break;
    }
    os << ")";
    return os.str();
}

}  // namespace lrgf
