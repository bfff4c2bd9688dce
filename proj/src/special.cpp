#include "lrgf/special.hpp"

#include <cmath>

#include "lrgf/error.hpp"
#include "lrgf/quadrature.hpp"

namespace lrgf::special {

std::complex<double> osc_power_tail(double s, double x) {
    // T(s, X) obeys T(s, X) = i X^s e^{iX} + i s T(s-1, X); unrolling gives
    // term_0 = i X^s e^{iX}, term_{k+1} = term_k * i (s - k)/X.
    const std::complex<double> i(0.0, 1.0);
    std::complex<double> term =
        i * std::pow(x, s) * std::exp(i * x);
    std::complex<double> sum = term;
    double prev_mag = std::abs(term);
    for (int k = 0; k < 60; ++k) {
        term *= i * (s - k) / x;
        const double mag = std::abs(term);
        if (mag >= prev_mag) break;  // asymptotic series turned
        sum += term;
        if (mag < 1e-17 * (1.0 + std::abs(sum))) break;
        prev_mag = mag;
    }
    return sum;
}

double cos_power_partial(double s, double x) {
    const double full = std::tgamma(s + 1.0) * std::cos(kPi * (s + 1.0) / 2.0);
    return full - osc_power_tail(s, x).real();
}

double power_law_cosine_transform(double s, long h) {
    if (s <= -1.0 || s > 0.0)
        throw ContractError("power-law exponent must lie in (-1, 0]");
    if (h < 0) h = -h;
    if (h == 0) return 2.0 * std::pow(kPi, s + 1.0) / (s + 1.0);
    if (s == 0.0) return 0.0;  // flat density, oscillatory integral vanishes
    if (h <= 24) {
        quad::Options opts;
        opts.abs_tol = 1e-12;
        opts.max_initial_width = kPi / (2.0 * static_cast<double>(h));
        const double hd = static_cast<double>(h);
        return 2.0 * quad::integrate_value(
                         [s, hd](double x) {
                             return std::pow(x, s) * std::cos(hd * x);
                         },
                         0.0, kPi, opts, {{0.0, s}});
    }
    const double hd = static_cast<double>(h);
    return 2.0 * std::pow(hd, -s - 1.0) * cos_power_partial(s, kPi * hd);
}

double covariance_tail_constant(double alpha, double l0) {
    if (!(alpha > -0.5 && alpha < 0.0))
        throw ContractError("tail constant requires -1/2 < alpha < 0");
    if (l0 == 0.0) throw ContractError("tail constant requires L(0) != 0");
    return 2.0 * l0 * std::tgamma(2.0 * alpha + 1.0) *
           std::cos(kPi * (2.0 * alpha + 1.0) / 2.0);
}

}  // namespace lrgf::special
