#pragma once

#include <complex>

namespace lrgf {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

// sin(x)/x with the removable value 1 at x = 0.
inline double sinc(double x) {
    if (x == 0.0) return 1.0;
    return std::sin(x) / x;
}

namespace special {

// Tail of the oscillatory power integral: T(s, X) = int_X^inf t^s e^{it} dt,
// for s < 0, X > 0, by the integration-by-parts asymptotic series. Accurate
// once X is moderately large (terms shrink like |s - k| / X).
std::complex<double> osc_power_tail(double s, double x);

// C(s, X) = int_0^X t^s cos(t) dt for -1 < s < 0.
double cos_power_partial(double s, double x);

// r_s(h) = int_{-pi}^{pi} |x|^s e^{ihx} dx for -1 < s <= 0, integer h >= 0.
// Small h by adaptive quadrature, large h via Gamma closed form plus the
// oscillatory tail series; the two regimes agree to ~1e-12 at the switch.
double power_law_cosine_transform(double s, long h);

// c such that int_{-pi}^{pi} L0 |x|^{2 alpha} e^{ihx} dx ~ c h^{-2 alpha - 1}
// as h -> infinity: c = 2 L0 Gamma(2 alpha + 1) cos(pi (2 alpha + 1) / 2),
// for -1/2 < alpha < 0.
double covariance_tail_constant(double alpha, double l0);

}  // namespace special
}  // namespace lrgf
