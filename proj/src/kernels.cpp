#include "lrgf/kernels.hpp"

#include <cmath>

#include "lrgf/error.hpp"
#include "lrgf/special.hpp"

namespace lrgf {

std::complex<double> kernel_H1(double z) {
    if (z == 0.0) return {1.0, 0.0};
    // (e^{iz} - 1)/(iz) = e^{iz/2} sinc(z/2)
    const double half = 0.5 * z;
    return std::polar(sinc(half), half);
}

std::complex<double> kernel_H(std::span<const double> z) {
    std::complex<double> out{1.0, 0.0};
    for (double zj : z) out *= kernel_H1(zj);
    return out;
}

std::complex<double> kernel_Hn_scaled1(long n, double z) {
    if (n < 1) throw ContractError("H_n needs n >= 1");
    const double nd = static_cast<double>(n);
    if (std::abs(z) > nd * kPi * (1.0 + 1e-12))
        throw ContractError("kernel_Hn_scaled requires z in nE");
    if (z == 0.0) return {1.0, 0.0};
    // n^{-1} e^{iz/n} (e^{iz}-1)/(e^{iz/n}-1)
    //   = e^{i z (n+1)/(2n)} sin(z/2) / (n sin(z/(2n)))
    const double phase = z * (nd + 1.0) / (2.0 * nd);
    const double denom = nd * std::sin(z / (2.0 * nd));
    return std::polar(std::sin(0.5 * z) / denom, phase);
}

std::complex<double> kernel_Hn_scaled(long n, std::span<const double> z) {
    std::complex<double> out{1.0, 0.0};
    for (double zj : z) out *= kernel_Hn_scaled1(n, zj);
    return out;
}

double fejer(long n, double x) {
    if (n < 1) throw ContractError("Fejer kernel needs n >= 1");
    if (x == 0.0) return static_cast<double>(n);
    const double s = std::sin(0.5 * x);
    const double sn = std::sin(0.5 * static_cast<double>(n) * x);
    return sn * sn / (static_cast<double>(n) * s * s);
}

}  // namespace lrgf
