#pragma once

#include <complex>
#include <span>

namespace lrgf {

// H(z) = prod_j (e^{i z_j} - 1) / (i z_j), with the removable value 1 at 0.
std::complex<double> kernel_H1(double z);
std::complex<double> kernel_H(std::span<const double> z);

// n^{-d} H_n(z/n) for z in nE, where H_n(t) = sum_{k in A_n} e^{i<k,t>}.
std::complex<double> kernel_Hn_scaled1(long n, double z);
std::complex<double> kernel_Hn_scaled(long n, std::span<const double> z);

// Fejer kernel F_n(x) = n^{-1} |sum_{k=1}^n e^{ikx}|^2 on [-pi, pi]
// (normalized so that its integral over [-pi, pi] is 2 pi).
double fejer(long n, double x);

}  // namespace lrgf
