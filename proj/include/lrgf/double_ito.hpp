#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "lrgf/quadratic_form.hpp"
#include "lrgf/rng.hpp"
#include "lrgf/spectral_model.hpp"

namespace lrgf {

// Sampler for the double stochastic-integral limit
//   Z = L1(0)^2 L2(0) int int atilde(x) atilde(y) K(x,y) dW(x) dW(y),
//   K(x,y) = int gtilde(t) H(x+t) H(y-t) dt,
// discretized on a Hermitian frequency grid of `resolution` points per axis
// over [-R, R]^d (half-cell offset), with the diagonal trace term removed.
// For beta = 0 (gtilde = 1) the kernel collapses to (2 pi)^d H(x+y).
struct DoubleItoOptions {
    long resolution = 512;    // M points per axis
    double radius = 200.0;    // R
    long count = 100000;      // number of samples N
    std::uint64_t seed = 1;
    std::uint64_t base_stream = 0;
    int threads = 1;
    enum class Kernel { Auto, ClosedFormBeta0, Quadrature };
    Kernel kernel = Kernel::Auto;
    double t_halfwidth = 500.0;   // truncation of the t-integral (Quadrature)
    double kernel_tol = 1e-6;     // quadrature tolerance per kernel entry
    bool assume_condition_h = false;  // skip the analytic admissibility gate
    bool force_fft_backend = false;   // beta-0 convolution path on any grid
};

struct DoubleItoEstimate {
    std::vector<double> samples;
    double second_moment = 0.0;  // 2 ||sym kernel||^2 on the same grid
    double tail_bound = 0.0;     // relative weight of |x| > R left out (NaN if unknown)
    long resolution = 0;
    double radius = 0.0;
};

DoubleItoEstimate sample_double_ito(const SpectralModel& model,
                                    const QuadraticFormSpec& spec,
                                    const DoubleItoOptions& opts);

// Deterministic evaluation of one sample from explicit standard normals
// (length = spectral degrees of freedom = second_moment grid size); exposes
// the pathwise map so tests can check Z(w) = Z(-w).
struct DoubleItoKernel;
class DoubleItoSampler {
public:
    DoubleItoSampler(const SpectralModel& model, const QuadraticFormSpec& spec,
                     const DoubleItoOptions& opts);
    ~DoubleItoSampler();
    DoubleItoSampler(const DoubleItoSampler&) = delete;
    DoubleItoSampler& operator=(const DoubleItoSampler&) = delete;

    long noise_size() const;                       // normals per sample
    double evaluate(std::span<const double> w) const;  // centered Z(w)
    double second_moment() const;
    double tail_bound() const;
    DoubleItoEstimate run(long count, std::uint64_t seed,
                          std::uint64_t base_stream, int threads) const;

private:
    std::unique_ptr<DoubleItoKernel> impl_;
};

}  // namespace lrgf
