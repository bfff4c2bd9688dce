#pragma once

#include "lrgf/field.hpp"
#include "lrgf/rng.hpp"
#include "lrgf/spectral_model.hpp"

namespace lrgf {

// Spectral synthesis: X_j = sum_k a_k e^{i<j, x_k>} dW_k over a Hermitian
// frequency grid of kappa*(n+2m) points per axis on E (rounded up to even so
// the half-cell offset never lands on a self-paired frequency), evaluated by
// FFT. The per-frequency amplitude carries the exact spectral mass of its
// grid cell, which keeps the synthesized covariance unbiased at lag zero and
// controls the singular-cell bias that a pointwise a(x_k) would leave.
FieldSample simulate_spectral(const SpectralModel& model, long n, long margin,
                              int kappa, RngStream rng);

// Exact sampler: dense Cholesky of the true covariance matrix over the
// padded window ((n+2m)^d <= 4096). Ground-truth distributional oracle for
// simulate_spectral.
FieldSample simulate_exact(const SpectralModel& model, long n, long margin,
                           RngStream rng);

// The synthesized field is stationary on the whole lattice; this is its
// exact lattice covariance at lag h (a Riemann-mass sum over the frequency
// grid), used by tests to separate discretization bias from Monte Carlo
// noise. Grid resolution matches simulate_spectral(model, n, margin, kappa).
double spectral_grid_covariance(const SpectralModel& model, long n,
                                long margin, int kappa,
                                std::span<const long> h);

}  // namespace lrgf
