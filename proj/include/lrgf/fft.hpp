#pragma once

#include <complex>

namespace lrgf::fft {

// Thin FFTW wrappers (complex-to-complex, unnormalized). Plan creation is
// serialized internally, so these are safe to call from worker threads.
// sign -1: sum x_j e^{-2 pi i jk/n}; sign +1: sum x_j e^{+2 pi i jk/n}.
void transform1(std::complex<double>* data, long n0, int sign);
void transform2(std::complex<double>* data, long n0, long n1, int sign);

}  // namespace lrgf::fft
