#include "lrgf/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace lrgf::fft {
namespace {
std::mutex plan_mutex;  // FFTW planning is not thread-safe
}

void transform1(std::complex<double>* data, long n0, int sign) {
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        plan = fftw_plan_dft_1d(static_cast<int>(n0), buf, buf,
                                sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        fftw_destroy_plan(plan);
    }
}

void transform2(std::complex<double>* data, long n0, long n1, int sign) {
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        plan = fftw_plan_dft_2d(static_cast<int>(n0), static_cast<int>(n1),
                                buf, buf,
                                sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        fftw_destroy_plan(plan);
    }
}

}  // namespace lrgf::fft
