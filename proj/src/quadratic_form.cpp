#include "lrgf/quadratic_form.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "lrgf/fft.hpp"

namespace lrgf {

QuadraticFormSpec::QuadraticFormSpec(int dimension, std::vector<Weight> weights)
    : dimension_(dimension), weights_(std::move(weights)) {
    if (dimension_ < 1 || dimension_ > 2)
        throw ContractError("form dimension must be 1 or 2");
    double total = 0.0;
    for (const auto& w : weights_) {
        support_radius_ = std::max(support_radius_, std::labs(w.lag[0]));
        if (dimension_ == 2)
            support_radius_ = std::max(support_radius_, std::labs(w.lag[1]));
        total += w.value;
    }
    l2_zero_ = total * std::pow(kTwoPi, -dimension_);  // g(0)
}

QuadraticFormSpec QuadraticFormSpec::covariance_lag(int dimension,
                                                    std::span<const long> h) {
    if (static_cast<int>(h.size()) != dimension)
        throw ContractError("lag dimension mismatch");
    Weight w{{0, 0}, 1.0};
    w.lag[0] = -h[0];
    if (dimension == 2) w.lag[1] = -h[1];
    return QuadraticFormSpec(dimension, {w});
}

QuadraticFormSpec QuadraticFormSpec::covariance_lag1(long h) {
    const long hv[1] = {h};
    return covariance_lag(1, std::span<const long>(hv, 1));
}

QuadraticFormSpec QuadraticFormSpec::covariance_lag2(long h1, long h2) {
    const long hv[2] = {h1, h2};
    return covariance_lag(2, std::span<const long>(hv, 2));
}

std::complex<double> QuadraticFormSpec::symbol(std::span<const double> t) const {
    if (static_cast<int>(t.size()) != dimension_)
        throw ContractError("symbol argument dimension mismatch");
    std::complex<double> acc{0.0, 0.0};
    for (const auto& w : weights_) {
        double phase = static_cast<double>(w.lag[0]) * t[0];
        if (dimension_ == 2) phase += static_cast<double>(w.lag[1]) * t[1];
        acc += w.value * std::polar(1.0, -phase);
    }
    return acc * std::pow(kTwoPi, -dimension_);
}

QuadraticFormSpec& QuadraticFormSpec::with_symbol_metadata(
    double beta, double l2_zero,
    std::function<double(std::span<const double>)> gtilde, bool product_bound) {
    beta_ = beta;
    l2_zero_ = l2_zero;
    gtilde_ = std::move(gtilde);
    gtilde_product_bound_ = product_bound;
    return *this;
}

QuadraticFormSpec QuadraticFormSpec::scaled(double c) const {
    QuadraticFormSpec out = *this;
    for (auto& w : out.weights_) w.value *= c;
    out.l2_zero_ *= c;
    return out;
}

namespace {

// sum over i with i, i+m in A_n of X_i X_{i+m}, for one lag m.
double lag_product_sum(const FieldSample& field, long m1, long m2) {
    const long n = field.n();
    long double acc = 0.0L;
    if (field.dimension() == 1) {
        const long lo = std::max(1L, 1L - m1);
        const long hi = std::min(n, n - m1);
        for (long i = lo; i <= hi; ++i) acc += field.at(i) * field.at(i + m1);
    } else {
        const long lo1 = std::max(1L, 1L - m1), hi1 = std::min(n, n - m1);
        const long lo2 = std::max(1L, 1L - m2), hi2 = std::min(n, n - m2);
        for (long i1 = lo1; i1 <= hi1; ++i1)
            for (long i2 = lo2; i2 <= hi2; ++i2)
                acc += field.at(i1, i2) * field.at(i1 + m1, i2 + m2);
    }
    return static_cast<double>(acc);
}

}  // namespace

double quadratic_form(const FieldSample& field, const QuadraticFormSpec& spec) {
    if (field.dimension() != spec.dimension())
        throw ContractError("field/form dimension mismatch");
    const long n = field.n();
    long double acc = 0.0L;
    for (const auto& w : spec.weights()) {
        if (std::labs(w.lag[0]) >= n) continue;
        if (field.dimension() == 2 && std::labs(w.lag[1]) >= n) continue;
        acc += w.value * lag_product_sum(field, w.lag[0], w.lag[1]);
    }
    double norm = static_cast<double>(n);
    if (field.dimension() == 2) norm *= static_cast<double>(n);
    return static_cast<double>(acc) / norm;
}

double quadratic_form_fft(const FieldSample& field,
                          const QuadraticFormSpec& spec) {
    if (field.dimension() != spec.dimension())
        throw ContractError("field/form dimension mismatch");
    const long n = field.n();
    const long r = std::min(spec.support_radius(), n - 1);
    const long size = n + r + 1;  // zero padding kills wraparound

    if (field.dimension() == 1) {
        std::vector<std::complex<double>> buf(static_cast<std::size_t>(size));
        for (long i = 1; i <= n; ++i)
            buf[static_cast<std::size_t>(i - 1)] = field.at(i);
        fft::transform1(buf.data(), size, -1);
        for (auto& v : buf) v = std::norm(v);
        fft::transform1(buf.data(), size, +1);
        // buf[m] / size = sum_i X_i X_{i+m} for m >= 0 (and by symmetry
        // negative lags read from size - m).
        long double acc = 0.0L;
        for (const auto& w : spec.weights()) {
            const long m = w.lag[0];
            if (std::labs(m) >= n) continue;
            const long idx = m >= 0 ? m : size + m;
            acc += w.value * buf[static_cast<std::size_t>(idx)].real();
        }
        return static_cast<double>(acc) /
               (static_cast<double>(size) * static_cast<double>(n));
    }

    std::vector<std::complex<double>> buf(
        static_cast<std::size_t>(size) * size);
    for (long i1 = 1; i1 <= n; ++i1)
        for (long i2 = 1; i2 <= n; ++i2)
            buf[static_cast<std::size_t>(i1 - 1) * size + (i2 - 1)] =
                field.at(i1, i2);
    fft::transform2(buf.data(), size, size, -1);
    for (auto& v : buf) v = std::norm(v);
    fft::transform2(buf.data(), size, size, +1);
    long double acc = 0.0L;
    for (const auto& w : spec.weights()) {
        if (std::labs(w.lag[0]) >= n || std::labs(w.lag[1]) >= n) continue;
        const long i1 = w.lag[0] >= 0 ? w.lag[0] : size + w.lag[0];
        const long i2 = w.lag[1] >= 0 ? w.lag[1] : size + w.lag[1];
        acc += w.value *
               buf[static_cast<std::size_t>(i1) * size + i2].real();
    }
    const double cells = static_cast<double>(size) * size;
    return static_cast<double>(acc) /
           (cells * static_cast<double>(n) * n);
}

double expected_q(const LagCovariance& cov, const QuadraticFormSpec& spec,
                  long n) {
    long double acc = 0.0L;
    const double nd = static_cast<double>(n);
    for (const auto& w : spec.weights()) {
        const long m1 = w.lag[0];
        if (std::labs(m1) >= n) continue;
        double overlap = 1.0 - std::abs(static_cast<double>(m1)) / nd;
        double r;
        if (spec.dimension() == 1) {
            r = cov.at(m1);
        } else {
            const long m2 = w.lag[1];
            if (std::labs(m2) >= n) continue;
            overlap *= 1.0 - std::abs(static_cast<double>(m2)) / nd;
            r = cov.at(m1, m2);
        }
        acc += w.value * r * overlap;
    }
    return static_cast<double>(acc);
}

double expected_q(const SpectralModel& model, const QuadraticFormSpec& spec,
                  long n, double cov_tol) {
    if (model.dimension() != spec.dimension())
        throw ContractError("model/form dimension mismatch");
    long double acc = 0.0L;
    const double nd = static_cast<double>(n);
    for (const auto& w : spec.weights()) {
        const long m1 = w.lag[0];
        if (std::labs(m1) >= n) continue;
        double overlap = 1.0 - std::abs(static_cast<double>(m1)) / nd;
        double r;
        if (spec.dimension() == 1) {
            r = covariance(model, m1, cov_tol);
        } else {
            const long m2 = w.lag[1];
            if (std::labs(m2) >= n) continue;
            overlap *= 1.0 - std::abs(static_cast<double>(m2)) / nd;
            r = covariance(model, m1, m2, cov_tol);
        }
        acc += w.value * r * overlap;
    }
    return static_cast<double>(acc);
}

double empirical_cov(const FieldSample& field, std::span<const long> h) {
    if (static_cast<int>(h.size()) != field.dimension())
        throw ContractError("lag dimension mismatch");
    long needed = std::labs(h[0]);
    if (field.dimension() == 2) needed = std::max(needed, std::labs(h[1]));
    if (field.margin() < needed)
        throw ContractError("empirical covariance at lag needs margin >= " +
                            std::to_string(needed));
    const long n = field.n();
    long double acc = 0.0L;
    if (field.dimension() == 1) {
        for (long i = 1; i <= n; ++i) acc += field.at(i) * field.at(i + h[0]);
        return static_cast<double>(acc / n);
    }
    for (long i1 = 1; i1 <= n; ++i1)
        for (long i2 = 1; i2 <= n; ++i2)
            acc += field.at(i1, i2) * field.at(i1 + h[0], i2 + h[1]);
    return static_cast<double>(acc / (static_cast<long double>(n) * n));
}

double empirical_cov1(const FieldSample& field, long h) {
    const long hv[1] = {h};
    return empirical_cov(field, std::span<const long>(hv, 1));
}

double empirical_cov2(const FieldSample& field, long h1, long h2) {
    const long hv[2] = {h1, h2};
    return empirical_cov(field, std::span<const long>(hv, 2));
}

double empirical_cov_centered(const FieldSample& field,
                              std::span<const long> h) {
    if (static_cast<int>(h.size()) != field.dimension())
        throw ContractError("lag dimension mismatch");
    long needed = std::labs(h[0]);
    if (field.dimension() == 2) needed = std::max(needed, std::labs(h[1]));
    if (field.margin() < needed)
        throw ContractError("empirical covariance at lag needs margin >= " +
                            std::to_string(needed));
    const double mean = sample_mean(field);
    const long n = field.n();
    long double acc = 0.0L;
    if (field.dimension() == 1) {
        for (long i = 1; i <= n; ++i)
            acc += (field.at(i) - mean) * (field.at(i + h[0]) - mean);
        return static_cast<double>(acc / n);
    }
    for (long i1 = 1; i1 <= n; ++i1)
        for (long i2 = 1; i2 <= n; ++i2)
            acc += (field.at(i1, i2) - mean) *
                   (field.at(i1 + h[0], i2 + h[1]) - mean);
    return static_cast<double>(acc / (static_cast<long double>(n) * n));
}

double periodogram(const FieldSample& field, std::span<const double> t) {
    if (static_cast<int>(t.size()) != field.dimension())
        throw ContractError("frequency dimension mismatch");
    const long n = field.n();
    std::complex<double> acc{0.0, 0.0};
    if (field.dimension() == 1) {
        for (long k = 1; k <= n; ++k)
            acc += field.at(k) * std::polar(1.0, static_cast<double>(k) * t[0]);
        return std::norm(acc) / (kTwoPi * static_cast<double>(n));
    }
    for (long k1 = 1; k1 <= n; ++k1)
        for (long k2 = 1; k2 <= n; ++k2)
            acc += field.at(k1, k2) *
                   std::polar(1.0, static_cast<double>(k1) * t[0] +
                                       static_cast<double>(k2) * t[1]);
    const double norm2 = kTwoPi * static_cast<double>(n);
    return std::norm(acc) / (norm2 * norm2);
}

}  // namespace lrgf
