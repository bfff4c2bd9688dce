#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lrgf/error.hpp"

namespace lrgf {

struct FieldMeta {
    std::string model;   // serialized model (JSON string)
    long n = 0;
    long margin = 0;
    int kappa = 0;       // oversampling factor (spectral method only)
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::string method;  // "spectral" | "exact"
};

// A realization on the window {1-m, ..., n+m}^d. Values are stored row-major
// over the padded window; the observation window A_n = {1, ..., n}^d sits
// inside the margins.
class FieldSample {
public:
    FieldSample(int dimension, long n, long margin, std::vector<double> values,
                FieldMeta meta);

    int dimension() const { return dimension_; }
    long n() const { return n_; }
    long margin() const { return margin_; }
    long side() const { return n_ + 2 * margin_; }
    const FieldMeta& meta() const { return meta_; }
    const std::vector<double>& values() const { return values_; }

    // Lattice accessors; indices run over {1-m, ..., n+m}.
    double at(long i) const {
        return values_[index1(i)];
    }
    double at(long i1, long i2) const {
        return values_[index2(i1, i2)];
    }

    std::size_t index1(long i) const {
        check_dim(1);
        return offset(i);
    }
    std::size_t index2(long i1, long i2) const {
        check_dim(2);
        return offset(i1) * static_cast<std::size_t>(side()) + offset(i2);
    }

private:
    void check_dim(int d) const {
        if (dimension_ != d)
            throw ContractError("field accessor dimension mismatch");
    }
    std::size_t offset(long i) const {
        const long o = i - (1 - margin_);
        if (o < 0 || o >= side())
            throw ContractError("lattice index outside field window");
        return static_cast<std::size_t>(o);
    }

    int dimension_;
    long n_;
    long margin_;
    std::vector<double> values_;
    FieldMeta meta_;
};

// Arithmetic mean over the observation window A_n only (margins excluded).
double sample_mean(const FieldSample& field);

}  // namespace lrgf
