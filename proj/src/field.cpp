#include "lrgf/field.hpp"

#include <cmath>

namespace lrgf {

FieldSample::FieldSample(int dimension, long n, long margin,
                         std::vector<double> values, FieldMeta meta)
    : dimension_(dimension),
      n_(n),
      margin_(margin),
      values_(std::move(values)),
      meta_(std::move(meta)) {
    if (dimension_ < 1 || dimension_ > 2)
        throw ContractError("field dimension must be 1 or 2");
    if (n_ < 1 || margin_ < 0) throw ContractError("bad field window");
    std::size_t expect = static_cast<std::size_t>(side());
    if (dimension_ == 2) expect *= static_cast<std::size_t>(side());
    if (values_.size() != expect)
        throw ContractError("field value count does not match window");
    for (double v : values_)
        if (!std::isfinite(v))
            throw ContractError("field contains non-finite values");
}

double sample_mean(const FieldSample& field) {
    long double acc = 0.0L;
    if (field.dimension() == 1) {
        for (long i = 1; i <= field.n(); ++i) acc += field.at(i);
        return static_cast<double>(acc / field.n());
    }
    for (long i1 = 1; i1 <= field.n(); ++i1)
        for (long i2 = 1; i2 <= field.n(); ++i2) acc += field.at(i1, i2);
    return static_cast<double>(acc / (static_cast<long double>(field.n()) *
                                      field.n()));
}

}  // namespace lrgf
