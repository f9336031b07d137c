#include "nlspec/sampled.hpp"

#include "nlspec/error.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace nlspec {

SampledFunction::SampledFunction(double lo, double hi, std::vector<double> values)
    : lo_(lo), hi_(hi), values_(std::move(values)) {
    if (values_.empty()) {
        throw ConfigError("sampled function needs at least one sample");
    }
    if (values_.size() > 1 && !(hi_ > lo_)) {
        throw ConfigError("sampled function range must satisfy lo < hi");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw ConfigError("sampled function has a non-finite sample");
        }
    }
}

double SampledFunction::operator()(double t) const {
    const std::size_t n = values_.size();
    if (n == 1 || t <= lo_) {
        return values_.front();
    }
    if (t >= hi_) {
        return values_.back();
    }
    const double s = (t - lo_) / (hi_ - lo_) * static_cast<double>(n - 1);
    const auto k = std::min(static_cast<std::size_t>(s), n - 2);
    const double w = s - static_cast<double>(k);
    return (1.0 - w) * values_[k] + w * values_[k + 1];
}

double SampledFunction::min_value() const {
    return *std::min_element(values_.begin(), values_.end());
}

double SampledFunction::max_value() const {
    return *std::max_element(values_.begin(), values_.end());
}

double SampledFunction::max_abs() const {
    return std::max(std::abs(min_value()), std::abs(max_value()));
}

SampledFunction SampledFunction::negated() const {
    SampledFunction out = *this;
    for (double& v : out.values_) {
        v = -v;
    }
    return out;
}

Source SampledFunction::as_source() const {
    return [f = *this](double t) { return f(t); };
}

} // namespace nlspec
