#pragma once

#include <functional>
#include <vector>

namespace nlspec {

/// Right-hand sides and other scalar fields of the abscissa.
using Source = std::function<double(double)>;

/// Uniform samples of a continuous function on [lo, hi], linearly
/// interpolated and extended by constants outside the sample range.
/// A single sample is a constant function.
class SampledFunction {
public:
    SampledFunction() : values_{0.0} {}
    SampledFunction(double constant) : values_{constant} {}  // NOLINT(implicit)
    SampledFunction(double lo, double hi, std::vector<double> values);

    double operator()(double t) const;

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    const std::vector<double>& values() const noexcept { return values_; }
    bool is_constant() const noexcept { return values_.size() == 1; }

    double min_value() const;
    double max_value() const;
    double max_abs() const;

    /// Pointwise negation.
    SampledFunction negated() const;

    Source as_source() const;

private:
    double lo_ = 0.0;
    double hi_ = 1.0;
    std::vector<double> values_;
};

} // namespace nlspec
