#pragma once

#include <cstddef>
#include <vector>

namespace nlspec {

struct StepStats {
    long accepted = 0;
    long rejected = 0;
    /// Steps shortened to end on a change of the active branch.
    long switches = 0;
};

/// Dense solution of a second-order ODE on [start(), end()].
///
/// Stores u, u' and u'' at strictly increasing nodes and interpolates u by
/// the quintic Hermite polynomial matching all three on every segment, so the
/// interpolant is C^2 and its first and second derivatives are the dense
/// u' and u''. Evaluation outside the span clamps to the nearest end.
class Trajectory {
public:
    Trajectory() = default;
    Trajectory(std::vector<double> t, std::vector<double> u, std::vector<double> p,
               std::vector<double> m);

    bool empty() const noexcept { return t_.empty(); }
    std::size_t size() const noexcept { return t_.size(); }
    double start() const { return t_.front(); }
    double end() const { return t_.back(); }

    const std::vector<double>& nodes() const noexcept { return t_; }
    const std::vector<double>& u_nodes() const noexcept { return u_; }
    const std::vector<double>& p_nodes() const noexcept { return p_; }
    const std::vector<double>& m_nodes() const noexcept { return m_; }

    double value(double t) const;
    double slope(double t) const;
    double second(double t) const;

    /// sup |u| including interior extrema located between nodes.
    double sup_abs() const;
    /// sup u+ and sup u-.
    double sup_positive() const;
    double sup_negative() const;
    double sup_abs_slope() const;

    /// s * u; valid for the homogeneous equations solved here when s > 0,
    /// and for s < 0 after flipping the operator.
    Trajectory scaled(double s) const;

    /// Concatenates this trajectory with one starting where this one ends.
    /// The shared node takes the values of `next`.
    Trajectory joined(const Trajectory& next) const;

    StepStats stats;

private:
    struct Segment {
        std::size_t k;
        double s;
        double h;
    };
    Segment locate(double t) const;
    void coefficients(std::size_t k, double c[6]) const;
    double extremum(double want_sign) const;

    std::vector<double> t_;
    std::vector<double> u_;
    std::vector<double> p_;
    std::vector<double> m_;
};

} // namespace nlspec
