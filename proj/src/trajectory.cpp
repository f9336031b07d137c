#include "nlspec/trajectory.hpp"

#include "nlspec/error.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace nlspec {

Trajectory::Trajectory(std::vector<double> t, std::vector<double> u, std::vector<double> p,
                       std::vector<double> m)
    : t_(std::move(t)), u_(std::move(u)), p_(std::move(p)), m_(std::move(m)) {
    if (t_.empty() || u_.size() != t_.size() || p_.size() != t_.size() || m_.size() != t_.size()) {
        throw ConfigError("trajectory arrays must be non-empty and of equal length");
    }
    for (std::size_t k = 1; k < t_.size(); ++k) {
        if (!(t_[k] > t_[k - 1])) {
            throw ConfigError("trajectory nodes must be strictly increasing");
        }
    }
}

Trajectory::Segment Trajectory::locate(double t) const {
    if (t_.size() == 1) {
        return {0, 0.0, 0.0};
    }
    t = std::clamp(t, t_.front(), t_.back());
    auto it = std::upper_bound(t_.begin(), t_.end(), t);
    std::size_t k = it == t_.begin() ? 0 : static_cast<std::size_t>(it - t_.begin()) - 1;
    k = std::min(k, t_.size() - 2);
    const double h = t_[k + 1] - t_[k];
    return {k, (t - t_[k]) / h, h};
}

// Monomial coefficients in s = (t - t_k) / h of the quintic Hermite interpolant.
void Trajectory::coefficients(std::size_t k, double c[6]) const {
    const double h = t_[k + 1] - t_[k];
    c[0] = u_[k];
    c[1] = h * p_[k];
    c[2] = 0.5 * h * h * m_[k];
    const double a = u_[k + 1] - (c[0] + c[1] + c[2]);
    const double b = h * p_[k + 1] - (c[1] + 2.0 * c[2]);
    const double g = h * h * m_[k + 1] - 2.0 * c[2];
    c[3] = 10.0 * a - 4.0 * b + 0.5 * g;
    c[4] = -15.0 * a + 7.0 * b - g;
    c[5] = 6.0 * a - 3.0 * b + 0.5 * g;
}

double Trajectory::value(double t) const {
    const Segment sg = locate(t);
    if (sg.h == 0.0) {
        return u_.front();
    }
    double c[6];
    coefficients(sg.k, c);
    const double s = sg.s;
    return c[0] + s * (c[1] + s * (c[2] + s * (c[3] + s * (c[4] + s * c[5]))));
}

double Trajectory::slope(double t) const {
    const Segment sg = locate(t);
    if (sg.h == 0.0) {
        return p_.front();
    }
    double c[6];
    coefficients(sg.k, c);
    const double s = sg.s;
    const double ds = c[1] + s * (2.0 * c[2] + s * (3.0 * c[3] + s * (4.0 * c[4] + s * 5.0 * c[5])));
    return ds / sg.h;
}

double Trajectory::second(double t) const {
    const Segment sg = locate(t);
    if (sg.h == 0.0) {
        return m_.front();
    }
    double c[6];
    coefficients(sg.k, c);
    const double s = sg.s;
    const double dss = 2.0 * c[2] + s * (6.0 * c[3] + s * (12.0 * c[4] + s * 20.0 * c[5]));
    return dss / (sg.h * sg.h);
}

// Largest value of want_sign * u, refining extrema where u' changes sign
// inside a segment.
double Trajectory::extremum(double want_sign) const {
    double best = 0.0;
    for (std::size_t k = 0; k < t_.size(); ++k) {
        best = std::max(best, want_sign * u_[k]);
    }
    for (std::size_t k = 0; k + 1 < t_.size(); ++k) {
        const double pa = p_[k];
        const double pb = p_[k + 1];
        if (!(pa * pb < 0.0)) {
            continue;
        }
        double lo = t_[k];
        double hi = t_[k + 1];
        const double sign_lo = pa > 0.0 ? 1.0 : -1.0;
        for (int it = 0; it < 60 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
            const double mid = 0.5 * (lo + hi);
            (slope(mid) * sign_lo > 0.0 ? lo : hi) = mid;
        }
        best = std::max(best, want_sign * value(0.5 * (lo + hi)));
    }
    return best;
}

double Trajectory::sup_positive() const { return extremum(1.0); }
double Trajectory::sup_negative() const { return extremum(-1.0); }
double Trajectory::sup_abs() const { return std::max(sup_positive(), sup_negative()); }

double Trajectory::sup_abs_slope() const {
    double best = 0.0;
    for (double p : p_) {
        best = std::max(best, std::abs(p));
    }
    return best;
}

Trajectory Trajectory::scaled(double s) const {
    Trajectory out = *this;
    for (auto* v : {&out.u_, &out.p_, &out.m_}) {
        for (double& x : *v) {
            x *= s;
        }
    }
    return out;
}

Trajectory Trajectory::joined(const Trajectory& next) const {
    if (empty()) {
        return next;
    }
    if (next.empty()) {
        return *this;
    }
    const double scale = std::max({1.0, std::abs(end()), std::abs(next.start())});
    if (std::abs(end() - next.start()) > 1e-12 * scale) {
        throw ConfigError("joined trajectories must share an endpoint");
    }
    Trajectory out = *this;
    for (auto* v : {&out.t_, &out.u_, &out.p_, &out.m_}) {
        v->pop_back();
    }
    out.t_.insert(out.t_.end(), next.t_.begin(), next.t_.end());
    out.u_.insert(out.u_.end(), next.u_.begin(), next.u_.end());
    out.p_.insert(out.p_.end(), next.p_.begin(), next.p_.end());
    out.m_.insert(out.m_.end(), next.m_.begin(), next.m_.end());
    out.stats.accepted += next.stats.accepted;
    out.stats.rejected += next.stats.rejected;
    return out;
}

} // namespace nlspec
