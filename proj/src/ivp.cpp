#include "nlspec/ivp.hpp"

#include "nlspec/error.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace nlspec {

namespace odeint = boost::numeric::odeint;

void IvpConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !(max_step > 0.0) || !(event_tol > 0.0) ||
        max_steps < 1) {
        throw ConfigError("ivp config: tolerances and step limits must be positive");
    }
}

double second_derivative(const OperatorSpec& spec, const Source& q, double kappa, double t,
                         double u, double p) {
    const double ell = spec.dim > 1 ? p / t : 0.0;
    return invert_m(spec, ell, p, u, q(t) + kappa * u, t);
}

Trajectory integrate(const OperatorSpec& spec, const Source& q, double kappa, double t0, double t1,
                     double u0, double p0, const IvpConfig& cfg, bool stop_at_first_zero) {
    cfg.validate();
    spec.validate();
    if (!(t1 != t0) || !std::isfinite(t0) || !std::isfinite(t1)) {
        throw ConfigError("integrate: need a nondegenerate finite interval");
    }
    if (spec.dim > 1 && std::min(t0, t1) <= 0.0) {
        throw DomainError("integrate: radial equations need t > 0; start at the origin "
                          "through radial_integrate_from_origin");
    }
    using State = std::array<double, 2>;
    const double direction = t1 > t0 ? 1.0 : -1.0;
    const double span = std::abs(t1 - t0);
    const double max_dt = cfg.max_step * span;

    auto rhs = [&](const State& y, State& dy, double t) {
        dy[0] = y[1];
        dy[1] = second_derivative(spec, q, kappa, t, y[0], y[1]);
    };
    auto stepper = odeint::make_controlled(cfg.abs_tol, cfg.rel_tol,
                                           odeint::runge_kutta_dopri5<State>());
    odeint::runge_kutta_dopri5<State> plain;
    auto branch = [&](double t, const State& y, double m) {
        const double ell = spec.dim > 1 ? y[1] / t : 0.0;
        return active_branch(spec, {m, ell, y[1], y[0], t});
    };

    State y{u0, p0};
    State dy{};
    double t = t0;
    rhs(y, dy, t);

    std::vector<double> ts{t0}, us{u0}, ps{p0}, ms{dy[1]};

    // Initial step from the local scale of the solution (Hairer-Wanner style).
    double d0 = std::max(std::abs(y[0]), std::abs(y[1]));
    double d1 = std::max(std::abs(dy[0]), std::abs(dy[1]));
    double dt = (d0 > 1e-5 && d1 > 1e-5) ? 0.01 * d0 / d1 : 1e-6 * std::max(span, 1.0);
    if (spec.dim > 1) {
        dt = std::min(dt, 0.1 * std::abs(t0));
    }
    dt = direction * std::min({dt, max_dt, span});

    StepStats stats;
    const double t_floor = 64.0 * std::numeric_limits<double>::epsilon();
    long steps = 0;
    bool done = false;
    while (!done) {
        const double remaining = t1 - t;
        if (std::abs(remaining) <= t_floor * std::max(1.0, std::abs(t1))) {
            break;
        }
        dt = direction * std::min({std::abs(dt), max_dt, std::abs(remaining)});
        const bool last = std::abs(dt) >= std::abs(remaining);
        const double t_before = t;
        const State y_before = y;
        const State dy_before = dy;
        const auto result = stepper.try_step(rhs, y, dy, t, dt);
        if (result == odeint::fail) {
            ++stats.rejected;
            if (std::abs(dt) < t_floor * std::max(1.0, std::abs(t))) {
                std::ostringstream msg;
                msg << "integrate: step size underflow at t = " << t;
                throw IntegrationError(msg.str(), t);
            }
            continue;
        }
        if (!std::isfinite(y[0]) || !std::isfinite(y[1])) {
            throw IntegrationError("integrate: solution became non-finite", t_before);
        }
        ++stats.accepted;
        if (last) {
            t = t1;
        }
        // The dense interpolant is smooth, u'' is not where the active branch
        // changes: put a node right after the switch instead.
        const int b0 = branch(t_before, y_before, dy_before[1]);
        if (branch(t, y, dy[1]) != b0) {
            const double h = t - t_before;
            double lo = 0.0;
            double hi = h;
            State ys;
            State dys;
            auto probe = [&](double s) {
                ys = y_before;
                dys = dy_before;
                plain.do_step(rhs, ys, dys, t_before, s);
                return branch(t_before + s, ys, dys[1]);
            };
            while (std::abs(hi - lo) > 1e-13 * span) {
                const double mid = 0.5 * (lo + hi);
                (probe(mid) == b0 ? lo : hi) = mid;
            }
            if (std::abs(hi) > 1e-9 * span && std::abs(h - hi) > 1e-9 * span) {
                probe(hi);
                y = ys;
                dy = dys;
                t = t_before + hi;
                ++stats.switches;
            }
        }
        ts.push_back(t);
        us.push_back(y[0]);
        ps.push_back(y[1]);
        ms.push_back(dy[1]);
        if (stop_at_first_zero && us.size() >= 3) {
            const double ua = us[us.size() - 2];
            const double ub = us.back();
            if (ua * ub < 0.0) {
                done = true;
            }
        } else if (stop_at_first_zero && us.size() == 2 && u0 != 0.0 && u0 * y[0] < 0.0) {
            done = true;
        }
        if (++steps > cfg.max_steps) {
            throw IntegrationError("integrate: step budget exhausted", t);
        }
    }

    if (direction < 0.0) {
        std::reverse(ts.begin(), ts.end());
        std::reverse(us.begin(), us.end());
        std::reverse(ps.begin(), ps.end());
        std::reverse(ms.begin(), ms.end());
    }
    Trajectory traj(std::move(ts), std::move(us), std::move(ps), std::move(ms));
    traj.stats = stats;
    return traj;
}

std::optional<double> first_zero(const Trajectory& traj, double from, double tol) {
    if (traj.size() < 2) {
        return std::nullopt;
    }
    const auto& t = traj.nodes();
    const auto& u = traj.u_nodes();
    double prev_t = std::max(from, traj.start());
    double prev_u = traj.value(prev_t);
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k] <= prev_t) {
            continue;
        }
        if (prev_u == 0.0) {
            prev_t = t[k];
            prev_u = u[k];
            continue;
        }
        if (prev_u * u[k] < 0.0) {
            double lo = prev_t;
            double hi = t[k];
            double ulo = prev_u;
            double uhi = u[k];
            while (hi - lo > tol) {
                const double mid = 0.5 * (lo + hi);
                const double um = traj.value(mid);
                if (um == 0.0) {
                    return mid;
                }
                if (um * ulo < 0.0) {
                    hi = mid;
                    uhi = um;
                } else {
                    lo = mid;
                    ulo = um;
                }
            }
            const double secant = lo - ulo * (hi - lo) / (uhi - ulo);
            return std::clamp(secant, lo, hi);
        }
        if (u[k] == 0.0 && k + 1 < t.size()) {
            return t[k];
        }
        prev_t = t[k];
        prev_u = u[k];
    }
    return std::nullopt;
}

double equation_residual(const OperatorSpec& spec, const Source& q, double kappa,
                         const Trajectory& traj, double t) {
    const double u = traj.value(t);
    const double p = traj.slope(t);
    const double m = traj.second(t);
    const double ell = spec.dim > 1 ? (t > 0.0 ? p / t : m) : 0.0;
    return std::abs(evaluate(spec, {m, ell, p, u, t}) - kappa * u - q(t));
}

Source zero_source() {
    return [](double) { return 0.0; };
}

Source constant_source(double value) {
    return [value](double) { return value; };
}

} // namespace nlspec
