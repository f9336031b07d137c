#include "nlspec/diagnostics.hpp"

#include "nlspec/bvp.hpp"
#include "nlspec/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nlspec {

double abp_constant(double lambda_min, double gamma, double length_or_radius, int dim) {
    if (!(lambda_min > 0.0) || !(length_or_radius > 0.0) || dim < 1 || !(gamma >= 0.0)) {
        throw ConfigError("abp_constant: need lambda > 0, R > 0, N >= 1, gamma >= 0");
    }
    const double n = static_cast<double>(dim);
    const double two_n = std::pow(2.0, n);
    const double exponent = two_n * n + two_n * std::pow(gamma * length_or_radius / lambda_min, n);
    if (!(exponent < 700.0)) {
        return std::numeric_limits<double>::infinity();
    }
    return length_or_radius / lambda_min * std::pow(std::expm1(exponent), 1.0 / n);
}

std::string_view to_string(NormKind kind) {
    return kind == NormKind::l1_interval ? "L1(a,b)" : "LN(B_R)";
}

namespace {

double trapezoid(const Source& g, bool positive_part, const Geometry& geom,
                 const std::vector<double>& pts) {
    const double n = geom.kind == NormKind::ln_ball ? static_cast<double>(geom.dim) : 1.0;
    auto integrand = [&](double t) {
        const double v = g(t);
        const double part = positive_part ? std::max(v, 0.0) : std::max(-v, 0.0);
        if (geom.kind == NormKind::l1_interval) {
            return part;
        }
        return std::pow(part, n) * std::pow(t, n - 1.0);
    };
    double sum = 0.0;
    double prev = integrand(pts.front());
    for (std::size_t k = 1; k < pts.size(); ++k) {
        const double cur = integrand(pts[k]);
        sum += 0.5 * (prev + cur) * (pts[k] - pts[k - 1]);
        prev = cur;
    }
    return geom.kind == NormKind::l1_interval ? sum : std::pow(sum, 1.0 / n);
}

std::vector<double> clipped_nodes(const Geometry& geom, const std::vector<double>& nodes) {
    std::vector<double> pts;
    pts.push_back(geom.a);
    for (double t : nodes) {
        if (t > geom.a && t < geom.b) {
            pts.push_back(t);
        }
    }
    pts.push_back(geom.b);
    return pts;
}

} // namespace

double one_sided_norm(const Source& g, bool positive_part, const Geometry& geom,
                      const std::vector<double>& nodes) {
    std::vector<double> coarse = clipped_nodes(geom, nodes);
    if (coarse.size() < 17) {
        coarse.clear();
        for (int k = 0; k <= 16; ++k) {
            coarse.push_back(geom.a + geom.extent() * k / 16.0);
        }
    }
    std::vector<double> fine;
    fine.reserve(2 * coarse.size());
    for (std::size_t k = 0; k + 1 < coarse.size(); ++k) {
        fine.push_back(coarse[k]);
        fine.push_back(0.5 * (coarse[k] + coarse[k + 1]));
    }
    fine.push_back(coarse.back());
    const double i_coarse = trapezoid(g, positive_part, geom, coarse);
    const double i_fine = trapezoid(g, positive_part, geom, fine);
    if (std::abs(i_coarse - i_fine) <= 0.01 * std::max(i_fine, 1e-300)) {
        return i_fine;
    }
    const std::size_t dense = 16 * fine.size();
    std::vector<double> uniform(dense + 1);
    for (std::size_t k = 0; k <= dense; ++k) {
        uniform[k] = geom.a + geom.extent() * static_cast<double>(k) / static_cast<double>(dense);
    }
    return trapezoid(g, positive_part, geom, uniform);
}

AbpReport abp_check(const Trajectory& traj, const Source& f, const OperatorSpec& spec,
                    const Geometry& geom) {
    AbpReport rep;
    rep.norm_kind = geom.kind;
    rep.sup_u_plus = traj.sup_positive();
    rep.sup_u_minus = traj.sup_negative();
    const int n = geom.kind == NormKind::ln_ball ? geom.dim : 1;
    rep.B = abp_constant(spec.lambda_min, spec.gamma, geom.extent(), n);
    rep.f_minus_norm = one_sided_norm(f, false, geom, traj.nodes());
    rep.f_plus_norm = one_sided_norm(f, true, geom, traj.nodes());
    rep.vacuous = std::isinf(rep.B);
    rep.bound_plus = rep.f_minus_norm == 0.0 ? 0.0 : rep.B * rep.f_minus_norm;
    rep.bound_minus = rep.f_plus_norm == 0.0 ? 0.0 : rep.B * rep.f_plus_norm;
    // A Dirichlet shot is accepted at |u(b)| <= 1e-7 (1 + sup |u|), so a one-signed
    // solution may carry that much of the other sign.
    const double floor = 1e-7 * (1.0 + std::max(rep.sup_u_plus, rep.sup_u_minus));
    rep.pass = rep.sup_u_plus <= rep.bound_plus * (1.0 + 1e-9) + floor &&
               rep.sup_u_minus <= rep.bound_minus * (1.0 + 1e-9) + floor;
    return rep;
}

double blowup_margin(const OperatorSpec& spec, double lambda, double length) {
    const double b = abp_constant(spec.lambda_min, spec.gamma, length, 1);
    return (lambda + choose_kappa(spec)) * b * length;
}

} // namespace nlspec
