#include "nlspec/nehari.hpp"

#include "nlspec/error.hpp"

#include <Eigen/Dense>
#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

namespace nlspec {

namespace {

int piece_sign(int sign, std::size_t j) { return j % 2 == 0 ? sign : -sign; }

long long round_key(double t) { return std::llround(t * 1e12); }

double sup_norm(const std::vector<double>& v) {
    double out = 0.0;
    for (double x : v) {
        out = std::max(out, std::abs(x));
    }
    return out;
}

double min_gap(double a, double b) { return 1e-6 * (b - a); }

} // namespace

double NodeVector::edge(std::size_t j) const {
    if (j == 0) {
        return a;
    }
    if (j == t.size() + 1) {
        return b;
    }
    return t.at(j - 1);
}

void NodeVector::validate() const {
    if (!(b > a)) {
        throw ConfigError("nodes: need a < b");
    }
    const double gap = 1e-8 * (b - a);
    for (std::size_t j = 0; j <= t.size(); ++j) {
        if (!(edge(j + 1) - edge(j) > gap)) {
            throw ConfigError("nodes: must be strictly increasing inside (a, b)");
        }
    }
}

PieceCache::PieceCache(PieceSolver solver) : solver_(std::move(solver)) {}

const SemiEigenResult& PieceCache::get(double t1, double t2, int sign) {
    const Key key{round_key(t1), round_key(t2), sign};
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = entries_.find(key);
        if (it != entries_.end()) {
            return *it->second;
        }
    }
    // Solving at the rounded endpoints makes the entry independent of which
    // caller inserted it first.
    auto value = std::make_shared<const SemiEigenResult>(
        solver_(static_cast<double>(std::get<0>(key)) / 1e12,
                static_cast<double>(std::get<1>(key)) / 1e12, sign));
    std::lock_guard<std::mutex> lock(mutex_);
    // A concurrent insert of the same key holds an equal value; keep the first.
    return *entries_.emplace(key, std::move(value)).first->second;
}

std::size_t PieceCache::size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return entries_.size();
}

PieceSolver interval_pieces(const OperatorSpec& spec, const SemiEigenOptions& opts) {
    return [spec, opts](double t1, double t2, int sign) {
        return semi_eigenvalue(spec, t1, t2, sign, opts);
    };
}

std::vector<double> v_map(PieceCache& cache, const NodeVector& nodes, int sign) {
    nodes.validate();
    const std::size_t n = nodes.n();
    std::vector<double> lam(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        lam[j] = cache.lambda(nodes.edge(j), nodes.edge(j + 1), piece_sign(sign, j));
    }
    std::vector<double> v(n);
    for (std::size_t i = 1; i <= n; ++i) {
        v[i - 1] = lam[i - 1] - lam[i];
    }
    return v;
}

std::vector<double> v_map(const OperatorSpec& spec, const NodeVector& nodes, int sign,
                          const SemiEigenOptions& opts) {
    PieceCache cache(interval_pieces(spec, opts));
    return v_map(cache, nodes, sign);
}

namespace {

double lambda_scale(PieceCache& cache, const NodeVector& nodes, int sign) {
    double out = 0.0;
    for (std::size_t j = 0; j <= nodes.n(); ++j) {
        out = std::max(out, std::abs(cache.lambda(nodes.edge(j), nodes.edge(j + 1),
                                                  piece_sign(sign, j))));
    }
    return out;
}

NodeVector initial_nodes(PieceCache& cache, int n, int sign, double a, double b) {
    const double lp = cache.lambda(a, b, 1);
    const double lm = cache.lambda(a, b, -1);
    const double floor = 1e-3 * std::max({std::abs(lp), std::abs(lm), 1.0});
    const double wp = 1.0 / std::sqrt(std::max(lp, 0.0) + floor);
    const double wm = 1.0 / std::sqrt(std::max(lm, 0.0) + floor);
    std::vector<double> w(n + 1);
    double total = 0.0;
    for (int j = 0; j <= n; ++j) {
        w[j] = piece_sign(sign, j) > 0 ? wp : wm;
        total += w[j];
    }
    NodeVector nodes{a, b, {}};
    double t = a;
    for (int j = 0; j < n; ++j) {
        t += (b - a) * w[j] / total;
        nodes.t.push_back(t);
    }
    return nodes;
}

// Largest step fraction keeping every gap above both gmin and a tenth of its
// current size.
double fraction_to_boundary(const NodeVector& nodes, const Eigen::VectorXd& dx, double gmin) {
    const std::size_t n = nodes.n();
    double alpha = 1.0;
    for (std::size_t j = 0; j <= n; ++j) {
        const double lo = j == 0 ? 0.0 : dx(j - 1);
        const double hi = j == n ? 0.0 : dx(j);
        const double change = hi - lo;
        if (change < 0.0) {
            const double gap = nodes.edge(j + 1) - nodes.edge(j);
            const double room = std::max(gap - std::max(gmin, 0.1 * gap), 0.0);
            alpha = std::min(alpha, room / -change);
        }
    }
    return alpha;
}

bool newton(PieceCache& cache, NodeVector& nodes, int sign, const NehariOptions& opts,
            NodeSolveReport& rep) {
    const std::size_t n = nodes.n();
    const double a = nodes.a;
    const double b = nodes.b;
    const double h = 1e-6 * (b - a);
    const double gmin = min_gap(a, b);
    std::vector<double> v = v_map(cache, nodes, sign);
    for (int it = 0; it < opts.max_newton; ++it) {
        const double norm = sup_norm(v);
        if (norm <= opts.tol * (1.0 + lambda_scale(cache, nodes, sign))) {
            return true;
        }
        ++rep.newton_iterations;
        Eigen::MatrixXd jac(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            NodeVector shifted = nodes;
            double step = h;
            if (nodes.edge(i + 2) - nodes.t[i] < 2.0 * h) {
                step = -h;
            }
            shifted.t[i] += step;
            const std::vector<double> vs = v_map(cache, shifted, sign);
            for (std::size_t r = 0; r < n; ++r) {
                jac(r, i) = (vs[r] - v[r]) / step;
            }
        }
        Eigen::VectorXd rhs(n);
        for (std::size_t r = 0; r < n; ++r) {
            rhs(r) = -v[r];
        }
        const Eigen::VectorXd dx = jac.partialPivLu().solve(rhs);
        if (!dx.allFinite()) {
            return false;
        }
        double alpha = fraction_to_boundary(nodes, dx, gmin);
        bool improved = false;
        for (int halving = 0; halving <= 20; ++halving) {
            NodeVector trial = nodes;
            for (std::size_t i = 0; i < n; ++i) {
                trial.t[i] += alpha * dx(i);
            }
            const std::vector<double> vt = v_map(cache, trial, sign);
            if (sup_norm(vt) < norm) {
                nodes = std::move(trial);
                v = vt;
                improved = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!improved) {
            return false;
        }
    }
    return sup_norm(v) <= opts.tol * (1.0 + lambda_scale(cache, nodes, sign));
}

bool cyclic_sweeps(PieceCache& cache, NodeVector& nodes, int sign, const NehariOptions& opts,
                   NodeSolveReport& rep) {
    const std::size_t n = nodes.n();
    const double gmin = min_gap(nodes.a, nodes.b);
    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
        ++rep.sweeps;
        for (std::size_t i = 1; i <= n; ++i) {
            const double left = nodes.edge(i - 1);
            const double right = nodes.edge(i + 1);
            const int sl = piece_sign(sign, i - 1);
            const int sr = piece_sign(sign, i);
            auto vi = [&](double x) { return cache.lambda(left, x, sl) - cache.lambda(x, right, sr); };
            const double lo = left + gmin;
            const double hi = right - gmin;
            const double vlo = vi(lo);
            const double vhi = vi(hi);
            if (vlo == 0.0 || vhi == 0.0 || (vlo > 0.0) == (vhi > 0.0)) {
                nodes.t[i - 1] = std::abs(vlo) < std::abs(vhi) ? lo : hi;
                continue;
            }
            std::uintmax_t max_iter = 200;
            auto tol = [&](double x, double y) { return std::abs(x - y) <= 1e-15 * (nodes.b - nodes.a); };
            auto [x0, x1] = boost::math::tools::toms748_solve(vi, lo, hi, vlo, vhi, tol, max_iter);
            nodes.t[i - 1] = 0.5 * (x0 + x1);
        }
        const double norm = sup_norm(v_map(cache, nodes, sign));
        if (norm <= opts.tol * (1.0 + lambda_scale(cache, nodes, sign))) {
            return true;
        }
    }
    return false;
}

} // namespace

NodeSolveReport solve_nodes(PieceCache& cache, int n, int sign, double a, double b,
                            const NehariOptions& opts) {
    if (n < 1) {
        throw ConfigError("n: need at least one interior node");
    }
    if (sign != 1 && sign != -1) {
        throw ConfigError("sign: must be +1 or -1");
    }
    NodeSolveReport rep;
    NodeVector nodes = initial_nodes(cache, n, sign, a, b);
    bool ok = newton(cache, nodes, sign, opts, rep);
    if (!ok) {
        rep.used_fallback = true;
        ok = cyclic_sweeps(cache, nodes, sign, opts, rep);
    }
    rep.nodes = nodes;
    rep.residual = sup_norm(v_map(cache, nodes, sign));
    const double loose = 1e-7 * (1.0 + lambda_scale(cache, nodes, sign));
    if (!ok && !(rep.residual <= loose)) {
        std::ostringstream msg;
        msg << "solve_nodes: no zero of the node map for n = " << n << ", sign = " << sign
            << " (best |V| = " << rep.residual << " at t =";
        for (double t : nodes.t) {
            msg << ' ' << t;
        }
        msg << ')';
        throw SolverError(msg.str());
    }
    return rep;
}

NodeSolveReport solve_nodes(const OperatorSpec& spec, int n, int sign, double a, double b,
                            const NehariOptions& opts) {
    PieceCache cache(interval_pieces(spec, opts.eigen));
    return solve_nodes(cache, n, sign, a, b, opts);
}

int count_sign_changes(const Trajectory& traj, double tol) {
    const double cut = tol * traj.sup_abs();
    int count = 0;
    int last = 0;
    auto visit = [&](double u) {
        const int s = u > cut ? 1 : (u < -cut ? -1 : 0);
        if (s != 0) {
            if (last != 0 && s != last) {
                ++count;
            }
            last = s;
        }
    };
    const auto& t = traj.nodes();
    const auto& u = traj.u_nodes();
    for (std::size_t k = 0; k < t.size(); ++k) {
        visit(u[k]);
        if (k + 1 < t.size()) {
            for (int j = 1; j < 4; ++j) {
                visit(traj.value(t[k] + (t[k + 1] - t[k]) * j / 4.0));
            }
        }
    }
    return count;
}

EigenPair assemble(PieceCache& cache, const NodeVector& nodes, int sign,
                   const OperatorSpec& residual_spec) {
    nodes.validate();
    const std::size_t n = nodes.n();
    EigenPair pair;
    pair.n = static_cast<int>(n);
    pair.sign = sign;
    pair.nodes = nodes;
    for (std::size_t j = 0; j <= n; ++j) {
        pair.pieces.push_back(cache.get(nodes.edge(j), nodes.edge(j + 1), piece_sign(sign, j)));
    }
    pair.lambda = pair.pieces.front().lambda;
    for (const auto& piece : pair.pieces) {
        pair.lambda_spread = std::max(pair.lambda_spread, std::abs(piece.lambda - pair.lambda) /
                                                              std::max(std::abs(pair.lambda), 1e-300));
    }

    std::vector<double> scale(n + 1, 1.0);
    std::vector<double> jumps;
    for (std::size_t i = 1; i <= n; ++i) {
        const double left = pair.pieces[i - 1].eigenfunction.p_nodes().back();
        const double right = pair.pieces[i].eigenfunction.p_nodes().front();
        if (std::abs(left) < 1e-10 || std::abs(right) < 1e-10) {
            throw SolverError("assemble: vanishing slope at a node (unconverged nodes?)");
        }
        pair.alphas.push_back(left / right);
        scale[i] = scale[i - 1] * left / right;
        jumps.push_back(std::abs(scale[i - 1] * left - scale[i] * right));
    }

    Trajectory glued;
    for (std::size_t j = 0; j <= n; ++j) {
        glued = glued.joined(pair.pieces[j].eigenfunction.scaled(scale[j]));
    }
    const double sup = glued.sup_abs();
    pair.global = glued.scaled(1.0 / sup);
    const double slope_sup = glued.sup_abs_slope();
    for (double jump : jumps) {
        pair.max_jump = std::max(pair.max_jump, jump / slope_sup);
    }
    pair.residual =
        eigen_residual(residual_spec, pair.lambda, pair.global, nodes.a, nodes.b);
    pair.zero_count = count_sign_changes(pair.global);
    return pair;
}

EigenPair assemble(const OperatorSpec& spec, const NodeVector& nodes, int sign,
                   const SemiEigenOptions& opts) {
    PieceCache cache(interval_pieces(spec, opts));
    return assemble(cache, nodes, sign, spec);
}

const EigenPair& Spectrum::find(int n, int sign) const {
    for (const auto& pair : pairs) {
        if (pair.n == n && pair.sign == sign) {
            return pair;
        }
    }
    throw ConfigError("spectrum: no pair with the requested n and sign");
}

Spectrum spectrum(PieceCache& cache, const OperatorSpec& residual_spec, int n_max, double a,
                  double b, const NehariOptions& opts) {
    if (n_max < 0) {
        throw ConfigError("n_max: must be >= 0");
    }
    std::vector<std::pair<int, int>> tasks;
    for (int n = 0; n <= n_max; ++n) {
        tasks.emplace_back(n, 1);
        tasks.emplace_back(n, -1);
    }
    std::vector<EigenPair> pairs(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < tasks.size(); k = next++) {
            try {
                const auto [n, sign] = tasks[k];
                NodeVector nodes{a, b, {}};
                if (n > 0) {
                    nodes = solve_nodes(cache, n, sign, a, b, opts).nodes;
                }
                pairs[k] = assemble(cache, nodes, sign, residual_spec);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    const int threads = std::max(1, std::min<int>(opts.threads, static_cast<int>(tasks.size())));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int k = 0; k < threads; ++k) {
            pool.emplace_back(worker);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    for (const auto& err : errors) {
        if (err) {
            std::rethrow_exception(err);
        }
    }

    Spectrum out;
    out.pairs = std::move(pairs);
    for (std::size_t k = 2; k < out.pairs.size(); ++k) {
        out.increasing = out.increasing && out.pairs[k].lambda > out.pairs[k - 2].lambda;
    }
    return out;
}

Spectrum spectrum(const OperatorSpec& spec, int n_max, double a, double b,
                  const NehariOptions& opts) {
    spec.validate();
    PieceCache cache(interval_pieces(spec, opts.eigen));
    return spectrum(cache, spec, n_max, a, b, opts);
}

} // namespace nlspec
