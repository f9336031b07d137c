#include "nlspec/run.hpp"

#include "nlspec/bvp.hpp"
#include "nlspec/error.hpp"
#include "nlspec/radial.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

namespace nlspec {

using nlohmann::json;

namespace {

constexpr double kPi = boost::math::constants::pi<double>();

std::string fmt12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

json envelope(const char* command, const OperatorSpec& spec) {
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["convention"] = kConvention;
    doc["command"] = command;
    doc["operator"] = operator_json(spec);
    return doc;
}

void require_structure(const OperatorSpec& spec, const RunOptions& opts) {
    const StructureReport rep = check_structure(spec, opts.samples, opts.seed);
    if (rep.usable()) {
        return;
    }
    std::string failed;
    for (const auto& c : rep.checks) {
        if (!c.pass && !(c.name == "F3" && rep.concave)) {
            failed += failed.empty() ? c.name : ", " + c.name;
        }
    }
    throw StructureError("operator violates " + failed);
}

void require_interval(const OperatorSpec& spec, double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
        throw ConfigError("interval: need finite a < b");
    }
    if (spec.dim > 1 && !(a > 0.0)) {
        throw ConfigError("interval: for dim > 1 the interval is an annulus and needs a > 0 "
                          "(use the ball commands for the origin)");
    }
}

void require_radius(double R) {
    if (!std::isfinite(R) || !(R > 0.0)) {
        throw ConfigError("R: need a positive finite radius");
    }
}

std::string sign_char(int sign) { return sign > 0 ? "+" : "-"; }

std::string eig_name(int sign, int n) {
    return "eig_" + sign_char(sign) + std::to_string(n) + ".csv";
}

json nodes_json(const std::vector<double>& t) {
    json out = json::array();
    for (double x : t) {
        out.push_back(round12(x));
    }
    return out;
}

json semi_json(const SemiEigenResult& res, const AbpReport& abp) {
    return {{"lambda", round12(res.lambda)},
            {"sign", res.sign},
            {"interval", {round12(res.t1), round12(res.t2)}},
            {"method", std::string(to_string(res.method))},
            {"residual", round12(res.residual)},
            {"iterations", res.iterations},
            {"abp", abp_json(abp)}};
}

json pair_json(const EigenPair& pair, const AbpReport& abp) {
    json alphas = json::array();
    for (double a : pair.alphas) {
        alphas.push_back(round12(a));
    }
    return {{"n", pair.n},
            {"sign", pair.sign},
            {"lambda", round12(pair.lambda)},
            {"nodes", nodes_json(pair.nodes.t)},
            {"alphas", alphas},
            {"zero_count", pair.zero_count},
            {"max_jump", round12(pair.max_jump)},
            {"lambda_spread", round12(pair.lambda_spread)},
            {"residual", round12(pair.residual)},
            {"abp", abp_json(abp)}};
}

std::string spectrum_summary(const Spectrum& sp, const char* title) {
    std::ostringstream os;
    os << title << "\n";
    os << std::left << std::setw(4) << "n" << std::setw(6) << "sign" << std::setw(20) << "lambda"
       << "nodes\n";
    for (const auto& pair : sp.pairs) {
        os << std::setw(4) << pair.n << std::setw(6) << sign_char(pair.sign) << std::setw(20)
           << fmt12(pair.lambda);
        for (std::size_t k = 0; k < pair.nodes.t.size(); ++k) {
            os << (k ? " " : "") << fmt12(pair.nodes.t[k]);
        }
        os << "\n";
    }
    os << "increasing in n: " << (sp.increasing ? "yes" : "NO") << "\n";
    return os.str();
}

RunResult spectrum_result(const char* command, const OperatorSpec& spec, const Spectrum& sp,
                          const Geometry& geom, const std::string& abscissa) {
    RunResult out;
    out.doc = envelope(command, spec);
    out.doc["increasing"] = sp.increasing;
    json pairs = json::array();
    for (const auto& pair : sp.pairs) {
        pairs.push_back(pair_json(pair, eigen_abp(spec, pair.lambda, pair.global, geom)));
        out.csv.push_back({eig_name(pair.sign, pair.n), trajectory_csv(pair.global, abscissa)});
    }
    out.doc["pairs"] = pairs;
    out.summary = spectrum_summary(sp, command);
    return out;
}

} // namespace

double round12(double x) {
    if (!std::isfinite(x)) {
        return x;
    }
    return std::strtod(fmt12(x).c_str(), nullptr);
}

std::string trajectory_csv(const Trajectory& traj, const std::string& abscissa) {
    std::ostringstream os;
    os << abscissa << ",u,u_prime,u_second\n";
    const auto& t = traj.nodes();
    for (std::size_t k = 0; k < t.size(); ++k) {
        os << fmt12(t[k]) << ',' << fmt12(traj.u_nodes()[k]) << ',' << fmt12(traj.p_nodes()[k])
           << ',' << fmt12(traj.m_nodes()[k]) << '\n';
    }
    return os.str();
}

json structure_json(const StructureReport& rep) {
    json checks = json::array();
    for (const auto& c : rep.checks) {
        checks.push_back({{"name", c.name},
                          {"pass", c.pass},
                          {"worst", round12(c.worst)},
                          {"note", c.note}});
    }
    return {{"checks", checks}, {"concave", rep.concave}, {"usable", rep.usable()}};
}

json abp_json(const AbpReport& rep) {
    auto num = [](double x) { return std::isfinite(x) ? json(round12(x)) : json("inf"); };
    return {{"sup_u_plus", num(rep.sup_u_plus)},
            {"sup_u_minus", num(rep.sup_u_minus)},
            {"f_minus_norm", num(rep.f_minus_norm)},
            {"f_plus_norm", num(rep.f_plus_norm)},
            {"bound_plus", num(rep.bound_plus)},
            {"bound_minus", num(rep.bound_minus)},
            {"B", num(rep.B)},
            {"norm_kind", std::string(to_string(rep.norm_kind))},
            {"vacuous", rep.vacuous},
            {"pass", rep.pass}};
}

json operator_json(const OperatorSpec& spec) {
    return {{"kind", std::string(to_string(spec.kind))},
            {"lambda_min", round12(spec.lambda_min)},
            {"lambda_max", round12(spec.lambda_max)},
            {"gamma", round12(spec.gamma)},
            {"delta", round12(spec.delta)},
            {"dim", spec.dim},
            {"tables", spec.coeffs.size()}};
}

AbpReport eigen_abp(const OperatorSpec& spec, double lambda, const Trajectory& u,
                    const Geometry& geom) {
    const double shift = lambda + choose_kappa(spec);
    auto held = std::make_shared<const Trajectory>(u);
    Source f = [held, shift](double t) { return -shift * held->value(t); };
    return abp_check(u, f, spec, geom);
}

void RunResult::write(const std::string& dir, const std::string& format) const {
    if (format != "json" && format != "csv" && format != "both") {
        throw ConfigError("format: expected json, csv or both");
    }
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw ConfigError("out: cannot create " + dir + ": " + ec.message());
    }
    auto put = [&](const std::string& name, const std::string& text) {
        std::ofstream os(fs::path(dir) / name, std::ios::binary);
        if (!os) {
            throw ConfigError("out: cannot write " + name);
        }
        os << text;
    };
    if (format != "csv") {
        put("results.json", doc.dump(2) + "\n");
    }
    if (format != "json") {
        for (const auto& f : csv) {
            put(f.name, f.text);
        }
    }
    put("summary.txt", summary);
}

RunResult run_check_operator(const OperatorSpec& spec, const RunOptions& opts) {
    const StructureReport rep = check_structure(spec, opts.samples, opts.seed);
    RunResult out;
    out.doc = envelope("check-operator", spec);
    out.doc["samples"] = opts.samples;
    out.doc["seed"] = opts.seed;
    out.doc["structure"] = structure_json(rep);
    std::ostringstream os;
    os << "check-operator " << to_string(spec.kind) << "\n";
    for (const auto& c : rep.checks) {
        os << std::left << std::setw(4) << c.name << (c.pass ? "pass" : "FAIL") << "  worst "
           << fmt12(c.worst);
        if (!c.note.empty()) {
            os << "  " << c.note;
        }
        os << "\n";
    }
    if (rep.concave) {
        os << "concave: solved through the flipped operator\n";
    }
    os << "usable: " << (rep.usable() ? "yes" : "no") << "\n";
    out.summary = os.str();
    out.status = rep.usable() ? RunStatus::ok : RunStatus::structure;
    return out;
}

RunResult run_dirichlet(const OperatorSpec& spec, double a, double b, const SampledFunction& f,
                        const RunOptions& opts) {
    require_interval(spec, a, b);
    require_structure(spec, opts);
    BvpProblem prob;
    prob.spec = spec;
    prob.f = f.as_source();
    prob.a = a;
    prob.b = b;
    prob.kappa = choose_kappa(spec);
    prob.ivp = opts.ivp;
    const ShootingSolution sol = solve_dirichlet(prob);
    const AbpReport abp = abp_check(sol.trajectory, prob.f, spec, Geometry::interval(a, b));

    RunResult out;
    out.doc = envelope("dirichlet", spec);
    out.doc["interval"] = {round12(a), round12(b)};
    out.doc["kappa"] = round12(prob.kappa);
    out.doc["slope"] = round12(sol.parameter);
    out.doc["shots"] = sol.shots;
    out.doc["sup_u"] = round12(sol.trajectory.sup_abs());
    double residual = 0.0;
    for (int k = 1; k < 64; ++k) {
        const double t = a + (b - a) * k / 64.0;
        residual = std::max(residual, equation_residual(spec, prob.f, prob.kappa, sol.trajectory, t));
    }
    out.doc["residual"] = round12(residual);
    out.doc["abp"] = abp_json(abp);
    out.csv.push_back({"solution.csv", trajectory_csv(sol.trajectory, "t")});
    std::ostringstream os;
    os << "dirichlet on (" << fmt12(a) << ", " << fmt12(b) << "), kappa " << fmt12(prob.kappa)
       << "\n"
       << "u'(a) = " << fmt12(sol.parameter) << "  sup|u| = " << fmt12(sol.trajectory.sup_abs())
       << "\n"
       << "ABP: sup u+ " << fmt12(abp.sup_u_plus) << " <= " << fmt12(abp.bound_plus)
       << ", sup u- " << fmt12(abp.sup_u_minus) << " <= " << fmt12(abp.bound_minus) << "  "
       << (abp.pass ? "pass" : "FAIL") << "\n";
    out.summary = os.str();
    out.status = abp.pass ? RunStatus::ok : RunStatus::solver;
    return out;
}

RunResult run_radial_dirichlet(const OperatorSpec& spec, double R, const SampledFunction& f,
                               const RunOptions& opts) {
    require_radius(R);
    require_structure(spec, opts);
    RadialProblem prob{spec, f.as_source(), R, choose_kappa(spec), opts.ivp};
    const RadialSolveReport rep = radial_dirichlet(prob);
    const AbpReport abp = abp_check(rep.solution, prob.f, spec, Geometry::ball(R, spec.dim));

    RunResult out;
    out.doc = envelope("dirichlet", spec);
    out.doc["ball"] = {{"N", spec.dim}, {"R", round12(R)}};
    out.doc["kappa"] = round12(prob.kappa);
    out.doc["u0_direct"] = round12(rep.u0_direct);
    out.doc["u0_extrapolated"] = round12(rep.u0_extrapolated);
    out.doc["extrapolation_error"] = round12(rep.extrapolation_error);
    out.doc["discrepancy"] = round12(rep.discrepancy);
    out.doc["methods_agree"] = rep.agree;
    json fam = json::array();
    for (const auto& e : rep.eps_family) {
        fam.push_back({{"eps", round12(e.eps)}, {"u_eps", round12(e.value)}});
    }
    out.doc["eps_family"] = fam;
    out.doc["abp"] = abp_json(abp);
    out.csv.push_back({"solution.csv", trajectory_csv(rep.solution, "r")});
    std::ostringstream os;
    os << "dirichlet on the ball N = " << spec.dim << ", R = " << fmt12(R) << "\n"
       << "u(0): origin shooting " << fmt12(rep.u0_direct) << ", eps-family "
       << fmt12(rep.u0_extrapolated) << ", discrepancy " << fmt12(rep.discrepancy)
       << (rep.agree ? "" : "  (FLAGGED)") << "\n"
       << "ABP: " << (abp.pass ? "pass" : "FAIL") << "\n";
    out.summary = os.str();
    out.status = abp.pass ? RunStatus::ok : RunStatus::solver;
    return out;
}

RunResult run_semi_eig(const OperatorSpec& spec, double a, double b, int sign, EigenMethod method,
                       const RunOptions& opts) {
    require_interval(spec, a, b);
    require_structure(spec, opts);
    SemiEigenOptions eo;
    eo.ivp = opts.ivp;
    std::vector<int> signs = sign == 0 ? std::vector<int>{1, -1} : std::vector<int>{sign};
    RunResult out;
    out.doc = envelope("semi-eig", spec);
    json results = json::array();
    std::ostringstream os;
    os << "semi-eig on (" << fmt12(a) << ", " << fmt12(b) << "), method " << to_string(method)
       << "\n";
    for (int s : signs) {
        const SemiEigenResult res = method == EigenMethod::shoot
                                        ? semi_eigenvalue(spec, a, b, s, eo)
                                        : inverse_iteration(spec, a, b, s, eo);
        const AbpReport abp =
            eigen_abp(spec, res.lambda, res.eigenfunction, Geometry::interval(a, b));
        results.push_back(semi_json(res, abp));
        out.csv.push_back({eig_name(s, 0), trajectory_csv(res.eigenfunction, "t")});
        os << "lambda" << sign_char(s) << " = " << fmt12(res.lambda) << "  residual "
           << fmt12(res.residual) << "\n";
    }
    out.doc["results"] = results;
    out.summary = os.str();
    return out;
}

RunResult run_spectrum(const OperatorSpec& spec, double a, double b, int n_max,
                       const RunOptions& opts) {
    require_interval(spec, a, b);
    require_structure(spec, opts);
    NehariOptions no;
    no.eigen.ivp = opts.ivp;
    no.threads = opts.threads;
    const Spectrum sp = spectrum(spec, n_max, a, b, no);
    RunResult out = spectrum_result("spectrum", spec, sp, Geometry::interval(a, b), "t");
    out.doc["interval"] = {round12(a), round12(b)};
    return out;
}

RunResult run_radial_spectrum(const OperatorSpec& spec, double R, int n_max,
                              const RunOptions& opts) {
    require_radius(R);
    if (spec.dim < 2) {
        throw ConfigError("dim: the radial spectrum needs dim >= 2");
    }
    require_structure(spec, opts);
    NehariOptions no;
    no.eigen.ivp = opts.ivp;
    no.threads = opts.threads;
    const Spectrum sp = radial_spectrum(spec, R, n_max, no);
    RunResult out =
        spectrum_result("radial-spectrum", spec, sp, Geometry::ball(R, spec.dim), "r");
    out.doc["ball"] = {{"N", spec.dim}, {"R", round12(R)}};
    return out;
}

RunResult run_abp_audit(const OperatorSpec& spec, double a, double b, const RunOptions& opts) {
    require_interval(spec, a, b);
    require_structure(spec, opts);
    const double length = b - a;
    std::vector<std::pair<std::string, SampledFunction>> corpus;
    auto sampled = [&](auto fn) {
        std::vector<double> v(401);
        for (std::size_t k = 0; k < v.size(); ++k) {
            v[k] = fn(static_cast<double>(k) / 400.0);
        }
        return SampledFunction(a, b, v);
    };
    corpus.emplace_back("-1", SampledFunction(-1.0));
    corpus.emplace_back("+1", SampledFunction(1.0));
    corpus.emplace_back("0", SampledFunction(0.0));
    corpus.emplace_back("sin(2 pi s)", sampled([](double s) { return std::sin(2.0 * kPi * s); }));
    corpus.emplace_back("cos(3 pi s) - 0.2",
                        sampled([](double s) { return std::cos(3.0 * kPi * s) - 0.2; }));
    corpus.emplace_back("-exp(2 s)", sampled([](double s) { return -std::exp(2.0 * s); }));

    RunResult out;
    out.doc = envelope("abp-audit", spec);
    out.doc["interval"] = {round12(a), round12(b)};
    std::ostringstream os;
    os << "abp-audit on (" << fmt12(a) << ", " << fmt12(b) << ")\n";
    bool all_pass = true;
    json solves = json::array();
    Trajectory control_base;
    Source control_f;
    for (const auto& [label, f] : corpus) {
        BvpProblem prob;
        prob.spec = spec;
        prob.f = f.as_source();
        prob.a = a;
        prob.b = b;
        prob.kappa = choose_kappa(spec);
        prob.ivp = opts.ivp;
        const ShootingSolution sol = solve_dirichlet(prob);
        const AbpReport abp = abp_check(sol.trajectory, prob.f, spec, Geometry::interval(a, b));
        all_pass = all_pass && abp.pass;
        solves.push_back({{"f", label}, {"abp", abp_json(abp)}});
        os << std::left << std::setw(24) << ("f = " + label) << (abp.pass ? "pass" : "FAIL")
           << "  sup u+ " << fmt12(abp.sup_u_plus) << " <= " << fmt12(abp.bound_plus)
           << "  sup u- " << fmt12(abp.sup_u_minus) << " <= " << fmt12(abp.bound_minus) << "\n";
        if (label == "-1") {
            control_base = sol.trajectory;
            control_f = prob.f;
        }
    }
    out.doc["solves"] = solves;

    // The bound can exceed 100 sup u when the interval is long or the drift large, so the
    // control is pushed to twice the bound.
    const AbpReport base = abp_check(control_base, control_f, spec, Geometry::interval(a, b));
    const double factor = std::max(100.0, 2.0 * base.bound_plus / base.sup_u_plus);
    const AbpReport control =
        abp_check(control_base.scaled(factor), control_f, spec, Geometry::interval(a, b));
    const bool control_caught = !control.pass;
    out.doc["violation_control"] = {
        {"abp", abp_json(control)}, {"factor", round12(factor)}, {"detected", control_caught}};
    os << "violation control (u scaled by " << fmt12(factor)
       << "): " << (control_caught ? "detected" : "MISSED") << "\n";

    SemiEigenOptions eo;
    eo.ivp = opts.ivp;
    json blowup = json::array();
    bool blowup_ok = true;
    const double mid = 0.5 * (a + b);
    const int levels = 8;
    for (int k = 0; k < levels; ++k) {
        const double len = length * std::pow(1e-3 / length, static_cast<double>(k) / (levels - 1));
        for (int s : {1, -1}) {
            const double lambda = semi_eigenvalue(spec, mid - 0.5 * len, mid + 0.5 * len, s, eo).lambda;
            const double margin = blowup_margin(spec, lambda, len);
            blowup_ok = blowup_ok && margin >= 1.0;
            blowup.push_back({{"length", round12(len)},
                              {"sign", s},
                              {"lambda", round12(lambda)},
                              {"margin", round12(margin)}});
        }
        os << "length " << std::setw(14) << fmt12(len) << " (lambda + kappa) B L >= 1: "
           << fmt12(blowup.back()["margin"].get<double>()) << "\n";
    }
    out.doc["blowup"] = blowup;
    out.doc["blowup_consistent"] = blowup_ok;
    out.doc["all_pass"] = all_pass;
    os << "all solves pass: " << (all_pass ? "yes" : "NO")
       << ", blow-up inequality: " << (blowup_ok ? "holds" : "VIOLATED") << "\n";
    out.summary = os.str();
    out.status = all_pass && control_caught && blowup_ok ? RunStatus::ok : RunStatus::solver;
    return out;
}

} // namespace nlspec
