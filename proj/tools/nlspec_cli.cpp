// nlspec command-line front end. Talks to the solvers only through the C API.

#include "nlspec/nlspec.h"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

struct Flags {
    std::string op;
    std::string op_file;
    double lam = 1.0;
    double Lam = 1.0;
    double gamma = NAN;
    double delta = NAN;
    int dim = 1;
    double a = 1.0;
    double b = 1.0;
    double c = 0.0;
    double d = 0.0;
    std::vector<std::string> members;
    std::vector<double> interval{0.0, 1.0};
    double R = 0.0;
    int n_max = 2;
    std::string sign = "both";
    std::string method = "shoot";
    double f = -1.0;
    std::string out;
    std::string format = "both";
    int threads = 0;
    std::uint64_t seed = 20090617ULL;
    int samples = 2000;
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
};

class ConfigFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using OperatorPtr = std::unique_ptr<nlspec_operator, decltype(&nlspec_operator_destroy)>;
using ResultPtr = std::unique_ptr<nlspec_result, decltype(&nlspec_result_destroy)>;

std::string kind_name(const std::string& flag) {
    if (flag == "pucci+" || flag == "pucci_plus") return "pucci_plus";
    if (flag == "pucci-" || flag == "pucci_minus") return "pucci_minus";
    if (flag == "linear") return "linear";
    if (flag == "bellman-max" || flag == "bellman_max") return "bellman_max";
    if (flag == "bellman-min" || flag == "bellman_min") return "bellman_min";
    throw ConfigFailure("op: unknown operator '" + flag + "'");
}

std::vector<double> parse_member(const std::string& text) {
    std::vector<double> row;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            row.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigFailure("member: '" + text + "' is not a list a,b,c,d");
        }
    }
    if (row.size() != 4) {
        throw ConfigFailure("member: '" + text + "' needs exactly four numbers a,b,c,d");
    }
    return row;
}

// Operators given by flags go through the same file format as --op-file.
std::string operator_text(const Flags& fl) {
    std::ostringstream os;
    os.precision(17);
    const std::string kind = kind_name(fl.op);
    os << "kind: " << kind << "\n" << "dim: " << fl.dim << "\n";
    if (kind == "pucci_plus" || kind == "pucci_minus") {
        os << "lambda_min: " << fl.lam << "\n" << "lambda_max: " << fl.Lam << "\n";
        if (fl.c != 0.0 || fl.d != 0.0) {
            os << "coeffs:\n  - {c: " << fl.c << ", d: " << fl.d << "}\n";
        }
    } else if (kind == "linear") {
        os << "coeffs:\n  - {a: " << fl.a << ", b: " << fl.b << ", c: " << fl.c
           << ", d: " << fl.d << "}\n";
    } else {
        if (fl.members.empty()) {
            throw ConfigFailure("member: bellman operators need at least one --member a,b,c,d");
        }
        os << "coeffs:\n";
        for (const auto& m : fl.members) {
            const auto row = parse_member(m);
            os << "  - {a: " << row[0] << ", b: " << row[1] << ", c: " << row[2]
               << ", d: " << row[3] << "}\n";
        }
    }
    if (!std::isnan(fl.gamma)) os << "gamma: " << fl.gamma << "\n";
    if (!std::isnan(fl.delta)) os << "delta: " << fl.delta << "\n";
    return os.str();
}

OperatorPtr build_operator(const Flags& fl, bool dim_given) {
    nlspec_operator* raw = nullptr;
    nlspec_status st;
    if (!fl.op_file.empty()) {
        if (!fl.op.empty()) {
            throw ConfigFailure("op: give either --op or --op-file, not both");
        }
        st = nlspec_operator_load(fl.op_file.c_str(), &raw);
        if (st == NLSPEC_OK && dim_given) {
            st = nlspec_operator_set_dim(raw, fl.dim);
        }
        if (st == NLSPEC_OK && (!std::isnan(fl.gamma) || !std::isnan(fl.delta))) {
            st = nlspec_operator_set_constants(raw, NAN, NAN, fl.gamma, fl.delta);
        }
    } else {
        if (fl.op.empty()) {
            throw ConfigFailure("op: an operator is required (--op or --op-file)");
        }
        st = nlspec_operator_parse(operator_text(fl).c_str(), &raw);
    }
    OperatorPtr op(raw, &nlspec_operator_destroy);
    if (st != NLSPEC_OK) {
        throw ConfigFailure(nlspec_last_error());
    }
    return op;
}

int sign_value(const std::string& s) {
    if (s == "+" || s == "+1" || s == "plus" || s == "1") return 1;
    if (s == "-" || s == "-1" || s == "minus") return -1;
    if (s == "both" || s == "0") return 0;
    throw ConfigFailure("sign: expected +1, -1 or both");
}

void add_operator_flags(CLI::App* cmd, Flags& fl) {
    cmd->add_option("--op", fl.op, "pucci+, pucci-, linear, bellman-max, bellman-min");
    cmd->add_option("--op-file", fl.op_file, "operator definition file");
    cmd->add_option("--lam", fl.lam, "ellipticity constant lambda");
    cmd->add_option("--Lam", fl.Lam, "ellipticity constant Lambda");
    cmd->add_option("--gamma", fl.gamma, "gradient Lipschitz constant (default: derived)");
    cmd->add_option("--delta", fl.delta, "zero-order Lipschitz constant (default: derived)");
    cmd->add_option("--dim", fl.dim, "space dimension N");
    cmd->add_option("--a", fl.a, "linear: coefficient of u''");
    cmd->add_option("--b", fl.b, "linear: coefficient of (N-1) u'/r");
    cmd->add_option("--c", fl.c, "drift coefficient");
    cmd->add_option("--d", fl.d, "zero-order coefficient");
    cmd->add_option("--member", fl.members, "bellman member a,b,c,d (repeatable)");
    cmd->add_option("--seed", fl.seed, "structure sampling seed");
    cmd->add_option("--samples", fl.samples, "structure sample pairs");
    cmd->add_option("--rel-tol", fl.rel_tol, "integrator relative tolerance");
    cmd->add_option("--abs-tol", fl.abs_tol, "integrator absolute tolerance");
    cmd->add_option("--out", fl.out, "output directory (omit to only print the summary)");
    cmd->add_option("--format", fl.format, "json, csv or both");
    cmd->add_option("--threads", fl.threads, "worker threads (default: hardware)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Eigenvalues of fully nonlinear radial operators"};
    app.require_subcommand(1);
    Flags fl;

    auto* check = app.add_subcommand("check-operator", "audit the structural hypotheses");
    auto* dirichlet = app.add_subcommand("dirichlet", "solve Fr - kappa u = f with zero data");
    auto* semi = app.add_subcommand("semi-eig", "first one-signed eigenpairs on an interval");
    auto* spec = app.add_subcommand("spectrum", "eigenpairs n = 0..n_max on an interval");
    auto* radial = app.add_subcommand("radial-spectrum", "eigenpairs n = 0..n_max on a ball");
    auto* audit = app.add_subcommand("abp-audit", "ABP and blow-up certificates");
    for (auto* cmd : {check, dirichlet, semi, spec, radial, audit}) {
        add_operator_flags(cmd, fl);
    }
    for (auto* cmd : {dirichlet, semi, spec, audit}) {
        cmd->add_option("--interval", fl.interval, "interval end points a b")->expected(2);
    }
    dirichlet->add_option("--R", fl.R, "ball radius (solves on the ball instead)");
    radial->add_option("--R", fl.R, "ball radius")->required();
    dirichlet->add_option("--f", fl.f, "constant right-hand side");
    semi->add_option("--sign", fl.sign, "+1, -1 or both");
    semi->add_option("--method", fl.method, "shoot or inverse");
    spec->add_option("--n-max", fl.n_max, "largest interior zero count");
    radial->add_option("--n-max", fl.n_max, "largest interior zero count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        CLI::App* cmd = app.get_subcommands().front();
        const bool dim_given = cmd->count("--dim") > 0;
        OperatorPtr op = build_operator(fl, dim_given);

        nlspec_options opts;
        nlspec_options_default(&opts);
        opts.rel_tol = fl.rel_tol;
        opts.abs_tol = fl.abs_tol;
        opts.seed = fl.seed;
        opts.samples = fl.samples;
        opts.threads = fl.threads > 0 ? fl.threads
                                      : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
        if (fl.format != "json" && fl.format != "csv" && fl.format != "both") {
            throw ConfigFailure("format: expected json, csv or both");
        }
        const double a = fl.interval[0];
        const double b = fl.interval[1];

        nlspec_result* raw = nullptr;
        nlspec_status st;
        if (cmd == check) {
            st = nlspec_check_operator(op.get(), &opts, &raw);
        } else if (cmd == dirichlet) {
            st = fl.R > 0.0 ? nlspec_radial_dirichlet(op.get(), fl.R, &fl.f, 1, &opts, &raw)
                            : nlspec_dirichlet(op.get(), a, b, &fl.f, 1, &opts, &raw);
        } else if (cmd == semi) {
            nlspec_method method;
            if (fl.method == "shoot") {
                method = NLSPEC_METHOD_SHOOT;
            } else if (fl.method == "inverse" || fl.method == "inverse_iteration") {
                method = NLSPEC_METHOD_INVERSE_ITERATION;
            } else {
                throw ConfigFailure("method: expected shoot or inverse");
            }
            st = nlspec_semi_eig(op.get(), a, b, sign_value(fl.sign), method, &opts, &raw);
        } else if (cmd == spec) {
            st = nlspec_spectrum(op.get(), a, b, fl.n_max, &opts, &raw);
        } else if (cmd == radial) {
            st = nlspec_radial_spectrum(op.get(), fl.R, fl.n_max, &opts, &raw);
        } else {
            st = nlspec_abp_audit(op.get(), a, b, &opts, &raw);
        }
        ResultPtr res(raw, &nlspec_result_destroy);
        if (!res) {
            std::cerr << "error: " << nlspec_last_error() << "\n";
            return static_cast<int>(st);
        }
        std::cout << nlspec_result_summary(res.get());
        if (!fl.out.empty()) {
            if (nlspec_result_write(res.get(), fl.out.c_str(), fl.format.c_str()) != NLSPEC_OK) {
                std::cerr << "error: " << nlspec_last_error() << "\n";
                return 1;
            }
        }
        if (st == NLSPEC_ERR_STRUCTURE) {
            std::cerr << "error: structural hypotheses violated\n";
        }
        return static_cast<int>(st);
    } catch (const ConfigFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
