#include "nlspec/nlspec.h"

#include "nlspec/error.hpp"
#include "nlspec/operator.hpp"
#include "nlspec/run.hpp"
#include "nlspec/semi_eigen.hpp"

#include <cmath>
#include <new>
#include <string>

struct nlspec_operator {
    nlspec::OperatorSpec spec;
};

struct nlspec_result {
    nlspec::RunResult run;
    std::string json;
};

namespace {

thread_local std::string last_error;

nlspec_status fail(nlspec_status code, const char* what) {
    last_error = what;
    return code;
}

// Runs body and maps the exception hierarchy onto status codes.
template <class Body>
nlspec_status guarded(Body&& body) {
    try {
        last_error.clear();
        return body();
    } catch (const nlspec::StructureError& e) {
        return fail(NLSPEC_ERR_STRUCTURE, e.what());
    } catch (const nlspec::ConfigError& e) {
        return fail(NLSPEC_ERR_CONFIG, e.what());
    } catch (const nlspec::DomainError& e) {
        return fail(NLSPEC_ERR_CONFIG, e.what());
    } catch (const std::bad_alloc&) {
        return fail(NLSPEC_ERR_SOLVER, "out of memory");
    } catch (const std::exception& e) {
        return fail(NLSPEC_ERR_SOLVER, e.what());
    } catch (...) {
        return fail(NLSPEC_ERR_SOLVER, "unknown error");
    }
}

nlspec::RunOptions run_options(const nlspec_options* opts) {
    nlspec_options o;
    nlspec_options_default(&o);
    if (opts) {
        o = *opts;
    }
    nlspec::RunOptions out;
    out.ivp.rel_tol = o.rel_tol;
    out.ivp.abs_tol = o.abs_tol;
    out.ivp.max_step = o.max_step;
    out.ivp.event_tol = o.event_tol;
    out.ivp.validate();
    if (o.threads < 1) {
        throw nlspec::ConfigError("threads: must be >= 1");
    }
    if (o.samples < 1) {
        throw nlspec::ConfigError("samples: must be >= 1");
    }
    out.threads = o.threads;
    out.seed = o.seed;
    out.samples = o.samples;
    return out;
}

nlspec_status emit(nlspec::RunResult run, nlspec_result** out) {
    if (!out) {
        throw nlspec::ConfigError("out: null result pointer");
    }
    auto* res = new nlspec_result{std::move(run), {}};
    res->json = res->run.doc.dump(2);
    *out = res;
    const int status = static_cast<int>(res->run.status);
    if (status != 0) {
        last_error = res->run.summary;
    }
    return static_cast<nlspec_status>(status);
}

const nlspec::OperatorSpec& spec_of(const nlspec_operator* op) {
    if (!op) {
        throw nlspec::ConfigError("operator: null handle");
    }
    return op->spec;
}

nlspec_status make(nlspec::OperatorSpec spec, nlspec_operator** out) {
    if (!out) {
        throw nlspec::ConfigError("out: null operator pointer");
    }
    *out = new nlspec_operator{std::move(spec)};
    return NLSPEC_OK;
}

nlspec::SampledFunction samples(const double* f, std::size_t n, double lo, double hi) {
    if (!f || n == 0) {
        throw nlspec::ConfigError("f: need at least one sample");
    }
    if (n == 1) {
        return nlspec::SampledFunction(f[0]);
    }
    return nlspec::SampledFunction(lo, hi, std::vector<double>(f, f + n));
}

} // namespace

extern "C" {

const char* nlspec_version(void) { return "1.0.0"; }

const char* nlspec_last_error(void) { return last_error.c_str(); }

void nlspec_options_default(nlspec_options* opts) {
    if (!opts) {
        return;
    }
    const nlspec::IvpConfig ivp;
    opts->rel_tol = ivp.rel_tol;
    opts->abs_tol = ivp.abs_tol;
    opts->max_step = ivp.max_step;
    opts->event_tol = ivp.event_tol;
    opts->threads = 1;
    opts->seed = nlspec::kDefaultStructureSeed;
    opts->samples = 2000;
}

nlspec_status nlspec_operator_pucci(const char* kind, double lambda_min, double lambda_max,
                                    int dim, nlspec_operator** out) {
    return guarded([&] {
        if (!kind) {
            throw nlspec::ConfigError("kind: missing");
        }
        const auto k = nlspec::operator_kind_from_string(kind);
        if (k == nlspec::OperatorKind::pucci_plus) {
            return make(nlspec::OperatorSpec::pucci_plus(lambda_min, lambda_max, dim), out);
        }
        if (k == nlspec::OperatorKind::pucci_minus) {
            return make(nlspec::OperatorSpec::pucci_minus(lambda_min, lambda_max, dim), out);
        }
        throw nlspec::ConfigError("kind: expected pucci_plus or pucci_minus");
    });
}

nlspec_status nlspec_operator_linear(double a, double b, double c, double d, int dim,
                                     nlspec_operator** out) {
    return guarded([&] { return make(nlspec::OperatorSpec::linear(a, b, c, d, dim), out); });
}

nlspec_status nlspec_operator_bellman(int take_max, const double* coeffs, size_t count, int dim,
                                      nlspec_operator** out) {
    return guarded([&] {
        if (!coeffs || count == 0) {
            throw nlspec::ConfigError("coeffs: need at least one member");
        }
        std::vector<nlspec::LinearCoeffs> members;
        for (size_t k = 0; k < count; ++k) {
            const double* row = coeffs + 4 * k;
            members.push_back({row[0], row[1], row[2], row[3]});
        }
        return make(nlspec::OperatorSpec::bellman(take_max != 0, std::move(members), dim), out);
    });
}

nlspec_status nlspec_operator_parse(const char* text, nlspec_operator** out) {
    return guarded([&] {
        if (!text) {
            throw nlspec::ConfigError("operator text: missing");
        }
        return make(nlspec::parse_operator(text), out);
    });
}

nlspec_status nlspec_operator_load(const char* path, nlspec_operator** out) {
    return guarded([&] {
        if (!path) {
            throw nlspec::ConfigError("operator file: missing path");
        }
        return make(nlspec::load_operator(path), out);
    });
}

nlspec_status nlspec_operator_set_constants(nlspec_operator* op, double lambda_min,
                                            double lambda_max, double gamma, double delta) {
    return guarded([&] {
        if (!op) {
            throw nlspec::ConfigError("operator: null handle");
        }
        auto& s = op->spec;
        if (!std::isnan(lambda_min)) s.lambda_min = lambda_min;
        if (!std::isnan(lambda_max)) s.lambda_max = lambda_max;
        if (!std::isnan(gamma)) s.gamma = gamma;
        if (!std::isnan(delta)) s.delta = delta;
        return NLSPEC_OK;
    });
}

nlspec_status nlspec_operator_set_dim(nlspec_operator* op, int dim) {
    return guarded([&] {
        if (!op) {
            throw nlspec::ConfigError("operator: null handle");
        }
        if (dim < 1) {
            throw nlspec::ConfigError("dim: must be >= 1");
        }
        op->spec.dim = dim;
        return NLSPEC_OK;
    });
}

int nlspec_operator_dim(const nlspec_operator* op) { return op ? op->spec.dim : 0; }

void nlspec_operator_destroy(nlspec_operator* op) { delete op; }

nlspec_status nlspec_evaluate(const nlspec_operator* op, double m, double ell, double p, double u,
                              double r, double* out) {
    return guarded([&] {
        if (!out) {
            throw nlspec::ConfigError("out: null pointer");
        }
        *out = nlspec::evaluate(spec_of(op), {m, ell, p, u, r});
        return NLSPEC_OK;
    });
}

nlspec_status nlspec_invert_m(const nlspec_operator* op, double ell, double p, double u, double q,
                              double r, double* out) {
    return guarded([&] {
        if (!out) {
            throw nlspec::ConfigError("out: null pointer");
        }
        *out = nlspec::invert_m(spec_of(op), ell, p, u, q, r);
        return NLSPEC_OK;
    });
}

nlspec_status nlspec_check_operator(const nlspec_operator* op, const nlspec_options* opts,
                                    nlspec_result** out) {
    return guarded([&] { return emit(nlspec::run_check_operator(spec_of(op), run_options(opts)), out); });
}

nlspec_status nlspec_dirichlet(const nlspec_operator* op, double a, double b, const double* f,
                               size_t n, const nlspec_options* opts, nlspec_result** out) {
    return guarded([&] {
        return emit(nlspec::run_dirichlet(spec_of(op), a, b, samples(f, n, a, b), run_options(opts)),
                    out);
    });
}

nlspec_status nlspec_radial_dirichlet(const nlspec_operator* op, double R, const double* f,
                                      size_t n, const nlspec_options* opts, nlspec_result** out) {
    return guarded([&] {
        return emit(nlspec::run_radial_dirichlet(spec_of(op), R, samples(f, n, 0.0, R),
                                                 run_options(opts)),
                    out);
    });
}

nlspec_status nlspec_semi_eig(const nlspec_operator* op, double a, double b, int sign,
                              nlspec_method method, const nlspec_options* opts,
                              nlspec_result** out) {
    return guarded([&] {
        if (sign != 0 && sign != 1 && sign != -1) {
            throw nlspec::ConfigError("sign: expected +1, -1 or 0");
        }
        const auto m = method == NLSPEC_METHOD_INVERSE_ITERATION
                           ? nlspec::EigenMethod::inverse_iteration
                           : nlspec::EigenMethod::shoot;
        return emit(nlspec::run_semi_eig(spec_of(op), a, b, sign, m, run_options(opts)), out);
    });
}

nlspec_status nlspec_spectrum(const nlspec_operator* op, double a, double b, int n_max,
                              const nlspec_options* opts, nlspec_result** out) {
    return guarded([&] {
        return emit(nlspec::run_spectrum(spec_of(op), a, b, n_max, run_options(opts)), out);
    });
}

nlspec_status nlspec_radial_spectrum(const nlspec_operator* op, double R, int n_max,
                                     const nlspec_options* opts, nlspec_result** out) {
    return guarded([&] {
        return emit(nlspec::run_radial_spectrum(spec_of(op), R, n_max, run_options(opts)), out);
    });
}

nlspec_status nlspec_abp_audit(const nlspec_operator* op, double a, double b,
                               const nlspec_options* opts, nlspec_result** out) {
    return guarded([&] {
        return emit(nlspec::run_abp_audit(spec_of(op), a, b, run_options(opts)), out);
    });
}

nlspec_status nlspec_semi_eigenvalue(const nlspec_operator* op, double t1, double t2, int sign,
                                     double* lambda) {
    return guarded([&] {
        if (!lambda) {
            throw nlspec::ConfigError("out: null pointer");
        }
        *lambda = nlspec::semi_eigenvalue(spec_of(op), t1, t2, sign).lambda;
        return NLSPEC_OK;
    });
}

nlspec_status nlspec_result_status(const nlspec_result* res) {
    return res ? static_cast<nlspec_status>(res->run.status) : NLSPEC_ERR_CONFIG;
}

const char* nlspec_result_json(const nlspec_result* res) { return res ? res->json.c_str() : ""; }

const char* nlspec_result_summary(const nlspec_result* res) {
    return res ? res->run.summary.c_str() : "";
}

size_t nlspec_result_csv_count(const nlspec_result* res) { return res ? res->run.csv.size() : 0; }

const char* nlspec_result_csv_name(const nlspec_result* res, size_t index) {
    return res && index < res->run.csv.size() ? res->run.csv[index].name.c_str() : nullptr;
}

const char* nlspec_result_csv_text(const nlspec_result* res, size_t index) {
    return res && index < res->run.csv.size() ? res->run.csv[index].text.c_str() : nullptr;
}

nlspec_status nlspec_result_lambda(const nlspec_result* res, int n, int sign, double* out) {
    return guarded([&] {
        if (!res || !out) {
            throw nlspec::ConfigError("result: null pointer");
        }
        const auto& doc = res->run.doc;
        const char* key = doc.contains("pairs") ? "pairs" : "results";
        if (!doc.contains(key)) {
            throw nlspec::ConfigError("result: holds no eigenvalues");
        }
        for (const auto& item : doc[key]) {
            const int item_n = item.contains("n") ? item["n"].get<int>() : 0;
            if (item_n == n && item["sign"].get<int>() == sign) {
                *out = item["lambda"].get<double>();
                return NLSPEC_OK;
            }
        }
        throw nlspec::ConfigError("result: no eigenvalue for the requested n and sign");
    });
}

nlspec_status nlspec_result_write(const nlspec_result* res, const char* dir, const char* format) {
    return guarded([&] {
        if (!res || !dir || !format) {
            throw nlspec::ConfigError("result_write: null argument");
        }
        res->run.write(dir, format);
        return NLSPEC_OK;
    });
}

void nlspec_result_destroy(nlspec_result* res) { delete res; }

} // extern "C"
