#pragma once

// Command layer shared by the C API and the command-line tool: every command
// returns a JSON document, eigenfunction CSV files and a plain-text summary.

#include "nlspec/diagnostics.hpp"
#include "nlspec/ivp.hpp"
#include "nlspec/nehari.hpp"
#include "nlspec/operator.hpp"
#include "nlspec/sampled.hpp"
#include "nlspec/semi_eigen.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace nlspec {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kConvention = "F(u'', u', u, t) = -lambda u";

enum class RunStatus { ok = 0, config = 1, solver = 2, structure = 3 };

struct CsvFile {
    std::string name;
    std::string text;
};

struct RunResult {
    nlohmann::json doc;
    std::vector<CsvFile> csv;
    std::string summary;
    RunStatus status = RunStatus::ok;

    /// Writes results.json, the CSV files and summary.txt into dir according
    /// to format ("json", "csv" or "both"; the summary is always written).
    void write(const std::string& dir, const std::string& format) const;
};

struct RunOptions {
    IvpConfig ivp{};
    int threads = 1;
    std::uint64_t seed = kDefaultStructureSeed;
    int samples = 2000;
};

/// Rounds to 12 significant digits so that serialized output is stable.
double round12(double x);

std::string trajectory_csv(const Trajectory& traj, const std::string& abscissa);

nlohmann::json structure_json(const StructureReport& rep);
nlohmann::json abp_json(const AbpReport& rep);
nlohmann::json operator_json(const OperatorSpec& spec);

/// ABP certificate of an eigenfunction, read as a solution of
/// Fr - kappa u = -(lambda + kappa) u.
AbpReport eigen_abp(const OperatorSpec& spec, double lambda, const Trajectory& u,
                    const Geometry& geom);

RunResult run_check_operator(const OperatorSpec& spec, const RunOptions& opts = {});
RunResult run_dirichlet(const OperatorSpec& spec, double a, double b, const SampledFunction& f,
                        const RunOptions& opts = {});
RunResult run_radial_dirichlet(const OperatorSpec& spec, double R, const SampledFunction& f,
                               const RunOptions& opts = {});
/// signs: +1, -1 or 0 for both; method: shoot, inverse_iteration.
RunResult run_semi_eig(const OperatorSpec& spec, double a, double b, int sign, EigenMethod method,
                       const RunOptions& opts = {});
RunResult run_spectrum(const OperatorSpec& spec, double a, double b, int n_max,
                       const RunOptions& opts = {});
RunResult run_radial_spectrum(const OperatorSpec& spec, double R, int n_max,
                              const RunOptions& opts = {});
/// Dirichlet solves for a fixed family of right-hand sides, a deliberate
/// violation control and the blow-up inequality on shrinking intervals.
RunResult run_abp_audit(const OperatorSpec& spec, double a, double b, const RunOptions& opts = {});

} // namespace nlspec
