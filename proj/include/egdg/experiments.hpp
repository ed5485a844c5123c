#ifndef EGDG_EXPERIMENTS_HPP
#define EGDG_EXPERIMENTS_HPP

#include "egdg/config.hpp"
#include "egdg/diagnostics.hpp"
#include "egdg/semidisc.hpp"
#include "egdg/timeint.hpp"

#include <json.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace egdg {

/// One recognized configuration key: lives at [section] name, and is also a
/// command-line flag --name.
struct KeySpec {
    std::string section;
    std::string name;
    std::string help;
};

const std::vector<KeySpec>& config_keys();
/// "section.name" for a bare key name, or throws ConfigError.
std::string qualified_key(const std::string& name);

/// Fully resolved run description. Unset keys take per-problem defaults.
struct RunConfig {
    std::string problem = "manufactured-1d";
    std::optional<double> theta;
    double mu = 0.2;
    std::string shift = "auto"; // auto | on | off

    int q = 4;
    int s = 4;
    std::string flux = "sommerfeld";
    std::optional<double> alpha, tau, beta;
    std::optional<double> xi;
    int quad = 16;
    double g_tol = 1e-10;
    std::string mean_constraint = "auto"; // auto | threshold | always
    std::string shift_weight = "physical"; // physical | divided

    std::vector<int> N{100};
    std::optional<int> ny;

    std::string boundary = "default"; // default | neumann | dirichlet | custom
    double gamma = 0.0, eta = 1.0, a = 0.0;

    double T = 1.0;
    std::optional<double> dt;
    double kappa = 0.075;
    int stride = 100;
    int regression_count = 6;

    std::string out = "out";
    int uniform_samples = 0;
    int snapshots = 0;
    int identity_stride = 0;

    unsigned seed = 12345;
    int cases = 100;

    static RunConfig from_config(const Config& cfg);
    nlohmann::json to_json() const;
    /// Inverse of to_json (accepts a whole run manifest too).
    static Config config_from_json(const nlohmann::json& j);

    Problem build_problem() const;
    FluxParams flux_params(double c) const;
    DiscretizationOptions disc_options() const;
    StepRule step_rule() const;
    bool use_shift(const Problem& p) const;
};

Mesh build_mesh(const Problem& p, int N, std::optional<int> ny = std::nullopt);
Discretization make_discretization(const RunConfig& cfg, int N);

struct ConvergeOutput {
    std::vector<ErrorRecord> records;
    std::optional<double> regression;
    bool aborted = false;
    std::string error;
};

/// Run each mesh of cfg.N to cfg.T and measure the L2 error in u.
ConvergeOutput run_convergence(const RunConfig& cfg, const std::function<void(const ErrorRecord&)>& progress = {});

struct EvolveOutput {
    IntegrateResult integ;
    std::vector<EnergySample> energy;
    double max_rel_drift = 0.0;
    /// Largest single-step energy increase, relative to E(0).
    double max_rel_increase = 0.0;
    /// Largest relative chain-rule vs closed-form mismatch over the checked steps (NaN if unchecked).
    double max_identity_mismatch = 0.0;
    int identity_checks = 0;
    State final_state;
    double dt = 0.0;
};

using SnapshotSink = std::function<void(long step, const Discretization&, const State&)>;

/// Evolve a single mesh (cfg.N[0]) and record the energy at every `stride` steps.
EvolveOutput run_evolution(const RunConfig& cfg, const SnapshotSink& sink = {}, int energy_stride = -1);

// ---------------------------------------------------------------- CSV

void write_errors_csv(const std::string& path, const std::vector<ErrorRecord>& records);
std::vector<ErrorRecord> read_errors_csv(const std::string& path);
void write_energy_csv(const std::string& path, const std::vector<EnergySample>& samples);
std::vector<EnergySample> read_energy_csv(const std::string& path);

struct SnapshotRow {
    double x = 0.0, y = 0.0, u = 0.0, v = 0.0;
};
/// Node samples (M = 0) or an M-point (per direction) uniform grid over the domain.
std::vector<SnapshotRow> sample_snapshot(const Discretization& disc, const State& y, int uniform_samples);
void write_snapshot_csv(const std::string& path, const std::vector<SnapshotRow>& rows, int dim);
std::vector<SnapshotRow> read_snapshot_csv(const std::string& path, int& dim);

// ---------------------------------------------------------------- verify

struct SuiteResult {
    std::string name;
    bool passed = false;
    double max_error = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

SuiteResult verify_oracle(unsigned seed);
SuiteResult verify_energy_identity(unsigned seed, int cases);
SuiteResult verify_flux(unsigned seed, int cases);
SuiteResult verify_rk4_order();
SuiteResult verify_projection_order();
std::vector<SuiteResult> run_verify_suites(unsigned seed, int cases);

/// Location of the u = level crossing on a 1D profile sampled at the nodes (first crossing from the left).
std::optional<double> level_crossing(const Discretization& disc, const State& y, double level, double from = -1e300);

} // namespace egdg

#endif
