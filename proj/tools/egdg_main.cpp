// egdg command-line driver: converge | run | energy | verify.

#include "egdg/experiments.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

namespace fs = std::filesystem;
using namespace egdg;

namespace {

constexpr int kOk = 0, kUsage = 1, kBreakdown = 2, kPropertyFailure = 3;

int configure_threads()
{
    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
    if (const char* env = std::getenv("EGDG_THREADS")) {
        const int cap = std::atoi(env);
        if (cap < 1)
            throw ConfigError("EGDG_THREADS must be a positive integer");
        threads = std::min(threads, cap);
        omp_set_num_threads(threads);
    }
#endif
    return threads;
}

struct Options {
    std::string config_file;
    std::map<std::string, std::string> overrides;
};

void add_key_flags(CLI::App* cmd, Options& opts)
{
    cmd->add_option("--config", opts.config_file, "config file (TOML-style) or a run manifest (.json)");
    for (const auto& k : config_keys()) {
        const std::string key = k.section + "." + k.name;
        std::string flags = "--" + k.name;
        if (k.name.find('_') != std::string::npos) {
            std::string dashed = k.name;
            std::replace(dashed.begin(), dashed.end(), '_', '-');
            flags += ",--" + dashed;
        }
        cmd->add_option_function<std::string>(
            flags, [&opts, key](const std::string& v) { opts.overrides[key] = v; },
            k.help + " [" + k.section + "]");
    }
}

RunConfig resolve(const Options& opts)
{
    Config cfg;
    if (!opts.config_file.empty()) {
        if (fs::path(opts.config_file).extension() == ".json") {
            std::ifstream in(opts.config_file);
            if (!in)
                throw ConfigError("cannot open '" + opts.config_file + "'");
            nlohmann::json j;
            try {
                in >> j;
            } catch (const nlohmann::json::exception& e) {
                throw ConfigError("'" + opts.config_file + "': " + e.what());
            }
            cfg = RunConfig::config_from_json(j);
        } else {
            cfg = load_config_file(opts.config_file);
        }
    }
    for (const auto& [k, v] : opts.overrides)
        cfg.set(k, v);
    RunConfig rc = RunConfig::from_config(cfg);
    if (rc.s < rc.q - 1)
        std::cerr << "warning: s = " << rc.s << " is more than one below q = " << rc.q << "\n";
    return rc;
}

fs::path prepare_out(const RunConfig& rc)
{
    fs::path dir(rc.out);
    fs::create_directories(dir);
    return dir;
}

void write_manifest(const fs::path& dir, const std::string& command, const RunConfig& rc, int threads,
                    const nlohmann::json& results)
{
    nlohmann::json m;
    m["command"] = command;
    m["config"] = rc.to_json();
    m["threads"] = threads;
    m["results"] = results;
    std::ofstream f(dir / "manifest.json");
    f << m.dump(2) << "\n";
}

int cmd_converge(const RunConfig& rc, int threads)
{
    const fs::path dir = prepare_out(rc);
    std::printf("%6s %12s %4s %4s %15s %12s %8s\n", "N", "h", "q", "s", "flux", "l2_error_u", "rate");
    const ConvergeOutput out = run_convergence(rc, [](const ErrorRecord& r) {
        std::printf("%6d %12.5e %4d %4d %15s %12.4e %8s\n", r.N, r.h, r.q, r.s, r.flux.c_str(), r.l2_error_u,
                    r.rate ? std::to_string(*r.rate).substr(0, 6).c_str() : "-");
        std::fflush(stdout);
    });
    write_errors_csv((dir / "errors.csv").string(), out.records);
    nlohmann::json res;
    res["records"] = nlohmann::json::array();
    for (const auto& r : out.records)
        res["records"].push_back({{"N", r.N},
                                  {"h", r.h},
                                  {"l2_error_u", r.l2_error_u},
                                  {"rate", r.rate ? nlohmann::json(*r.rate) : nlohmann::json(nullptr)}});
    res["regression_rate"] = out.regression ? nlohmann::json(*out.regression) : nlohmann::json(nullptr);
    res["aborted"] = out.aborted;
    res["error"] = out.error;
    write_manifest(dir, "converge", rc, threads, res);
    if (out.regression)
        std::printf("regression rate (%d finest): %.3f\n", rc.regression_count, *out.regression);
    if (out.aborted) {
        std::fprintf(stderr, "numerical breakdown: %s\n", out.error.c_str());
        return kBreakdown;
    }
    return kOk;
}

int cmd_evolve(const RunConfig& rc, int threads, bool snapshots)
{
    const fs::path dir = prepare_out(rc);
    int dim = 1;
    SnapshotSink sink;
    if (snapshots)
        sink = [&](long step, const Discretization& d, const State& y) {
            dim = d.mesh().dim;
            char name[64];
            std::snprintf(name, sizeof name, "snapshot_%08ld.csv", step);
            write_snapshot_csv((dir / name).string(), sample_snapshot(d, y, rc.uniform_samples), dim);
        };
    const EvolveOutput out = run_evolution(rc, sink, snapshots ? -1 : rc.stride);
    write_energy_csv((dir / "energy.csv").string(), out.energy);
    nlohmann::json res{{"steps", out.integ.steps},
                       {"dt", out.dt},
                       {"final_time", out.integ.t},
                       {"max_rel_drift", out.max_rel_drift},
                       {"max_rel_increase", out.max_rel_increase},
                       {"identity_checks", out.identity_checks},
                       {"max_identity_mismatch", out.max_identity_mismatch},
                       {"aborted", out.integ.aborted},
                       {"abort_time", out.integ.aborted ? nlohmann::json(out.integ.t) : nlohmann::json(nullptr)},
                       {"error", out.integ.error},
                       {"error_element", out.integ.error_element}};
    write_manifest(dir, snapshots ? "run" : "energy", rc, threads, res);
    std::printf("steps %ld  dt %.6g  t %.6g\n", out.integ.steps, out.dt, out.integ.t);
    if (!out.energy.empty())
        std::printf("E(0) %.12e  E(T) %.12e  max rel drift %.3e  max rel increase %.3e\n", out.energy.front().E,
                    out.energy.back().E, out.max_rel_drift, out.max_rel_increase);
    if (out.identity_checks > 0)
        std::printf("energy identity: %d checks, max mismatch %.3e\n", out.identity_checks, out.max_identity_mismatch);
    if (out.integ.aborted) {
        std::fprintf(stderr, "numerical breakdown at t = %.6g: %s\n", out.integ.t, out.integ.error.c_str());
        return kBreakdown;
    }
    return kOk;
}

int cmd_verify(const RunConfig& rc)
{
    bool ok = true;
    for (const auto& s : run_verify_suites(rc.seed, rc.cases)) {
        std::printf("%-4s %-20s max %.3e  tol %.1e  %s\n", s.passed ? "PASS" : "FAIL", s.name.c_str(), s.max_error,
                    s.tolerance, s.detail.c_str());
        ok = ok && s.passed;
    }
    return ok ? kOk : kPropertyFailure;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Energy-based DG solver for semilinear wave equations"};
    app.require_subcommand(1);
    Options converge_opts, run_opts, energy_opts, verify_opts;
    auto* converge = app.add_subcommand("converge", "convergence study over the mesh list N");
    auto* run = app.add_subcommand("run", "evolve one mesh, write snapshots and the energy history");
    auto* energy = app.add_subcommand("energy", "evolve one mesh, write only the energy history");
    auto* verify = app.add_subcommand("verify", "run the property suites");
    add_key_flags(converge, converge_opts);
    add_key_flags(run, run_opts);
    add_key_flags(energy, energy_opts);
    add_key_flags(verify, verify_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        const int threads = configure_threads();
        if (*converge)
            return cmd_converge(resolve(converge_opts), threads);
        if (*run)
            return cmd_evolve(resolve(run_opts), threads, true);
        if (*energy)
            return cmd_evolve(resolve(energy_opts), threads, false);
        return cmd_verify(resolve(verify_opts));
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const NumericalBreakdown& e) {
        std::cerr << "numerical breakdown: " << e.what() << "\n";
        return kBreakdown;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
