#include "egdg/experiments.hpp"

#include "egdg/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace egdg {

const std::vector<KeySpec>& config_keys()
{
    static const std::vector<KeySpec> keys{
        {"problem", "problem", "problem name"},
        {"problem", "theta", "damping coefficient (problem default if unset)"},
        {"problem", "mu", "kink velocity"},
        {"problem", "shift", "solve for u - u(x,0): auto | on | off"},
        {"discretization", "q", "degree of u^h"},
        {"discretization", "s", "degree of v^h (s <= q)"},
        {"discretization", "flux", "central | alternating | sommerfeld | alt-sommerfeld"},
        {"discretization", "alpha", "override flux alpha"},
        {"discretization", "tau", "override flux tau"},
        {"discretization", "beta", "override flux beta"},
        {"discretization", "xi", "flux splitting parameter (default c)"},
        {"discretization", "quad", "Gauss points per direction"},
        {"discretization", "g_tol", "mean-constraint threshold on max |f(u)/u|"},
        {"discretization", "mean_constraint", "auto | threshold | always"},
        {"discretization", "shift_weight", "physical | divided"},
        {"mesh", "N", "cells (1D) or cells per direction (2D); list for convergence"},
        {"mesh", "ny", "cells in y (2D, default N)"},
        {"boundary", "boundary", "default | neumann | dirichlet | custom"},
        {"boundary", "gamma", "custom boundary gamma"},
        {"boundary", "eta", "custom boundary eta"},
        {"boundary", "a", "boundary trace parameter a"},
        {"time", "T", "final time"},
        {"time", "dt", "fixed time step (overrides kappa)"},
        {"time", "kappa", "dt = kappa h / (2 pi)"},
        {"time", "stride", "observer stride in steps"},
        {"time", "identity_stride", "energy-identity cross-check stride (0 = off)"},
        {"output", "out", "output directory"},
        {"output", "uniform_samples", "snapshot samples per direction on a uniform grid (0 = quadrature nodes)"},
        {"output", "snapshots", "number of snapshots (besides t = 0 and t = T)"},
        {"output", "regression_count", "finest grids used by the regression rate"},
        {"verify", "seed", "random seed"},
        {"verify", "cases", "random states per energy-identity suite"},
    };
    return keys;
}

std::string qualified_key(const std::string& name)
{
    for (const auto& k : config_keys())
        if (k.name == name || k.section + "." + k.name == name)
            return k.section + "." + k.name;
    throw ConfigError("unknown config key '" + name + "'");
}

namespace {

struct Defaults {
    std::string flux;
    int q, s;
    std::vector<int> N;
    double T;
    std::optional<double> dt;
    double kappa;
};

Defaults problem_defaults(const std::string& name)
{
    static const std::map<std::string, Defaults> table{
        {"manufactured-1d", {"sommerfeld", 2, 2, {400, 800}, 2.0, {}, 0.075}},
        {"breather-forced", {"sommerfeld", 4, 4, {80, 100}, 2.0, {}, 0.075}},
        {"sine-gordon", {"alternating", 4, 4, {120}, 120.0, {}, 0.195}},
        {"kink", {"alternating", 4, 3, {120}, 80.0, 0.01, 0.075}},
        {"antikink", {"central", 4, 3, {120}, 80.0, 0.01, 0.075}},
        {"kink-kink", {"alt-sommerfeld", 4, 3, {120}, 80.0, 0.01, 0.075}},
        {"kink-antikink", {"sommerfeld", 4, 3, {120}, 80.0, 0.01, 0.075}},
        {"manufactured-2d", {"sommerfeld", 2, 2, {8, 10, 12, 16, 20, 24}, 0.2, {}, 0.075}},
        {"cubic-defocusing", {"sommerfeld", 4, 4, {5}, 10.0, {}, 0.075}},
        {"cubic-focusing", {"sommerfeld", 4, 4, {5}, 2.0, {}, 0.075}},
        {"focusing-2d", {"sommerfeld", 4, 4, {5}, 2.0, {}, 0.075}},
    };
    const auto it = table.find(name);
    if (it == table.end())
        throw ConfigError("unknown problem '" + name + "'");
    return it->second;
}

std::string fmt_full(double x)
{
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

template <class T>
nlohmann::json opt_json(const std::optional<T>& v)
{
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

void check_choice(const std::string& key, const std::string& v, std::initializer_list<const char*> allowed)
{
    for (const char* a : allowed)
        if (v == a)
            return;
    std::string list;
    for (const char* a : allowed)
        list += std::string(list.empty() ? "" : " | ") + a;
    throw ConfigError("key '" + key + "': expected " + list + ", got '" + v + "'");
}

} // namespace

RunConfig RunConfig::from_config(const Config& cfg)
{
    for (const auto& [key, value] : cfg.values())
        if (qualified_key(key) != key)
            throw ConfigError("config key '" + key + "' belongs in section [" + qualified_key(key).substr(0, qualified_key(key).find('.')) + "]");

    RunConfig r;
    r.problem = cfg.get_string("problem.problem", r.problem);
    const Defaults d = problem_defaults(r.problem);
    r.flux = d.flux;
    r.q = d.q;
    r.s = d.s;
    r.N = d.N;
    r.T = d.T;
    r.dt = d.dt;
    r.kappa = d.kappa;

    if (cfg.has("problem.theta"))
        r.theta = cfg.get_double("problem.theta", 0.0);
    r.mu = cfg.get_double("problem.mu", r.mu);
    r.shift = cfg.get_string("problem.shift", r.shift);
    check_choice("shift", r.shift, {"auto", "on", "off"});

    r.q = cfg.get_int("discretization.q", r.q);
    // s follows q unless given.
    r.s = cfg.has("discretization.s") ? cfg.get_int("discretization.s", r.s) : (cfg.has("discretization.q") ? r.q - (d.q - d.s) : r.s);
    r.flux = cfg.get_string("discretization.flux", r.flux);
    check_choice("flux", r.flux, {"central", "alternating", "sommerfeld", "alt-sommerfeld"});
    if (cfg.has("discretization.alpha"))
        r.alpha = cfg.get_double("discretization.alpha", 0.0);
    if (cfg.has("discretization.tau"))
        r.tau = cfg.get_double("discretization.tau", 0.0);
    if (cfg.has("discretization.beta"))
        r.beta = cfg.get_double("discretization.beta", 0.0);
    if (cfg.has("discretization.xi"))
        r.xi = cfg.get_double("discretization.xi", 1.0);
    r.quad = cfg.get_int("discretization.quad", r.quad);
    r.g_tol = cfg.get_double("discretization.g_tol", r.g_tol);
    r.mean_constraint = cfg.get_string("discretization.mean_constraint", r.mean_constraint);
    check_choice("mean_constraint", r.mean_constraint, {"auto", "threshold", "always"});
    r.shift_weight = cfg.get_string("discretization.shift_weight", r.shift_weight);
    check_choice("shift_weight", r.shift_weight, {"physical", "divided"});

    r.N = cfg.get_int_list("mesh.N", r.N);
    if (cfg.has("mesh.ny"))
        r.ny = cfg.get_int("mesh.ny", 1);

    r.boundary = cfg.get_string("boundary.boundary", r.boundary);
    check_choice("boundary", r.boundary, {"default", "neumann", "dirichlet", "custom"});
    r.gamma = cfg.get_double("boundary.gamma", r.gamma);
    r.eta = cfg.get_double("boundary.eta", r.eta);
    r.a = cfg.get_double("boundary.a", r.a);

    r.T = cfg.get_double("time.T", r.T);
    if (cfg.has("time.dt"))
        r.dt = cfg.get_double("time.dt", 0.01);
    if (cfg.has("time.kappa")) {
        r.kappa = cfg.get_double("time.kappa", r.kappa);
        if (!cfg.has("time.dt"))
            r.dt.reset();
    }
    r.stride = cfg.get_int("time.stride", r.stride);
    r.identity_stride = cfg.get_int("time.identity_stride", r.identity_stride);

    r.out = cfg.get_string("output.out", r.out);
    r.uniform_samples = cfg.get_int("output.uniform_samples", r.uniform_samples);
    r.snapshots = cfg.get_int("output.snapshots", r.snapshots);
    r.regression_count = cfg.get_int("output.regression_count", r.regression_count);

    r.seed = static_cast<unsigned>(cfg.get_int("verify.seed", static_cast<int>(r.seed)));
    r.cases = cfg.get_int("verify.cases", r.cases);

    if (r.q < 1 || r.s < 0 || r.s > r.q)
        throw ConfigError("require q >= 1 and 0 <= s <= q (got q=" + std::to_string(r.q) + ", s=" + std::to_string(r.s) + ")");
    if (r.quad < r.q + 1)
        throw ConfigError("quad must be at least q + 1");
    for (int n : r.N)
        if (n < 1)
            throw ConfigError("mesh sizes must be positive");
    if (!(r.T > 0.0))
        throw ConfigError("T must be positive");
    if (r.dt && !(*r.dt > 0.0))
        throw ConfigError("dt must be positive");
    if (!(r.kappa > 0.0))
        throw ConfigError("kappa must be positive");
    if (r.stride < 1)
        throw ConfigError("stride must be at least 1");
    if (r.uniform_samples < 0 || r.snapshots < 0 || r.identity_stride < 0)
        throw ConfigError("uniform_samples, snapshots and identity_stride must be non-negative");
    return r;
}

nlohmann::json RunConfig::to_json() const
{
    nlohmann::json j;
    j["problem"] = {{"problem", problem}, {"theta", opt_json(theta)}, {"mu", mu}, {"shift", shift}};
    j["discretization"] = {{"q", q},
                           {"s", s},
                           {"flux", flux},
                           {"alpha", opt_json(alpha)},
                           {"tau", opt_json(tau)},
                           {"beta", opt_json(beta)},
                           {"xi", opt_json(xi)},
                           {"quad", quad},
                           {"g_tol", g_tol},
                           {"mean_constraint", mean_constraint},
                           {"shift_weight", shift_weight}};
    j["mesh"] = {{"N", N}, {"ny", opt_json(ny)}};
    j["boundary"] = {{"boundary", boundary}, {"gamma", gamma}, {"eta", eta}, {"a", a}};
    j["time"] = {{"T", T}, {"dt", opt_json(dt)}, {"kappa", kappa}, {"stride", stride}, {"identity_stride", identity_stride}};
    j["output"] = {{"out", out},
                   {"uniform_samples", uniform_samples},
                   {"snapshots", snapshots},
                   {"regression_count", regression_count}};
    j["verify"] = {{"seed", seed}, {"cases", cases}};
    return j;
}

Config RunConfig::config_from_json(const nlohmann::json& j)
{
    const nlohmann::json& root = j.contains("config") ? j.at("config") : j;
    if (!root.is_object())
        throw ConfigError("manifest: expected a config object");
    Config cfg;
    for (const auto& [section, body] : root.items()) {
        if (!body.is_object())
            throw ConfigError("manifest: section '" + section + "' is not an object");
        for (const auto& [key, value] : body.items()) {
            const std::string full = section + "." + key;
            if (qualified_key(full) != full)
                throw ConfigError("manifest: unknown key '" + full + "'");
            if (value.is_null())
                continue;
            if (value.is_string()) {
                cfg.set(full, value.get<std::string>());
            } else if (value.is_array()) {
                std::string list;
                for (const auto& v : value)
                    list += (list.empty() ? "" : ",") + v.dump();
                cfg.set(full, "[" + list + "]");
            } else if (value.is_number_float()) {
                cfg.set(full, fmt_full(value.get<double>()));
            } else {
                cfg.set(full, value.dump());
            }
        }
    }
    return cfg;
}

Problem RunConfig::build_problem() const
{
    ProblemOptions po;
    po.theta = theta;
    po.mu = mu;
    Problem p = make_problem(problem, po);
    if (p.boundary.kind == BoundaryKind::Flux) {
        if (boundary == "neumann")
            p.boundary.params = BoundaryParams::neumann();
        else if (boundary == "dirichlet")
            p.boundary.params = BoundaryParams::dirichlet();
        else if (boundary == "custom")
            p.boundary.params = {gamma, eta, a};
        if (boundary != "custom")
            p.boundary.params.a = a;
        p.boundary.params.validate();
    }
    if (use_shift(p)) {
        if (!p.initial_field)
            throw ConfigError("problem '" + problem + "' has no closed-form initial field to shift by");
        p = shifted(p, *p.initial_field);
    }
    return p;
}

bool RunConfig::use_shift(const Problem& p) const
{
    if (shift == "on")
        return true;
    if (shift == "off")
        return false;
    // Forced 1D convergence problems start from a shifted state by default.
    return p.dim == 1 && p.has_forcing() && p.exact.has_value() && p.initial_field.has_value();
}

FluxParams RunConfig::flux_params(double c) const
{
    FluxParams f = FluxParams::from_name(flux, xi.value_or(c));
    if (alpha || tau || beta) {
        f.alpha = alpha.value_or(f.alpha);
        f.tau = tau.value_or(f.tau);
        f.beta = beta.value_or(f.beta);
        f.preset = FluxPreset::Custom;
    }
    if (f.alpha < 0.0 || f.alpha > 1.0 || f.tau < 0.0 || f.beta < 0.0)
        throw ConfigError("flux parameters must satisfy 0 <= alpha <= 1, tau >= 0, beta >= 0");
    return f;
}

DiscretizationOptions RunConfig::disc_options() const
{
    DiscretizationOptions o;
    o.quad_points = quad;
    o.g_tol = g_tol;
    o.mean_constraint = mean_constraint == "always"      ? MeanConstraint::Always
                        : mean_constraint == "threshold" ? MeanConstraint::Threshold
                                                         : MeanConstraint::Auto;
    o.shift_weight = shift_weight == "divided" ? ShiftWeight::Divided : ShiftWeight::Physical;
    return o;
}

StepRule RunConfig::step_rule() const { return dt ? StepRule::fixed(*dt) : StepRule::proportional(kappa); }

Mesh build_mesh(const Problem& p, int N, std::optional<int> ny)
{
    const bool periodic = p.boundary.kind == BoundaryKind::Periodic;
    if (p.dim == 1)
        return build_interval_mesh(p.domain.x0, p.domain.x1, N, periodic);
    return build_cartesian_mesh(p.domain, N, ny.value_or(N), periodic);
}

Discretization make_discretization(const RunConfig& cfg, int N)
{
    Problem p = cfg.build_problem();
    Mesh m = build_mesh(p, N, cfg.ny);
    const FluxParams f = cfg.flux_params(p.c);
    return Discretization(std::move(p), std::move(m), cfg.q, cfg.s, f, cfg.disc_options());
}

namespace {

auto rhs_of(const Discretization& disc)
{
    return [&disc](double t, State y) {
        y.t = t;
        return disc.compute_rhs(y);
    };
}

} // namespace

ConvergeOutput run_convergence(const RunConfig& cfg, const std::function<void(const ErrorRecord&)>& progress)
{
    ConvergeOutput out;
    for (int N : cfg.N) {
        const Discretization disc = make_discretization(cfg, N);
        if (!disc.problem().exact)
            throw ConfigError("problem '" + cfg.problem + "' has no exact solution; convergence needs one");
        State y = disc.project_initial();
        const double dt = cfg.step_rule().dt(disc.mesh().min_size());
        const auto res = integrate(y, 0.0, cfg.T, dt, rhs_of(disc), [](long, double, const State&) {}, 1L << 40);
        if (res.aborted) {
            out.aborted = true;
            out.error = res.error;
            break;
        }
        ErrorRecord rec;
        rec.N = N;
        rec.h = disc.mesh().min_size();
        rec.q = cfg.q;
        rec.s = cfg.s;
        rec.flux = preset_name(disc.flux().preset);
        rec.l2_error_u = l2_error(disc, y, *disc.problem().exact, cfg.T);
        out.records.push_back(rec);
        fill_pairwise_rates(out.records);
        if (progress)
            progress(out.records.back());
    }
    if (out.records.size() >= 2 && cfg.problem.find("2d") != std::string::npos)
        out.regression = regression_rate(out.records, cfg.regression_count);
    return out;
}

EvolveOutput run_evolution(const RunConfig& cfg, const SnapshotSink& sink, int energy_stride)
{
    const Discretization disc = make_discretization(cfg, cfg.N.front());
    State y = disc.project_initial();
    EvolveOutput out;
    out.dt = cfg.step_rule().dt(disc.mesh().min_size());
    const long nsteps = step_count(cfg.T, out.dt);
    const long estride = energy_stride > 0 ? energy_stride : cfg.stride;
    // Snapshots at round(k nsteps / (snapshots + 1)), k = 0 .. snapshots + 1.
    auto snapshot_due = [&](long step) {
        const long parts = cfg.snapshots + 1;
        const long k = std::lround(static_cast<double>(step) * parts / nsteps);
        return std::lround(static_cast<double>(k) * nsteps / parts) == step;
    };
    const bool identity = cfg.identity_stride > 0 && !disc.problem().shifted() && !disc.problem().boundary.exact_data;

    double E0 = 0.0, Eprev = 0.0;
    long last_energy = -1;
    auto observe = [&](long step, double t, const State& s) {
        if (step % estride == 0 || step == nsteps) {
            EnergySample es = discrete_energy(disc, s);
            es.t = t;
            if (out.energy.empty()) {
                E0 = es.E;
                Eprev = es.E;
            }
            const double scale = std::max(std::abs(E0), std::numeric_limits<double>::min());
            out.max_rel_drift = std::max(out.max_rel_drift, std::abs(es.E - E0) / scale);
            if (last_energy >= 0)
                out.max_rel_increase = std::max(out.max_rel_increase, (es.E - Eprev) / scale);
            Eprev = es.E;
            last_energy = step;
            out.energy.push_back(es);
        }
        if (identity && step % cfg.identity_stride == 0) {
            State st = s;
            st.t = t;
            const State dy = disc.compute_rhs(st);
            const double a = energy_rate_chain(disc, st, dy);
            const double b = energy_rate_closed_form(disc, st);
            const double den = std::max({std::abs(a), std::abs(b), 1e-300});
            out.max_identity_mismatch = std::max(out.max_identity_mismatch, std::abs(a - b) / den);
            ++out.identity_checks;
        }
        if (sink && snapshot_due(step))
            sink(step, disc, s);
    };
    out.integ = integrate(y, 0.0, cfg.T, out.dt, rhs_of(disc), observe, 1);
    out.final_state = y;
    return out;
}

// ---------------------------------------------------------------- CSV

namespace {

std::string fmt(double x)
{
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
        out.push_back(cell);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

std::ifstream open_in(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw std::runtime_error("cannot open '" + path + "'");
    return f;
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream f(path);
    if (!f)
        throw std::runtime_error("cannot write '" + path + "'");
    return f;
}

void expect_header(std::istream& in, const std::string& header, const std::string& path)
{
    std::string line;
    if (!std::getline(in, line) || line != header)
        throw std::runtime_error("'" + path + "': expected header '" + header + "'");
}

double cell_double(const std::string& s, const std::string& path)
{
    if (s.empty())
        return std::numeric_limits<double>::quiet_NaN();
    try {
        return parse_double(s, path);
    } catch (const ConfigError&) {
        throw std::runtime_error("'" + path + "': bad number '" + s + "'");
    }
}

} // namespace

void write_errors_csv(const std::string& path, const std::vector<ErrorRecord>& records)
{
    auto f = open_out(path);
    f << "N,h,q,s,flux,l2_error_u,rate\n";
    for (const auto& r : records)
        f << r.N << ',' << fmt(r.h) << ',' << r.q << ',' << r.s << ',' << r.flux << ',' << fmt(r.l2_error_u) << ','
          << (r.rate ? fmt(*r.rate) : "") << '\n';
}

std::vector<ErrorRecord> read_errors_csv(const std::string& path)
{
    auto f = open_in(path);
    expect_header(f, "N,h,q,s,flux,l2_error_u,rate", path);
    std::vector<ErrorRecord> out;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty())
            continue;
        const auto c = split_csv(line);
        if (c.size() != 7)
            throw std::runtime_error("'" + path + "': expected 7 columns");
        ErrorRecord r;
        r.N = static_cast<int>(cell_double(c[0], path));
        r.h = cell_double(c[1], path);
        r.q = static_cast<int>(cell_double(c[2], path));
        r.s = static_cast<int>(cell_double(c[3], path));
        r.flux = c[4];
        r.l2_error_u = cell_double(c[5], path);
        if (!c[6].empty())
            r.rate = cell_double(c[6], path);
        out.push_back(r);
    }
    return out;
}

void write_energy_csv(const std::string& path, const std::vector<EnergySample>& samples)
{
    auto f = open_out(path);
    f << "t,E,kinetic,strain,potential,rel_drift\n";
    const double E0 = samples.empty() ? 0.0 : samples.front().E;
    for (const auto& s : samples) {
        const double drift = E0 != 0.0 ? (s.E - E0) / std::abs(E0) : 0.0;
        f << fmt(s.t) << ',' << fmt(s.E) << ',' << fmt(s.kinetic) << ',' << fmt(s.strain) << ',' << fmt(s.potential)
          << ',' << fmt(drift) << '\n';
    }
}

std::vector<EnergySample> read_energy_csv(const std::string& path)
{
    auto f = open_in(path);
    expect_header(f, "t,E,kinetic,strain,potential,rel_drift", path);
    std::vector<EnergySample> out;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty())
            continue;
        const auto c = split_csv(line);
        if (c.size() != 6)
            throw std::runtime_error("'" + path + "': expected 6 columns");
        out.push_back({cell_double(c[0], path), cell_double(c[1], path), cell_double(c[2], path),
                       cell_double(c[3], path), cell_double(c[4], path)});
    }
    return out;
}

std::vector<SnapshotRow> sample_snapshot(const Discretization& disc, const State& y, int M)
{
    std::vector<SnapshotRow> rows;
    const Mesh& mesh = disc.mesh();
    if (M <= 0) {
        for (int e = 0; e < disc.num_elements(); ++e) {
            const auto& x = disc.node_points(e);
            const Eigen::VectorXd u = disc.u_nodes(y, e);
            const Eigen::VectorXd v = disc.v_nodes(y, e);
            for (size_t k = 0; k < x.size(); ++k)
                rows.push_back({x[k][0], x[k][1], u[k], v[k]});
        }
        return rows;
    }
    const Rectangle& d = mesh.domain;
    auto locate = [](double x, double lo, double h, int n) {
        int i = static_cast<int>(std::floor((x - lo) / h));
        return std::clamp(i, 0, n - 1);
    };
    const int nx = mesh.dim == 1 ? mesh.num_cells() : static_cast<int>(std::lround((d.x1 - d.x0) / mesh.h[0]));
    const int ny = mesh.dim == 1 ? 1 : mesh.num_cells() / nx;
    const int My = mesh.dim == 1 ? 1 : M;
    for (int j = 0; j < My; ++j)
        for (int i = 0; i < M; ++i) {
            const double x = M == 1 ? 0.5 * (d.x0 + d.x1) : d.x0 + (d.x1 - d.x0) * i / (M - 1);
            const double yv = mesh.dim == 1 ? 0.0 : (My == 1 ? 0.5 * (d.y0 + d.y1) : d.y0 + (d.y1 - d.y0) * j / (My - 1));
            const int ix = locate(x, d.x0, mesh.h[0], nx);
            const int iy = mesh.dim == 1 ? 0 : locate(yv, d.y0, mesh.h[1], ny);
            const int e = iy * nx + ix;
            const Cell& c = mesh.cells[e];
            Vec2 xi{2.0 * (x - c.lo[0]) / (c.hi[0] - c.lo[0]) - 1.0, 0.0};
            if (mesh.dim == 2)
                xi[1] = 2.0 * (yv - c.lo[1]) / (c.hi[1] - c.lo[1]) - 1.0;
            rows.push_back({x, yv, disc.eval_u(y, e, xi), disc.eval_v(y, e, xi)});
        }
    return rows;
}

void write_snapshot_csv(const std::string& path, const std::vector<SnapshotRow>& rows, int dim)
{
    auto f = open_out(path);
    f << (dim == 1 ? "x,u,v\n" : "x,y,u,v\n");
    for (const auto& r : rows) {
        f << fmt(r.x) << ',';
        if (dim == 2)
            f << fmt(r.y) << ',';
        f << fmt(r.u) << ',' << fmt(r.v) << '\n';
    }
}

std::vector<SnapshotRow> read_snapshot_csv(const std::string& path, int& dim)
{
    auto f = open_in(path);
    std::string header;
    std::getline(f, header);
    if (header == "x,u,v")
        dim = 1;
    else if (header == "x,y,u,v")
        dim = 2;
    else
        throw std::runtime_error("'" + path + "': unrecognized snapshot header");
    std::vector<SnapshotRow> out;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty())
            continue;
        const auto c = split_csv(line);
        if (static_cast<int>(c.size()) != dim + 2)
            throw std::runtime_error("'" + path + "': wrong column count");
        SnapshotRow r;
        r.x = cell_double(c[0], path);
        if (dim == 2)
            r.y = cell_double(c[1], path);
        r.u = cell_double(c[dim], path);
        r.v = cell_double(c[dim + 1], path);
        out.push_back(r);
    }
    return out;
}

std::optional<double> level_crossing(const Discretization& disc, const State& y, double level, double from)
{
    if (disc.mesh().dim != 1)
        throw std::invalid_argument("level_crossing: 1D only");
    // Scan a fine reference grid per element, carrying the last sample across
    // faces so a jump through the level at an interface is also caught.
    constexpr int M = 64;
    bool have_prev = false;
    double pf = 0.0;
    for (int e = 0; e < disc.num_elements(); ++e) {
        const Cell& c = disc.mesh().cells[e];
        if (c.hi[0] < from)
            continue;
        auto f = [&](double xi) { return disc.eval_u(y, e, {xi, 0.0}) - level; };
        auto x_of = [&](double xi) { return c.map({xi, 0.0}, 1)[0]; };
        // Start at `from` when it falls inside this element.
        const double start = c.lo[0] < from ? -1.0 + 2.0 * (from - c.lo[0]) / (c.hi[0] - c.lo[0]) : -1.0;
        double xa = start, fa = f(xa);
        if (have_prev && start == -1.0 && pf * fa < 0.0)
            return x_of(xa);
        if (fa == 0.0)
            return x_of(xa);
        for (int k = 1; k <= M; ++k) {
            const double xb = -1.0 + 2.0 * k / M;
            if (xb <= xa)
                continue;
            const double fb = f(xb);
            if (fb == 0.0)
                return x_of(xb);
            if (fa * fb < 0.0) {
                double lo = xa, hi = xb, flo = fa;
                for (int it = 0; it < 60; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const double fm = f(mid);
                    if (flo * fm <= 0.0)
                        hi = mid;
                    else {
                        lo = mid;
                        flo = fm;
                    }
                }
                return x_of(0.5 * (lo + hi));
            }
            xa = xb;
            fa = fb;
        }
        have_prev = true;
        pf = fa;
    }
    return std::nullopt;
}

} // namespace egdg
