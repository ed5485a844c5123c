#include "egdg/experiments.hpp"
#include "egdg/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace egdg {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

const FluxPreset kPresets[] = {FluxPreset::Central, FluxPreset::Alternating, FluxPreset::Sommerfeld,
                               FluxPreset::AltSommerfeld};

FluxParams preset_params(FluxPreset p, double xi)
{
    switch (p) {
    case FluxPreset::Central: return FluxParams::central();
    case FluxPreset::Alternating: return FluxParams::alternating();
    case FluxPreset::Sommerfeld: return FluxParams::sommerfeld(xi);
    case FluxPreset::AltSommerfeld: return FluxParams::alt_sommerfeld(xi);
    default: return FluxParams::central();
    }
}

BoundaryParams random_boundary(Rng& rng)
{
    const double phi = uniform(rng, 0.0, 0.5 * std::numbers::pi);
    return {std::cos(phi), std::sin(phi), uniform(rng, 0.0, 0.5)};
}

State random_state(const Discretization& d, Rng& rng, double amp)
{
    State y = d.zero_state();
    for (Eigen::Index i = 0; i < y.u.size(); ++i)
        y.u[i] = uniform(rng, -amp, amp);
    for (Eigen::Index i = 0; i < y.v.size(); ++i)
        y.v[i] = uniform(rng, -amp, amp);
    return y;
}

double rel_diff(const State& a, const State& b)
{
    const double scale = std::max({b.u.lpNorm<Eigen::Infinity>(), b.v.lpNorm<Eigen::Infinity>(), 1e-300});
    return std::max((a.u - b.u).lpNorm<Eigen::Infinity>(), (a.v - b.v).lpNorm<Eigen::Infinity>()) / scale;
}

Mesh small_mesh(const Problem& p)
{
    const bool periodic = p.boundary.kind == BoundaryKind::Periodic;
    return p.dim == 1 ? build_interval_mesh(p.domain.x0, p.domain.x1, 3, periodic)
                      : build_cartesian_mesh(p.domain, 2, 2, periodic);
}

SuiteResult finish(SuiteResult r)
{
    r.passed = std::isfinite(r.max_error) && r.max_error <= r.tolerance;
    return r;
}

} // namespace

SuiteResult verify_oracle(unsigned seed)
{
    Rng rng(seed);
    SuiteResult r{"oracle-equivalence", false, 0.0, 1e-11, ""};
    int checks = 0;
    const char* names[] = {"sine-gordon", "cubic-focusing", "breather-forced", "manufactured-1d", "manufactured-2d",
                           "cubic-defocusing", "focusing-2d"};
    for (const char* name : names) {
        for (FluxPreset fp : kPresets) {
            Problem p = make_problem(name);
            if (p.boundary.kind == BoundaryKind::Flux && !p.boundary.exact_data)
                p.boundary.params = random_boundary(rng);
            if (p.dim == 1 && p.initial_field && p.has_forcing())
                p = shifted(p, *p.initial_field);
            const int q = p.dim == 1 ? 4 : 2;
            const int s = p.dim == 1 ? 3 : 2;
            const Discretization d(p, small_mesh(p), q, s, preset_params(fp, uniform(rng, 0.5, 2.0)));
            for (int k = 0; k < 3; ++k) {
                State y = random_state(d, rng, 0.5);
                y.t = uniform(rng, 0.0, 1.0);
                r.max_error = std::max(r.max_error, rel_diff(d.compute_rhs(y), reference_rhs(d, y)));
                ++checks;
            }
        }
    }
    // Mean constraint active everywhere: u = pi for sine-Gordon, u = 0 for the cubic.
    for (FluxPreset fp : kPresets) {
        const Problem p = make_problem("sine-gordon");
        const Discretization d(p, small_mesh(p), 4, 4, preset_params(fp, 1.0));
        State y = d.zero_state();
        for (int e = 0; e < d.num_elements(); ++e)
            y.u[e * d.nu()] = std::numbers::pi * std::sqrt(2.0);
        y.v = random_state(d, rng, 0.5).v;
        const State a = d.compute_rhs(y);
        if (d.last_constraint_count() != d.num_elements()) {
            r.detail = "u = pi did not activate the mean constraint";
            r.max_error = INFINITY;
        }
        r.max_error = std::max(r.max_error, rel_diff(a, reference_rhs(d, y)));
        ++checks;

        const Problem c = make_problem("cubic-defocusing");
        const Discretization d2(c, small_mesh(c), 2, 2, preset_params(fp, 1.0));
        State z = d2.zero_state();
        z.v = random_state(d2, rng, 0.5).v;
        r.max_error = std::max(r.max_error, rel_diff(d2.compute_rhs(z), reference_rhs(d2, z)));
        ++checks;
    }
    if (r.detail.empty())
        r.detail = std::to_string(checks) + " states";
    return finish(r);
}

SuiteResult verify_energy_identity(unsigned seed, int cases)
{
    Rng rng(seed);
    SuiteResult r{"energy-identity", false, 0.0, 1e-10, ""};
    for (int dim = 1; dim <= 2; ++dim) {
        for (FluxPreset fp : kPresets) {
            for (int k = 0; k < cases; ++k) {
                const double theta = uniform(rng, 0.0, 1.0);
                Problem p = dim == 1 ? sine_gordon(theta) : cubic(k % 2 == 0 ? 1 : -1, theta);
                p.boundary.params = random_boundary(rng);
                const Mesh m = dim == 1 ? build_interval_mesh(p.domain.x0, p.domain.x1, 4)
                                        : build_cartesian_mesh(p.domain, 2, 2);
                const int q = dim == 1 ? 4 : 2;
                DiscretizationOptions opts;
                opts.mean_constraint = MeanConstraint::Threshold;
                const Discretization d(p, m, q, q - (k % 2), preset_params(fp, uniform(rng, 0.5, 2.0)), opts);
                const State y = random_state(d, rng, 0.5);
                const double a = energy_rate_chain(d, y, d.compute_rhs(y));
                const double b = energy_rate_closed_form(d, y);
                r.max_error = std::max(r.max_error, std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}));
            }
        }
    }
    r.detail = std::to_string(8 * cases) + " states, 4 presets, 1D and 2D";
    return finish(r);
}

SuiteResult verify_flux(unsigned seed, int cases)
{
    Rng rng(seed);
    SuiteResult r{"flux-consistency", false, 0.0, 1e-13, ""};
    auto track = [&](double err, double scale) { r.max_error = std::max(r.max_error, err / std::max(scale, 1.0)); };
    for (int k = 0; k < cases; ++k) {
        const double ang = uniform(rng, 0.0, 2.0 * std::numbers::pi);
        const Vec2 n = k % 2 == 0 ? Vec2{1.0, 0.0} : Vec2{std::cos(ang), std::sin(ang)};
        FaceTrace t{uniform(rng, -1, 1), uniform(rng, -1, 1), {uniform(rng, -1, 1), uniform(rng, -1, 1)},
                    {uniform(rng, -1, 1), uniform(rng, -1, 1)}};
        const double c = uniform(rng, 0.5, 2.0);
        const double scale = c * c * 4.0;
        for (FluxPreset fp : kPresets) {
            const FluxParams p = preset_params(fp, uniform(rng, 0.5, 2.0));
            // Dissipation identity; J = 0 when tau = beta = 0.
            const double J = interface_functional(t, interior_flux(t, p, n), n, c);
            track(std::abs(J - interface_energy_rate(t, p, n, c)), scale);
            if (p.tau == 0.0 && p.beta == 0.0)
                track(std::abs(J), scale);
            // Consistency: equal traces pass through.
            FaceTrace e{t.v_minus, t.v_minus, t.grad_minus, t.grad_minus};
            const FluxValue f = interior_flux(e, p, n);
            track(std::abs(f.v_star - t.v_minus), 1.0);
            track(std::max(std::abs(f.grad_star[0] - t.grad_minus[0]), std::abs(f.grad_star[1] - t.grad_minus[1])), 1.0);
        }
        // Boundary trace satisfies the condition and the dissipation identity.
        const BoundaryParams bp = random_boundary(rng);
        const FluxValue f = boundary_flux(t.v_minus, t.grad_minus, bp, n);
        track(std::abs(bp.gamma * f.v_star + bp.eta * dot(f.grad_star, n)), 1.0);
        const double gn = dot(t.grad_minus, n);
        const double work = c * c * (gn * (f.v_star - t.v_minus) + t.v_minus * dot(f.grad_star, n));
        track(std::abs(work - boundary_energy_rate(t.v_minus, t.grad_minus, bp, n, c)), scale);
    }
    r.detail = std::to_string(cases) + " random traces per check";
    return finish(r);
}

SuiteResult verify_rk4_order()
{
    // y' = y cos t, y(0) = 1 -> y = exp(sin t).
    auto f = [](double t, double y) { return y * std::cos(t); };
    auto err = [&](int n) {
        double y = 1.0, t = 0.0;
        const double dt = 2.0 / n;
        for (int i = 0; i < n; ++i) {
            y = rk4_step(y, t, dt, f);
            t += dt;
        }
        return std::abs(y - std::exp(std::sin(2.0)));
    };
    const double rate = std::log2(err(40) / err(80));
    SuiteResult r{"rk4-order", false, std::abs(rate - 4.0), 0.2, "observed order " + std::to_string(rate)};
    return finish(r);
}

SuiteResult verify_projection_order()
{
    Problem p = make_problem("manufactured-1d");
    const int q = 3;
    auto err = [&](int N) {
        const Discretization d(p, build_interval_mesh(p.domain.x0, p.domain.x1, N), q, q, FluxParams::central());
        return l2_error(d, d.project_initial(), *p.exact, 0.0);
    };
    const double rate = std::log2(err(20) / err(40));
    SuiteResult r{"projection-order", false, std::abs(rate - (q + 1)), 0.3, "observed order " + std::to_string(rate)};
    return finish(r);
}

std::vector<SuiteResult> run_verify_suites(unsigned seed, int cases)
{
    return {verify_oracle(seed), verify_energy_identity(seed + 1, cases), verify_flux(seed + 2, std::max(cases, 10000)),
            verify_rk4_order(), verify_projection_order()};
}

} // namespace egdg
