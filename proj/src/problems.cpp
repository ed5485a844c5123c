#include "egdg/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace egdg {

namespace {

constexpr double pi = std::numbers::pi;

// sin(x) / x with a series near zero.
double sinc(double x)
{
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

double sech(double x) { return 1.0 / std::cosh(x); }

} // namespace

Nonlinearity sine_gordon_nonlinearity()
{
    Nonlinearity n;
    n.name = "sine-gordon";
    n.f = [](double u) { return -std::sin(u); };
    n.potential = [](double u) { return 1.0 - std::cos(u); };
    n.df = [](double u) { return -std::cos(u); };
    // sin(b + d) - sin(b) = 2 cos(b + d/2) sin(d/2), no cancellation.
    n.quotient = [](double b, double d) { return -std::cos(b + 0.5 * d) * sinc(0.5 * d); };
    n.dg_bound = 0.5;
    return n;
}

Nonlinearity cubic_nonlinearity(int sign)
{
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("cubic_nonlinearity: sign must be +1 or -1");
    const double s = static_cast<double>(sign);
    Nonlinearity n;
    n.name = sign > 0 ? "cubic-defocusing" : "cubic-focusing";
    n.f = [s](double u) { return -4.0 * s * u * u * u; };
    n.potential = [s](double u) { return s * u * u * u * u; };
    n.df = [s](double u) { return -12.0 * s * u * u; };
    n.quotient = [s](double b, double d) { return -4.0 * s * (3.0 * b * b + 3.0 * b * d + d * d); };
    n.dg_bound = 12.0 * 10.0 + 8.0 * 10.0;
    return n;
}

Nonlinearity linear_nonlinearity()
{
    Nonlinearity n;
    n.name = "linear";
    n.f = [](double) { return 0.0; };
    n.potential = [](double) { return 0.0; };
    n.df = [](double) { return 0.0; };
    n.quotient = [](double, double) { return 0.0; };
    n.dg_bound = 0.0;
    return n;
}

StaticField at_time(const AnalyticSolution& sol, double t)
{
    return {[sol, t](const Vec2& x) { return sol.u(x, t); }, [sol, t](const Vec2& x) { return sol.grad(x, t); },
            [sol, t](const Vec2& x) { return sol.laplacian(x, t); }};
}

// ---------------------------------------------------------------------------
// Exact solutions

namespace {

struct BreatherParts {
    double z, zt, ztt, zx, zxx;
};

// u = 4 atan(z), z = sqrt(0.75) cos(t/2) / (0.5 cosh(sqrt(0.75) x)).
BreatherParts breather_parts(double x, double t)
{
    const double k = std::sqrt(0.75);
    const double amp = k / 0.5;
    const double sh = sech(k * x);
    const double th = std::tanh(k * x);
    BreatherParts p{};
    p.z = amp * std::cos(0.5 * t) * sh;
    p.zt = -0.5 * amp * std::sin(0.5 * t) * sh;
    p.ztt = -0.25 * p.z;
    p.zx = -k * p.z * th;
    p.zxx = k * k * p.z * (th * th - sh * sh);
    return p;
}

} // namespace

AnalyticSolution breather_solution()
{
    AnalyticSolution s;
    s.u = [](const Vec2& x, double t) { return 4.0 * std::atan(breather_parts(x[0], t).z); };
    s.ut = [](const Vec2& x, double t) {
        const auto p = breather_parts(x[0], t);
        return 4.0 * p.zt / (1.0 + p.z * p.z);
    };
    s.utt = [](const Vec2& x, double t) {
        const auto p = breather_parts(x[0], t);
        const double d = 1.0 + p.z * p.z;
        return 4.0 * p.ztt / d - 8.0 * p.z * p.zt * p.zt / (d * d);
    };
    s.grad = [](const Vec2& x, double t) {
        const auto p = breather_parts(x[0], t);
        return Vec2{4.0 * p.zx / (1.0 + p.z * p.z), 0.0};
    };
    s.laplacian = [](const Vec2& x, double t) {
        const auto p = breather_parts(x[0], t);
        const double d = 1.0 + p.z * p.z;
        return 4.0 * p.zxx / d - 8.0 * p.z * p.zx * p.zx / (d * d);
    };
    return s;
}

FieldSample exact_breather(double x, double t) { return breather_solution().sample({x, 0.0}, t); }

AnalyticSolution kink_solution(double mu, int sign, double x0)
{
    if (!(std::abs(mu) < 1.0))
        throw std::invalid_argument("kink: |mu| must be < 1");
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("kink: sign must be +1 (kink) or -1 (antikink)");
    const double gam = std::sqrt(1.0 - mu * mu);
    const double s = static_cast<double>(sign);
    auto zeta = [=](double x, double t) { return s * (x - x0 - mu * t) / gam; };

    AnalyticSolution k;
    k.u = [=](const Vec2& x, double t) { return 4.0 * std::atan(std::exp(zeta(x[0], t))); };
    k.ut = [=](const Vec2& x, double t) { return -2.0 * s * mu / gam * sech(zeta(x[0], t)); };
    k.utt = [=](const Vec2& x, double t) {
        const double z = zeta(x[0], t);
        return -2.0 * mu * mu / (gam * gam) * sech(z) * std::tanh(z);
    };
    k.grad = [=](const Vec2& x, double t) { return Vec2{2.0 * s / gam * sech(zeta(x[0], t)), 0.0}; };
    k.laplacian = [=](const Vec2& x, double t) {
        const double z = zeta(x[0], t);
        return -2.0 / (gam * gam) * sech(z) * std::tanh(z);
    };
    return k;
}

FieldSample exact_kink(double x, double t, double mu, int sign, double x0)
{
    return kink_solution(mu, sign, x0).sample({x, 0.0}, t);
}

AnalyticSolution periodic_wave_1d()
{
    AnalyticSolution s;
    s.u = [](const Vec2& x, double t) { return std::exp(std::sin(x[0] - t)); };
    s.ut = [](const Vec2& x, double t) {
        const double w = x[0] - t;
        return -std::cos(w) * std::exp(std::sin(w));
    };
    s.utt = [](const Vec2& x, double t) {
        const double w = x[0] - t;
        const double c = std::cos(w);
        return (c * c - std::sin(w)) * std::exp(std::sin(w));
    };
    s.grad = [](const Vec2& x, double t) {
        const double w = x[0] - t;
        return Vec2{std::cos(w) * std::exp(std::sin(w)), 0.0};
    };
    s.laplacian = s.utt;
    s.jet = [](const Vec2& x, double t) {
        const double w = x[0] - t;
        const double sn = std::sin(w), cs = std::cos(w), e = std::exp(sn);
        const double utt = (cs * cs - sn) * e;
        return std::array<double, 4>{e, -cs * e, utt, utt};
    };
    return s;
}

AnalyticSolution standing_wave_2d()
{
    const double k = 2.0 * pi;
    AnalyticSolution s;
    s.u = [k](const Vec2& x, double t) { return std::cos(k * x[0]) * std::cos(k * x[1]) * std::sin(k * t); };
    s.ut = [k](const Vec2& x, double t) { return k * std::cos(k * x[0]) * std::cos(k * x[1]) * std::cos(k * t); };
    s.utt = [k](const Vec2& x, double t) {
        return -k * k * std::cos(k * x[0]) * std::cos(k * x[1]) * std::sin(k * t);
    };
    s.grad = [k](const Vec2& x, double t) {
        const double st = std::sin(k * t);
        return Vec2{-k * std::sin(k * x[0]) * std::cos(k * x[1]) * st, -k * std::cos(k * x[0]) * std::sin(k * x[1]) * st};
    };
    s.laplacian = [k](const Vec2& x, double t) {
        return -2.0 * k * k * std::cos(k * x[0]) * std::cos(k * x[1]) * std::sin(k * t);
    };
    s.jet = [k](const Vec2& x, double t) {
        const double xy = std::cos(k * x[0]) * std::cos(k * x[1]);
        const double st = std::sin(k * t), ct = std::cos(k * t);
        return std::array<double, 4>{xy * st, k * xy * ct, -k * k * xy * st, -2.0 * k * k * xy * st};
    };
    return s;
}

// ---------------------------------------------------------------------------
// Problems

Problem sine_gordon(double theta)
{
    if (theta < 0.0)
        throw std::invalid_argument("sine_gordon: theta must be non-negative");
    Problem p;
    p.name = "sine-gordon";
    p.dim = 1;
    p.domain = {-20.0, 20.0, 0.0, 0.0};
    p.c = 1.0;
    p.theta = theta;
    p.nonlin = sine_gordon_nonlinearity();
    const AnalyticSolution br = breather_solution();
    p.initial_u = [br](const Vec2& x) { return br.u(x, 0.0); };
    p.initial_v = [br](const Vec2& x) { return br.ut(x, 0.0); };
    p.initial_field = at_time(br, 0.0);
    if (theta == 0.0)
        p.exact = br;
    p.boundary = {BoundaryKind::Flux, BoundaryParams::neumann(), false};
    return p;
}

Problem cubic(int sign, double theta)
{
    if (theta < 0.0)
        throw std::invalid_argument("cubic: theta must be non-negative");
    Problem p;
    p.nonlin = cubic_nonlinearity(sign);
    p.name = p.nonlin.name;
    p.dim = 2;
    p.domain = {0.0, 1.0, 0.0, 1.0};
    p.c = 1.0;
    p.theta = theta;
    const double k = 2.0 * pi;
    p.initial_u = [k](const Vec2& x) { return -std::cos(k * x[0]) * std::cos(k * x[1]); };
    p.initial_v = [k](const Vec2& x) { return std::cos(k * x[0]) * std::cos(k * x[1]); };
    p.initial_field = StaticField{
        p.initial_u,
        [k](const Vec2& x) { return Vec2{k * std::sin(k * x[0]) * std::cos(k * x[1]), k * std::cos(k * x[0]) * std::sin(k * x[1])}; },
        [k](const Vec2& x) { return 2.0 * k * k * std::cos(k * x[0]) * std::cos(k * x[1]); }};
    p.boundary = {BoundaryKind::Flux, BoundaryParams::neumann(), false};
    return p;
}

Problem manufactured(Problem base, const AnalyticSolution& exact)
{
    const double c2 = base.c * base.c;
    const double theta = base.theta;
    const auto f = base.nonlin.f;
    if (exact.jet) {
        base.forcing = [=](const Vec2& x, double t) {
            const auto [u, ut, utt, lap] = exact.jet(x, t);
            return utt + theta * ut - c2 * lap - f(u);
        };
    } else base.forcing = [=](const Vec2& x, double t) {
        const double u = exact.u(x, t);
        return exact.utt(x, t) + theta * exact.ut(x, t) - c2 * exact.laplacian(x, t) - f(u);
    };
    base.exact = exact;
    base.initial_u = [exact](const Vec2& x) { return exact.u(x, 0.0); };
    base.initial_v = [exact](const Vec2& x) { return exact.ut(x, 0.0); };
    base.initial_field = at_time(exact, 0.0);
    if (base.boundary.kind == BoundaryKind::Flux)
        base.boundary.exact_data = true;
    return base;
}

Problem shifted(Problem problem, const StaticField& u0)
{
    if (!u0.value || !u0.laplacian || !u0.grad)
        throw std::invalid_argument("shifted: static field needs value, gradient and Laplacian");
    if (problem.shift)
        throw std::invalid_argument("shifted: problem is already shifted");
    // u0 must reproduce the initial displacement.
    const Rectangle& d = problem.domain;
    for (int i = 0; i <= 8; ++i) {
        const double s = i / 8.0;
        const Vec2 x{d.x0 + s * (d.x1 - d.x0), problem.dim == 2 ? d.y0 + (1.0 - s) * (d.y1 - d.y0) : 0.0};
        const double g1 = problem.initial_u(x);
        if (std::abs(u0.value(x) - g1) > 1e-12 * std::max(1.0, std::abs(g1)))
            throw std::invalid_argument("shifted: u0 does not match the initial displacement");
    }
    problem.shift = u0;
    problem.initial_u = [](const Vec2&) { return 0.0; };
    problem.name += "+shift";
    return problem;
}

const std::vector<std::string>& problem_names()
{
    static const std::vector<std::string> names{
        "sine-gordon", "cubic-defocusing", "cubic-focusing", "breather-forced", "manufactured-1d", "manufactured-2d",
        "kink", "antikink", "kink-kink", "kink-antikink", "focusing-2d"};
    return names;
}

namespace {

Problem superposed_kinks(int sign_right, double mu, const std::string& name)
{
    Problem p = sine_gordon(0.0);
    p.name = name;
    p.exact.reset();
    p.initial_field.reset();
    const AnalyticSolution left = kink_solution(mu, 1, -10.0);
    const AnalyticSolution right = kink_solution(-mu, sign_right, 10.0);
    p.initial_u = [=](const Vec2& x) { return left.u(x, 0.0) + right.u(x, 0.0); };
    p.initial_v = [=](const Vec2& x) { return left.ut(x, 0.0) + right.ut(x, 0.0); };
    return p;
}

} // namespace

Problem make_problem(const std::string& name, const ProblemOptions& opts)
{
    auto theta_or = [&](double dflt) { return opts.theta.value_or(dflt); };

    if (name == "sine-gordon")
        return sine_gordon(theta_or(0.0));
    if (name == "cubic-defocusing")
        return cubic(+1, theta_or(0.0));
    if (name == "cubic-focusing")
        return cubic(-1, theta_or(0.0));
    if (name == "focusing-2d") {
        Problem p = cubic(-1, theta_or(0.0));
        p.name = name;
        p.boundary.kind = BoundaryKind::Periodic;
        return p;
    }
    if (name == "breather-forced") {
        Problem p = manufactured(sine_gordon(theta_or(1.0)), breather_solution());
        p.name = name;
        p.boundary.params = BoundaryParams::dirichlet();
        return p;
    }
    if (name == "manufactured-1d") {
        Problem p = manufactured(sine_gordon(theta_or(1.0)), periodic_wave_1d());
        p.name = name;
        p.boundary.params = BoundaryParams::dirichlet();
        return p;
    }
    if (name == "manufactured-2d") {
        Problem p = manufactured(cubic(+1, theta_or(0.0)), standing_wave_2d());
        p.name = name;
        return p;
    }
    if (name == "kink" || name == "antikink") {
        const int sign = name == "kink" ? 1 : -1;
        Problem p = sine_gordon(0.0);
        p.name = name;
        p.theta = theta_or(0.0);
        const AnalyticSolution k = kink_solution(opts.mu, sign);
        p.initial_u = [k](const Vec2& x) { return k.u(x, 0.0); };
        p.initial_v = [k](const Vec2& x) { return k.ut(x, 0.0); };
        p.initial_field = at_time(k, 0.0);
        if (p.theta == 0.0)
            p.exact = k;
        else
            p.exact.reset();
        return p;
    }
    if (name == "kink-kink" || name == "kink-antikink") {
        Problem p = superposed_kinks(name == "kink-kink" ? 1 : -1, opts.mu, name);
        p.theta = theta_or(0.0);
        return p;
    }
    throw std::invalid_argument("unknown problem '" + name + "'");
}

} // namespace egdg
