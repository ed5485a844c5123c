#ifndef EGDG_PROBLEMS_HPP
#define EGDG_PROBLEMS_HPP

#include "egdg/flux.hpp"
#include "egdg/mesh.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace egdg {

/// Scalar nonlinearity f with its potential F (F' = -f, F(0) = 0) and the
/// divided difference used as the element weight:
///   quotient(b, d) = (f(b + d) - f(b)) / d,  finite at d = 0 (-> f'(b)).
/// g(u) = f(u) / u is quotient(0, u).
struct Nonlinearity {
    std::string name;
    std::function<double(double)> f;
    std::function<double(double)> potential;
    std::function<double(double)> df;
    std::function<double(double, double)> quotient;
    /// Bound on |d(quotient)/dd| over |u| <= 10, diagnostics only.
    double dg_bound = 0.0;

    double g(double u) const { return quotient(0.0, u); }
};

Nonlinearity sine_gordon_nonlinearity();
/// sign = +1 defocusing f = -4u^3; sign = -1 focusing f = +4u^3.
Nonlinearity cubic_nonlinearity(int sign);
Nonlinearity linear_nonlinearity();

struct FieldSample {
    double u = 0.0;
    double ut = 0.0;
    Vec2 grad{};
};

/// Closed-form space-time field with the derivatives a forcing needs.
struct AnalyticSolution {
    std::function<double(const Vec2&, double)> u;
    std::function<double(const Vec2&, double)> ut;
    std::function<double(const Vec2&, double)> utt;
    std::function<Vec2(const Vec2&, double)> grad;
    std::function<double(const Vec2&, double)> laplacian;
    /// Optional fused (u, u_t, u_tt, Lap u); cheaper when forcing is evaluated per node.
    std::function<std::array<double, 4>(const Vec2&, double)> jet;

    FieldSample sample(const Vec2& x, double t) const { return {u(x, t), ut(x, t), grad(x, t)}; }
};

/// Time-independent field u0(x) with gradient and Laplacian.
struct StaticField {
    std::function<double(const Vec2&)> value;
    std::function<Vec2(const Vec2&)> grad;
    std::function<double(const Vec2&)> laplacian;
};

StaticField at_time(const AnalyticSolution& sol, double t);

enum class BoundaryKind { Flux, Periodic };

/// Physical boundary treatment. With `exact_data` the flux is applied to the
/// deviation from the exact solution's traces, which imposes the exact
/// solution's (inhomogeneous) boundary values.
struct BoundarySpec {
    BoundaryKind kind = BoundaryKind::Flux;
    BoundaryParams params = BoundaryParams::neumann();
    bool exact_data = false;
};

/// u_tt + theta u_t = c^2 Lap u + f(u) + forcing.
///
/// When `shift` is set the unknown is u~ = u - u0(x): initial displacement is
/// zero, the element weight becomes quotient(u0, u~), and the velocity
/// equation picks up the static source c^2 Lap u0 (f(u0) cancels against
/// the shifted nonlinearity). All diagnostics reconstruct u = u0 + u~.
struct Problem {
    std::string name;
    int dim = 1;
    Rectangle domain{-20.0, 20.0, 0.0, 0.0};
    double c = 1.0;
    double theta = 0.0;
    Nonlinearity nonlin;
    std::function<double(const Vec2&, double)> forcing;
    std::optional<AnalyticSolution> exact;
    std::function<double(const Vec2&)> initial_u;
    std::function<double(const Vec2&)> initial_v;
    BoundarySpec boundary;
    /// u(x, 0) as a static field when available; the natural shift.
    std::optional<StaticField> initial_field;
    std::optional<StaticField> shift;

    bool has_forcing() const { return static_cast<bool>(forcing); }
    bool shifted() const { return shift.has_value(); }
};

FieldSample exact_breather(double x, double t);
/// sign = +1 kink (0 -> 2 pi), -1 antikink. Throws unless |mu| < 1.
FieldSample exact_kink(double x, double t, double mu, int sign, double x0 = 0.0);

AnalyticSolution breather_solution();
AnalyticSolution kink_solution(double mu, int sign, double x0 = 0.0);
AnalyticSolution periodic_wave_1d();          // e^{sin(x - t)}
AnalyticSolution standing_wave_2d();          // cos(2 pi x) cos(2 pi y) sin(2 pi t)

/// Sine-Gordon on (-20, 20) with the standing breather as initial data and
/// no-flux walls.
Problem sine_gordon(double theta);
/// Cubic wave on the unit square with -cos cos / cos cos initial data and
/// no-flux walls. sign = +1 defocusing, -1 focusing.
Problem cubic(int sign, double theta = 0.0);

/// Attach `exact` to `base`: forcing = u_tt + theta u_t - c^2 Lap u - f(u),
/// initial data and boundary data taken from `exact`.
Problem manufactured(Problem base, const AnalyticSolution& exact);

/// Rewrite `problem` in the variable u~ = u - u0. Requires u0.laplacian.
Problem shifted(Problem problem, const StaticField& u0);

struct ProblemOptions {
    std::optional<double> theta;
    double mu = 0.2;
};

/// sine-gordon | cubic-defocusing | cubic-focusing | breather-forced |
/// manufactured-1d | manufactured-2d | kink | antikink | kink-kink |
/// kink-antikink | focusing-2d
Problem make_problem(const std::string& name, const ProblemOptions& opts = {});
const std::vector<std::string>& problem_names();

} // namespace egdg

#endif
