#ifndef EGDG_FLUX_HPP
#define EGDG_FLUX_HPP

#include "egdg/mesh.hpp"

#include <string>

namespace egdg {

enum class FluxPreset { Central, Alternating, Sommerfeld, AltSommerfeld, Custom };

/// Interior trace family
///   v*      = alpha v1 + (1 - alpha) v2 - tau [[grad u]]
///   (grad u)* = (1 - alpha) grad u1 + alpha grad u2 - beta [[v]]
/// with side 1 the owner of the reference normal n1.
struct FluxParams {
    double alpha = 0.5;
    double tau = 0.0;
    double beta = 0.0;
    FluxPreset preset = FluxPreset::Central;

    static FluxParams central();
    static FluxParams alternating(double alpha = 0.0);
    static FluxParams sommerfeld(double xi);
    static FluxParams alt_sommerfeld(double xi);
    /// central | alternating | sommerfeld | alt-sommerfeld
    static FluxParams from_name(const std::string& name, double xi);
};

std::string preset_name(FluxPreset preset);

/// Physical boundary condition gamma u_t + eta grad u . n = 0 and its trace
/// parameter a.
struct BoundaryParams {
    double gamma = 0.0;
    double eta = 1.0;
    double a = 0.0;

    /// Boundary dissipation coefficient (1 - a^2) gamma eta + a (gamma^2 - eta^2);
    /// the boundary never adds energy when it is non-negative.
    double b() const { return (1.0 - a * a) * gamma * eta + a * (gamma * gamma - eta * eta); }
    /// Throws unless gamma, eta >= 0 and gamma^2 + eta^2 = 1.
    void validate() const;

    static BoundaryParams dirichlet() { return {1.0, 0.0, 0.0}; }
    static BoundaryParams neumann() { return {0.0, 1.0, 0.0}; }
};

/// One-point traces on a face: minus is side 1 (owner of n1), plus is side 2.
struct FaceTrace {
    double v_minus = 0.0;
    double v_plus = 0.0;
    Vec2 grad_minus{};
    Vec2 grad_plus{};
};

struct FluxValue {
    double v_star = 0.0;
    Vec2 grad_star{};
};

/// [[v]] = v+ n+ + v- n- as a vector.
Vec2 jump_v(const FaceTrace& t, const Vec2& n1);
/// [[grad u]] = grad u+ . n+ + grad u- . n- as a scalar.
double jump_grad(const FaceTrace& t, const Vec2& n1);

FluxValue interior_flux(const FaceTrace& trace, const FluxParams& p, const Vec2& n1);

/// One-sided physical boundary trace; n is the outward normal. The result
/// satisfies gamma v* + eta (grad u)* . n = 0.
FluxValue boundary_flux(double v, const Vec2& grad, const BoundaryParams& bp, const Vec2& n);

/// Closed-form interface contribution -c^2 (beta |[[v]]|^2 + tau [[grad u]]^2).
double interface_energy_rate(const FaceTrace& trace, const FluxParams& p, const Vec2& n1, double c = 1.0);

/// Two-element boundary functional J assembled term by term from the traces
/// and a given flux value.
double interface_functional(const FaceTrace& trace, const FluxValue& flux, const Vec2& n1, double c = 1.0);

/// Closed-form boundary contribution
/// -c^2 (gamma eta (v*^2 + ((grad u)* . n)^2) + b rho^2).
double boundary_energy_rate(double v, const Vec2& grad, const BoundaryParams& bp, const Vec2& n, double c = 1.0);

inline double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }

} // namespace egdg

#endif
