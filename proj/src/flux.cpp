#include "egdg/flux.hpp"

#include <cmath>
#include <stdexcept>

namespace egdg {

FluxParams FluxParams::central() { return {0.5, 0.0, 0.0, FluxPreset::Central}; }

FluxParams FluxParams::alternating(double alpha)
{
    if (alpha < 0.0 || alpha > 1.0)
        throw std::invalid_argument("alternating flux: alpha must lie in [0, 1]");
    return {alpha, 0.0, 0.0, FluxPreset::Alternating};
}

FluxParams FluxParams::sommerfeld(double xi)
{
    if (!(xi > 0.0))
        throw std::invalid_argument("sommerfeld flux: xi must be positive");
    return {0.5, 0.5 * xi, 0.5 / xi, FluxPreset::Sommerfeld};
}

FluxParams FluxParams::alt_sommerfeld(double xi)
{
    if (!(xi > 0.0))
        throw std::invalid_argument("alt-sommerfeld flux: xi must be positive");
    return {0.0, 0.5 * xi, 0.5 / xi, FluxPreset::AltSommerfeld};
}

FluxParams FluxParams::from_name(const std::string& name, double xi)
{
    if (name == "central")
        return central();
    if (name == "alternating")
        return alternating(0.0);
    if (name == "sommerfeld")
        return sommerfeld(xi);
    if (name == "alt-sommerfeld")
        return alt_sommerfeld(xi);
    throw std::invalid_argument("unknown flux preset '" + name + "'");
}

std::string preset_name(FluxPreset preset)
{
    switch (preset) {
    case FluxPreset::Central: return "central";
    case FluxPreset::Alternating: return "alternating";
    case FluxPreset::Sommerfeld: return "sommerfeld";
    case FluxPreset::AltSommerfeld: return "alt-sommerfeld";
    case FluxPreset::Custom: return "custom";
    }
    return "custom";
}

void BoundaryParams::validate() const
{
    if (gamma < 0.0 || eta < 0.0)
        throw std::invalid_argument("boundary parameters: gamma and eta must be non-negative");
    if (std::abs(gamma * gamma + eta * eta - 1.0) > 1e-12)
        throw std::invalid_argument("boundary parameters: gamma^2 + eta^2 must equal 1");
}

Vec2 jump_v(const FaceTrace& t, const Vec2& n1)
{
    const double d = t.v_minus - t.v_plus;
    return {d * n1[0], d * n1[1]};
}

double jump_grad(const FaceTrace& t, const Vec2& n1)
{
    return dot(t.grad_minus, n1) - dot(t.grad_plus, n1);
}

FluxValue interior_flux(const FaceTrace& t, const FluxParams& p, const Vec2& n1)
{
    const Vec2 jv = jump_v(t, n1);
    const double jg = jump_grad(t, n1);
    FluxValue f;
    f.v_star = p.alpha * t.v_minus + (1.0 - p.alpha) * t.v_plus - p.tau * jg;
    for (int a = 0; a < 2; ++a)
        f.grad_star[a] = (1.0 - p.alpha) * t.grad_minus[a] + p.alpha * t.grad_plus[a] - p.beta * jv[a];
    return f;
}

FluxValue boundary_flux(double v, const Vec2& grad, const BoundaryParams& bp, const Vec2& n)
{
    const double rho = bp.gamma * v + bp.eta * dot(grad, n);
    FluxValue f;
    f.v_star = v - (bp.gamma - bp.a * bp.eta) * rho;
    const double s = (bp.eta + bp.a * bp.gamma) * rho;
    f.grad_star = {grad[0] - s * n[0], grad[1] - s * n[1]};
    return f;
}

double interface_energy_rate(const FaceTrace& trace, const FluxParams& p, const Vec2& n1, double c)
{
    const Vec2 jv = jump_v(trace, n1);
    const double jg = jump_grad(trace, n1);
    return -c * c * (p.beta * dot(jv, jv) + p.tau * jg * jg);
}

double interface_functional(const FaceTrace& t, const FluxValue& f, const Vec2& n1, double c)
{
    const Vec2 n2{-n1[0], -n1[1]};
    const double gs1 = dot(f.grad_star, n1);
    const double gs2 = dot(f.grad_star, n2);
    return c * c *
           (dot(t.grad_minus, n1) * (f.v_star - t.v_minus) + t.v_minus * gs1 +
            dot(t.grad_plus, n2) * (f.v_star - t.v_plus) + t.v_plus * gs2);
}

double boundary_energy_rate(double v, const Vec2& grad, const BoundaryParams& bp, const Vec2& n, double c)
{
    const double rho = bp.gamma * v + bp.eta * dot(grad, n);
    const FluxValue f = boundary_flux(v, grad, bp, n);
    const double gn = dot(f.grad_star, n);
    return -c * c * (bp.gamma * bp.eta * (f.v_star * f.v_star + gn * gn) + bp.b() * rho * rho);
}

} // namespace egdg
