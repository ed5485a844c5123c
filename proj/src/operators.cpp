#include "egdg/operators.hpp"

#include <stdexcept>

namespace egdg {

Vec2 derivative_scale(const Cell& cell, int dim)
{
    const Vec2 h = cell.size();
    return {2.0 / h[0], dim == 2 ? 2.0 / h[1] : 0.0};
}

std::vector<double> physical_weights(const Basis& basis, const Cell& cell)
{
    const int dim = basis.spatial_dim();
    const double jac = cell.measure(dim) / (dim == 1 ? 2.0 : 4.0);
    std::vector<double> w(basis.node_weights());
    for (double& x : w)
        x *= jac;
    return w;
}

namespace {

// 1D reference stiffness int_{-1}^{1} phi_i' phi_j' by the basis' own rule.
Eigen::MatrixXd reference_stiffness_1d(int q, const QuadRule& quad)
{
    const Basis b1(q, quad, 1);
    const Eigen::Map<const Eigen::VectorXd> w(b1.node_weights().data(), b1.num_nodes());
    return b1.derivatives(0).transpose() * w.asDiagonal() * b1.derivatives(0);
}

} // namespace

Eigen::MatrixXd stiffness(const Basis& basis, const Cell& cell)
{
    const Vec2 h = cell.size();
    if (basis.spatial_dim() == 1) {
        return (2.0 / h[0]) * reference_stiffness_1d(basis.degree(), basis.quad());
    }
    // S = (hy/hx) K (x) I + (hx/hy) I (x) K with lexicographic (kx, ky) modes.
    const int m = basis.degree() + 1;
    const Eigen::MatrixXd k = reference_stiffness_1d(basis.degree(), basis.quad());
    const double sx = h[1] / h[0];
    const double sy = h[0] / h[1];
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(m * m, m * m);
    for (int ix = 0; ix < m; ++ix)
        for (int iy = 0; iy < m; ++iy)
            for (int jx = 0; jx < m; ++jx)
                for (int jy = 0; jy < m; ++jy) {
                    double v = 0.0;
                    if (iy == jy)
                        v += sx * k(ix, jx);
                    if (ix == jx)
                        v += sy * k(iy, jy);
                    s(ix * m + iy, jx * m + jy) = v;
                }
    return s;
}

Eigen::MatrixXd stiffness_by_quadrature(const Basis& basis, const Cell& cell)
{
    const int dim = basis.spatial_dim();
    const auto w = physical_weights(basis, cell);
    const Eigen::Map<const Eigen::VectorXd> wv(w.data(), static_cast<Eigen::Index>(w.size()));
    const Vec2 scale = derivative_scale(cell, dim);
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(basis.size(), basis.size());
    for (int a = 0; a < dim; ++a) {
        const Eigen::MatrixXd d = scale[a] * basis.derivatives(a);
        s += d.transpose() * wv.asDiagonal() * d;
    }
    return s;
}

Eigen::MatrixXd weighted_mass(const Basis& basis, const Cell& cell, std::span<const double> w)
{
    if (static_cast<int>(w.size()) != basis.num_nodes())
        throw std::invalid_argument("weighted_mass: expected one weight per quadrature node");
    const auto pw = physical_weights(basis, cell);
    Eigen::VectorXd d(basis.num_nodes());
    for (int k = 0; k < basis.num_nodes(); ++k)
        d[k] = pw[k] * w[k];
    const Eigen::MatrixXd& v = basis.values();
    return v.transpose() * d.asDiagonal() * v;
}

FaceLift face_lift(const Basis& basis, const Cell& cell, int local_face)
{
    const int dim = basis.spatial_dim();
    if (local_face < 0 || local_face >= basis.num_faces())
        throw std::invalid_argument("face_lift: invalid local face id");

    const int axis = local_face / 2;
    const double sign = (local_face % 2 == 0) ? -1.0 : 1.0;
    const Vec2 scale = derivative_scale(cell, dim);
    const Vec2 h = cell.size();

    FaceLift lift;
    lift.trace = basis.face_values(local_face);
    lift.normal_derivative = (sign * scale[axis]) * basis.face_derivatives(local_face, axis);
    lift.normal[axis] = sign;

    // Face Jacobian: 1 for a point face, half the tangential length in 2D.
    const double fjac = dim == 1 ? 1.0 : 0.5 * h[1 - axis];
    for (int p = 0; p < basis.face_nodes(); ++p) {
        lift.weights.push_back(fjac * basis.face_weights()[p]);
        lift.points.push_back(cell.map(basis.face_point(local_face, p), dim));
    }
    return lift;
}

} // namespace egdg
