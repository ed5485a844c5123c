#ifndef EGDG_OPERATORS_HPP
#define EGDG_OPERATORS_HPP

#include "egdg/basis.hpp"
#include "egdg/mesh.hpp"

#include <span>
#include <vector>

namespace egdg {

/// S_ij = int_cell grad(phi_i) . grad(phi_j). 2D is assembled as the tensor
/// sum of quadrature-built 1D factors.
Eigen::MatrixXd stiffness(const Basis& basis, const Cell& cell);

/// Same integral evaluated directly with the volume rule (any dimension).
Eigen::MatrixXd stiffness_by_quadrature(const Basis& basis, const Cell& cell);

/// Physical quadrature weights omega_k * |J| at the volume nodes.
std::vector<double> physical_weights(const Basis& basis, const Cell& cell);

/// M_ij = sum_k omega_k^phys w_k phi_i(x_k) phi_j(x_k).
Eigen::MatrixXd weighted_mass(const Basis& basis, const Cell& cell, std::span<const double> w);

/// Tables for integrals over one local face: with samples g_p at the face
/// points, trace^T (weights .* g) gives int_face phi_i g dS and
/// normal_derivative^T (weights .* g) gives int_face (grad phi_i . n) g dS.
struct FaceLift {
    Eigen::MatrixXd trace;
    Eigen::MatrixXd normal_derivative;
    std::vector<double> weights;
    std::vector<Vec2> points;
    Vec2 normal{};
};

FaceLift face_lift(const Basis& basis, const Cell& cell, int local_face);

/// Reference-to-physical derivative scale 2 / h per axis.
Vec2 derivative_scale(const Cell& cell, int dim);

} // namespace egdg

#endif
