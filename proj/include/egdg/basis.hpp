#ifndef EGDG_BASIS_HPP
#define EGDG_BASIS_HPP

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <vector>

namespace egdg {

/// Gauss-Legendre rule on [-1, 1], nodes ascending.
struct QuadRule {
    int n = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

QuadRule gauss_rule(int n);

struct LegendreValue {
    double value;
    double derivative;
};

/// P_k(x) and P_k'(x) from the three-term recurrence (unnormalized).
LegendreValue legendre_eval(int k, double x);

/// Factor turning P_k into the L2(-1,1)-orthonormal mode.
inline double orthonormal_scale(int k) { return std::sqrt((2.0 * k + 1.0) / 2.0); }

/// Orthonormal modal Legendre basis on the reference interval or square.
///
/// Modes in 2D are tensor products phi_kx(xi) * phi_ky(eta), ordered
/// lexicographically by (kx, ky): index = kx * (q + 1) + ky. Volume nodes
/// follow the same ordering over the 1D quadrature nodes.
///
/// Local faces are numbered 2 * axis + side, side 0 at -1 and side 1 at +1.
/// In 2D each face carries the 1D rule along the tangential coordinate; in 1D
/// a face is a single point with unit weight.
class Basis {
public:
    Basis(int q, QuadRule quad, int dim);

    int degree() const { return q_; }
    int spatial_dim() const { return dim_; }
    int size() const { return size_; }
    int num_nodes() const { return static_cast<int>(node_weights_.size()); }
    int num_faces() const { return 2 * dim_; }
    int face_nodes() const { return dim_ == 1 ? 1 : quad_.n; }

    const QuadRule& quad() const { return quad_; }

    /// Basis values at volume nodes, num_nodes x size.
    const Eigen::MatrixXd& values() const { return values_; }
    /// Reference-coordinate derivative along `axis` at volume nodes.
    const Eigen::MatrixXd& derivatives(int axis) const { return derivs_[axis]; }
    const std::vector<double>& node_weights() const { return node_weights_; }
    /// Reference coordinates of volume node k.
    const std::array<double, 2>& node(int k) const { return nodes_[k]; }

    /// Basis values on local face `lf`, face_nodes x size.
    const Eigen::MatrixXd& face_values(int lf) const { return face_values_[lf]; }
    const Eigen::MatrixXd& face_derivatives(int lf, int axis) const { return face_derivs_[lf][axis]; }
    /// Reference face weights (sum 2 in 2D, {1} in 1D).
    const std::vector<double>& face_weights() const { return face_weights_; }
    /// Reference coordinates of point p on local face lf.
    std::array<double, 2> face_point(int lf, int p) const;

    std::array<int, 2> mode(int i) const;
    int index(int kx, int ky = 0) const { return dim_ == 1 ? kx : kx * (q_ + 1) + ky; }

    /// Direct evaluation (no tables) of mode i at reference point xi.
    double eval_mode(int i, const std::array<double, 2>& xi) const;
    std::array<double, 2> eval_mode_gradient(int i, const std::array<double, 2>& xi) const;

private:
    int q_;
    int dim_;
    int size_;
    QuadRule quad_;
    std::vector<std::array<double, 2>> nodes_;
    std::vector<double> node_weights_;
    Eigen::MatrixXd values_;
    std::array<Eigen::MatrixXd, 2> derivs_;
    std::vector<Eigen::MatrixXd> face_values_;
    std::vector<std::array<Eigen::MatrixXd, 2>> face_derivs_;
    std::vector<double> face_weights_;
};

Basis build_basis(int q, const QuadRule& quad, int dim);

/// Positions of the degree-s modes inside the degree-q mode list (s <= q).
std::vector<int> embedding(const Basis& coarse, const Basis& fine);

} // namespace egdg

#endif
