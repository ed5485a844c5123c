#ifndef EGDG_SEMIDISC_HPP
#define EGDG_SEMIDISC_HPP

#include "egdg/basis.hpp"
#include "egdg/flux.hpp"
#include "egdg/mesh.hpp"
#include "egdg/operators.hpp"
#include "egdg/problems.hpp"

#include <Eigen/Dense>

#include <vector>

namespace egdg {

/// Modal coefficients of u^h (degree q) and v^h (degree s), one contiguous
/// block per element. Also used for time derivatives.
struct State {
    Eigen::VectorXd u;
    Eigen::VectorXd v;
    double t = 0.0;

    bool finite() const { return u.allFinite() && v.allFinite(); }
};

State operator+(const State& a, const State& b);
State operator*(double s, const State& a);

/// Element weight used by shifted problems: the divided difference
/// (f(u0 + u~) - f(u0)) / u~, or g(u0 + u~) = f(u) / u of the physical field.
enum class ShiftWeight { Divided, Physical };

/// When the constant-mode row of the u-equation is replaced by the mean
/// equation int (du/dt - v) = 0: only where max |g| < g_tol (Threshold), on
/// every element (Always), or Auto: Always when the projected initial state
/// already has max |g| < g_tol on every element, Threshold otherwise.
enum class MeanConstraint { Auto, Threshold, Always };

struct DiscretizationOptions {
    int quad_points = 16;
    /// Mean constraint switches on when max |g| over the element nodes drops below this.
    double g_tol = 1e-10;
    /// Relative pivot floor for the element LU.
    double pivot_tol = 1e-13;
    ShiftWeight shift_weight = ShiftWeight::Physical;
    MeanConstraint mean_constraint = MeanConstraint::Auto;
};

/// Replace the constant-mode row of A by the normalized equation x_0 = target.
void apply_mean_constraint(Eigen::MatrixXd& A, Eigen::VectorXd& rhs, double target);

/// Per-element operators for one (problem, mesh, q, s, flux) combination and
/// the semidiscrete right-hand side built from them.
///
/// compute_rhs runs three passes: element face traces, face fluxes, element
/// solves. Each pass writes disjoint data and is element/face parallel.
class Discretization {
public:
    Discretization(Problem problem, Mesh mesh, int q, int s, FluxParams flux, DiscretizationOptions opts = {});

    const Problem& problem() const { return problem_; }
    const Mesh& mesh() const { return mesh_; }
    const Basis& basis_u() const { return bu_; }
    const Basis& basis_v() const { return bv_; }
    const FluxParams& flux() const { return flux_; }
    const DiscretizationOptions& options() const { return opts_; }
    int q() const { return bu_.degree(); }
    int s() const { return bv_.degree(); }
    int nu() const { return bu_.size(); }
    int nv() const { return bv_.size(); }
    int num_elements() const { return mesh_.num_cells(); }
    const std::vector<int>& embed() const { return embed_; }

    State zero_state() const;
    /// Elementwise L2 projection of the initial data (u block is zero for shifted problems).
    State project_initial() const;
    /// L2 projection of arbitrary fields onto the u and v spaces.
    State project(const std::function<double(const Vec2&)>& u, const std::function<double(const Vec2&)>& v,
                  double t = 0.0) const;

    State compute_rhs(const State& y) const;

    /// Physical node coordinates and weights of element e.
    const std::vector<Vec2>& node_points(int e) const { return elems_[e].points; }
    const std::vector<double>& node_weights(int e) const { return elems_[e].weights; }
    const Eigen::MatrixXd& stiffness_u(int e) const { return elems_[e].S; }
    double jacobian(int e) const { return elems_[e].jac; }

    /// u^h (reconstructed with the shift), v^h and grad u^h at the volume nodes of element e.
    Eigen::VectorXd u_nodes(const State& y, int e) const;
    Eigen::VectorXd u_tilde_nodes(const State& y, int e) const;
    Eigen::VectorXd v_nodes(const State& y, int e) const;
    std::array<Eigen::VectorXd, 2> grad_u_nodes(const State& y, int e) const;
    /// Static shift values at the nodes of e (zeros when unshifted).
    const Eigen::VectorXd& shift_nodes(int e) const { return elems_[e].u0; }

    /// Evaluate u^h and v^h of element e at a reference point.
    double eval_u(const State& y, int e, const Vec2& xi) const;
    double eval_v(const State& y, int e, const Vec2& xi) const;

    /// One-sided traces at face point p of local face lf of element e.
    struct Trace {
        double v = 0.0;
        Vec2 grad{};
    };
    Trace trace(const State& y, int e, int lf, int p) const;
    const FaceLift& lift_u(int e, int lf) const { return elems_[e].lu[lf]; }
    const FaceLift& lift_v(int e, int lf) const { return elems_[e].lv[lf]; }

    /// Number of element solves that used the mean constraint in the last compute_rhs.
    int last_constraint_count() const { return constraint_count_; }
    /// Policy in force after resolving Auto.
    MeanConstraint mean_constraint() const { return policy_; }
    /// Element weight g at the volume nodes of e.
    Eigen::VectorXd weight_nodes(const State& y, int e) const;

private:
    struct ElementData {
        Eigen::MatrixXd S;       // nu x nu
        Eigen::MatrixXd Svq;     // nv x nu, rows of S on the embedded modes
        std::vector<Vec2> points;
        std::vector<double> weights;
        Eigen::VectorXd wvec;
        Eigen::VectorXd u0;      // shift at nodes
        Eigen::VectorXd source;  // c^2 Lap u0 at nodes
        double jac = 1.0;
        Vec2 dscale{};
        std::array<FaceLift, 4> lu;
        std::array<FaceLift, 4> lv;
        std::array<std::vector<Vec2>, 4> face_grad_u0;
    };

    Problem problem_;
    Mesh mesh_;
    FluxParams flux_;
    DiscretizationOptions opts_;
    Basis bu_;
    Basis bv_;
    std::vector<int> embed_;
    std::vector<ElementData> elems_;
    int nface_pts_ = 1;
    mutable int constraint_count_ = 0;
    MeanConstraint policy_ = MeanConstraint::Threshold;

    double weight(double u0, double ut) const;
    FluxValue face_flux(const Face& f, int p, const Trace& t1, const Trace* t2, double t) const;
};

} // namespace egdg

#endif
