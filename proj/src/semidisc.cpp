#include "egdg/semidisc.hpp"

#include "egdg/error.hpp"

#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>

namespace egdg {

State operator+(const State& a, const State& b) { return {a.u + b.u, a.v + b.v, a.t}; }

State operator*(double s, const State& a) { return {s * a.u, s * a.v, a.t}; }

void apply_mean_constraint(Eigen::MatrixXd& A, Eigen::VectorXd& rhs, double target)
{
    // Scale the new row like the rest of A so pivoting sees comparable sizes.
    const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
    A.row(0).setZero();
    A(0, 0) = scale;
    rhs[0] = target * scale;
}

namespace {

// Runs body(i) for i in [0, n) on the OpenMP team and rethrows the first
// exception on the calling thread.
template <class Body>
void parallel_for(int n, Body&& body)
{
    std::exception_ptr err;
    std::mutex m;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        try {
            body(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(m);
            if (!err)
                err = std::current_exception();
        }
    }
    if (err)
        std::rethrow_exception(err);
}

} // namespace

Discretization::Discretization(Problem problem, Mesh mesh, int q, int s, FluxParams flux, DiscretizationOptions opts)
    : problem_(std::move(problem)), mesh_(std::move(mesh)), flux_(flux), opts_(opts),
      bu_(q, gauss_rule(opts.quad_points), mesh_.dim), bv_(s, gauss_rule(opts.quad_points), mesh_.dim)
{
    if (q < 0 || s < 0 || s > q)
        throw std::invalid_argument("Discretization: require 0 <= s <= q");
    if (problem_.dim != mesh_.dim)
        throw std::invalid_argument("Discretization: problem and mesh dimensions differ");
    if (!(problem_.c > 0.0))
        throw std::invalid_argument("Discretization: wave speed must be positive");
    if ((problem_.boundary.kind == BoundaryKind::Periodic) != mesh_.periodic)
        throw std::invalid_argument("Discretization: periodic problem needs a periodic mesh and vice versa");
    if (problem_.boundary.kind == BoundaryKind::Flux)
        problem_.boundary.params.validate();
    if (problem_.boundary.exact_data && !problem_.exact)
        throw std::invalid_argument("Discretization: exact boundary data requested without an exact solution");
    if (flux_.alpha < 0.0 || flux_.alpha > 1.0 || flux_.tau < 0.0 || flux_.beta < 0.0)
        throw std::invalid_argument("Discretization: flux parameters out of range");

    embed_ = embedding(bv_, bu_);
    nface_pts_ = bu_.face_nodes();
    const int dim = mesh_.dim;
    const double c2 = problem_.c * problem_.c;

    elems_.resize(mesh_.num_cells());
    for (int e = 0; e < mesh_.num_cells(); ++e) {
        const Cell& cell = mesh_.cells[e];
        ElementData& d = elems_[e];
        d.S = stiffness(bu_, cell);
        d.Svq.resize(bv_.size(), bu_.size());
        for (int i = 0; i < bv_.size(); ++i)
            d.Svq.row(i) = d.S.row(embed_[i]);
        d.weights = physical_weights(bu_, cell);
        d.wvec = Eigen::Map<const Eigen::VectorXd>(d.weights.data(), static_cast<Eigen::Index>(d.weights.size()));
        d.jac = cell.measure(dim) / (dim == 1 ? 2.0 : 4.0);
        d.dscale = derivative_scale(cell, dim);
        const int nn = bu_.num_nodes();
        d.points.resize(nn);
        d.u0 = Eigen::VectorXd::Zero(nn);
        d.source = Eigen::VectorXd::Zero(nn);
        for (int k = 0; k < nn; ++k) {
            d.points[k] = cell.map(bu_.node(k), dim);
            if (problem_.shift) {
                d.u0[k] = problem_.shift->value(d.points[k]);
                d.source[k] = c2 * problem_.shift->laplacian(d.points[k]);
            }
        }
        for (int lf = 0; lf < bu_.num_faces(); ++lf) {
            d.lu[lf] = face_lift(bu_, cell, lf);
            d.lv[lf] = face_lift(bv_, cell, lf);
            d.face_grad_u0[lf].assign(nface_pts_, Vec2{0.0, 0.0});
            if (problem_.shift)
                for (int p = 0; p < nface_pts_; ++p)
                    d.face_grad_u0[lf][p] = problem_.shift->grad(d.lu[lf].points[p]);
        }
    }

    policy_ = opts_.mean_constraint;
    if (policy_ == MeanConstraint::Auto) {
        // A start where the weight vanishes everywhere keeps the mean equation for the whole run.
        const State y0 = project_initial();
        bool degenerate = true;
        for (int e = 0; e < num_elements() && degenerate; ++e)
            degenerate = weight_nodes(y0, e).cwiseAbs().maxCoeff() < opts_.g_tol;
        policy_ = degenerate ? MeanConstraint::Always : MeanConstraint::Threshold;
    }
}

double Discretization::weight(double u0, double ut) const
{
    return opts_.shift_weight == ShiftWeight::Divided ? problem_.nonlin.quotient(u0, ut) : problem_.nonlin.g(u0 + ut);
}

Eigen::VectorXd Discretization::weight_nodes(const State& y, int e) const
{
    const Eigen::VectorXd ut = u_tilde_nodes(y, e);
    Eigen::VectorXd g(ut.size());
    for (Eigen::Index k = 0; k < ut.size(); ++k)
        g[k] = weight(elems_[e].u0[k], ut[k]);
    return g;
}

State Discretization::zero_state() const
{
    const int ne = num_elements();
    return {Eigen::VectorXd::Zero(ne * nu()), Eigen::VectorXd::Zero(ne * nv()), 0.0};
}

State Discretization::project(const std::function<double(const Vec2&)>& u,
                              const std::function<double(const Vec2&)>& v, double t) const
{
    State y = zero_state();
    y.t = t;
    for (int e = 0; e < num_elements(); ++e) {
        const ElementData& d = elems_[e];
        const int nn = bu_.num_nodes();
        Eigen::VectorXd fu(nn), fv(nn);
        for (int k = 0; k < nn; ++k) {
            fu[k] = u ? u(d.points[k]) : 0.0;
            fv[k] = v ? v(d.points[k]) : 0.0;
        }
        // Orthonormal modes: mass = jac * I.
        y.u.segment(e * nu(), nu()) = bu_.values().transpose() * (d.wvec.cwiseProduct(fu)) / d.jac;
        y.v.segment(e * nv(), nv()) = bv_.values().transpose() * (d.wvec.cwiseProduct(fv)) / d.jac;
    }
    return y;
}

State Discretization::project_initial() const
{
    State y = project(problem_.shift ? nullptr : problem_.initial_u, problem_.initial_v, 0.0);
    if (problem_.shift)
        y.u.setZero();
    return y;
}

Eigen::VectorXd Discretization::u_tilde_nodes(const State& y, int e) const
{
    return bu_.values() * y.u.segment(e * nu(), nu());
}

Eigen::VectorXd Discretization::u_nodes(const State& y, int e) const { return u_tilde_nodes(y, e) + elems_[e].u0; }

Eigen::VectorXd Discretization::v_nodes(const State& y, int e) const
{
    return bv_.values() * y.v.segment(e * nv(), nv());
}

std::array<Eigen::VectorXd, 2> Discretization::grad_u_nodes(const State& y, int e) const
{
    std::array<Eigen::VectorXd, 2> g;
    const auto a = y.u.segment(e * nu(), nu());
    const ElementData& d = elems_[e];
    for (int ax = 0; ax < 2; ++ax) {
        if (ax < mesh_.dim)
            g[ax] = d.dscale[ax] * (bu_.derivatives(ax) * a);
        else
            g[ax] = Eigen::VectorXd::Zero(bu_.num_nodes());
    }
    if (problem_.shift)
        for (int k = 0; k < bu_.num_nodes(); ++k) {
            const Vec2 g0 = problem_.shift->grad(d.points[k]);
            g[0][k] += g0[0];
            g[1][k] += g0[1];
        }
    return g;
}

double Discretization::eval_u(const State& y, int e, const Vec2& xi) const
{
    double r = 0.0;
    for (int i = 0; i < nu(); ++i)
        r += y.u[e * nu() + i] * bu_.eval_mode(i, xi);
    if (problem_.shift)
        r += problem_.shift->value(mesh_.cells[e].map(xi, mesh_.dim));
    return r;
}

double Discretization::eval_v(const State& y, int e, const Vec2& xi) const
{
    double r = 0.0;
    for (int i = 0; i < nv(); ++i)
        r += y.v[e * nv() + i] * bv_.eval_mode(i, xi);
    return r;
}

Discretization::Trace Discretization::trace(const State& y, int e, int lf, int p) const
{
    // Gradient of u~ only; callers add the shift gradient where the physical one is needed.
    const auto a = y.u.segment(e * nu(), nu());
    const auto b = y.v.segment(e * nv(), nv());
    const ElementData& d = elems_[e];
    Trace t;
    t.v = bv_.face_values(lf).row(p).dot(b);
    for (int ax = 0; ax < mesh_.dim; ++ax)
        t.grad[ax] = d.dscale[ax] * bu_.face_derivatives(lf, ax).row(p).dot(a);
    return t;
}

FluxValue Discretization::face_flux(const Face& f, int p, const Trace& t1, const Trace* t2, double t) const
{
    if (t2) {
        const FaceTrace tr{t1.v, t2->v, t1.grad, t2->grad};
        return interior_flux(tr, flux_, f.n1);
    }
    // Physical boundary, evaluated in the physical frame.
    const ElementData& d = elems_[f.elem1];
    const Vec2& g0 = d.face_grad_u0[f.local1][p];
    Vec2 grad{t1.grad[0] + g0[0], t1.grad[1] + g0[1]};
    double v = t1.v;
    const BoundaryParams& bp = problem_.boundary.params;
    FluxValue out;
    if (problem_.boundary.exact_data) {
        const Vec2& x = d.lu[f.local1].points[p];
        const double vex = problem_.exact->ut(x, t);
        const Vec2 gex = problem_.exact->grad(x, t);
        const FluxValue dev = boundary_flux(v - vex, {grad[0] - gex[0], grad[1] - gex[1]}, bp, f.n1);
        out.v_star = vex + dev.v_star;
        out.grad_star = {gex[0] + dev.grad_star[0], gex[1] + dev.grad_star[1]};
    } else {
        out = boundary_flux(v, grad, bp, f.n1);
    }
    out.grad_star[0] -= g0[0];
    out.grad_star[1] -= g0[1];
    return out;
}

State Discretization::compute_rhs(const State& y) const
{
    const int ne = num_elements();
    const int nf = mesh_.dim * 2;
    const int np = nface_pts_;
    const double c2 = problem_.c * problem_.c;
    const double t = y.t;

    if (y.u.size() != ne * nu() || y.v.size() != ne * nv())
        throw std::invalid_argument("compute_rhs: state size does not match the discretization");

    // Pass 1: one-sided traces at every face point of every element.
    std::vector<Trace> traces(static_cast<size_t>(ne) * nf * np);
    auto tidx = [&](int e, int lf, int p) { return (static_cast<size_t>(e) * nf + lf) * np + p; };
    parallel_for(ne, [&](int e) {
        for (int lf = 0; lf < nf; ++lf)
            for (int p = 0; p < np; ++p)
                traces[tidx(e, lf, p)] = trace(y, e, lf, p);
    });

    // Pass 2: numerical traces, stored per element-side.
    std::vector<FluxValue> stars(traces.size());
    const int nfaces = static_cast<int>(mesh_.faces.size());
    parallel_for(nfaces, [&](int fi) {
        const Face& f = mesh_.faces[fi];
        for (int p = 0; p < np; ++p) {
            const Trace& t1 = traces[tidx(f.elem1, f.local1, p)];
            const Trace* t2 = f.boundary() ? nullptr : &traces[tidx(f.elem2, f.local2, p)];
            const FluxValue fv = face_flux(f, p, t1, t2, t);
            stars[tidx(f.elem1, f.local1, p)] = fv;
            if (!f.boundary())
                stars[tidx(f.elem2, f.local2, p)] = fv;
        }
    });

    // Pass 3: element solves.
    State dy = zero_state();
    dy.t = t;
    std::vector<char> constrained(ne, 0);
    parallel_for(ne, [&](int e) {
        const ElementData& d = elems_[e];
        const auto a = y.u.segment(e * nu(), nu());
        const auto b = y.v.segment(e * nv(), nv());
        const int nn = bu_.num_nodes();

        const Eigen::VectorXd ut = bu_.values() * a;
        Eigen::VectorXd gw(nn), fsrc(nn);
        double gmax = 0.0;
        for (int k = 0; k < nn; ++k) {
            const double u = d.u0[k] + ut[k];
            const double fu = problem_.nonlin.f(u);
            // f(u) / u is accurate away from 0; reuse it instead of a second evaluation.
            const double g = opts_.shift_weight == ShiftWeight::Physical && std::abs(u) > 1e-2 ? fu / u
                                                                                            : weight(d.u0[k], ut[k]);
            gmax = std::max(gmax, std::abs(g));
            gw[k] = d.weights[k] * g;
            double src = fu + d.source[k];
            if (problem_.forcing)
                src += problem_.forcing(d.points[k], t);
            fsrc[k] = src;
        }

        // u-equation: (c^2 S - M_g)(du - v) = sum_faces c^2 (grad phi . n)(v* - v).
        Eigen::MatrixXd A = c2 * d.S - bu_.values().transpose() * gw.asDiagonal() * bu_.values();
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nu());
        Eigen::VectorXd vrhs = Eigen::VectorXd::Zero(nv());
        for (int lf = 0; lf < nf; ++lf) {
            const FaceLift& lu = d.lu[lf];
            const FaceLift& lv = d.lv[lf];
            Eigen::VectorXd gu(np), gv(np);
            for (int p = 0; p < np; ++p) {
                const Trace& own = traces[tidx(e, lf, p)];
                const FluxValue& st = stars[tidx(e, lf, p)];
                gu[p] = lu.weights[p] * c2 * (st.v_star - own.v);
                gv[p] = lu.weights[p] * c2 * dot(st.grad_star, lu.normal);
            }
            rhs.noalias() += lu.normal_derivative.transpose() * gu;
            vrhs.noalias() += lv.trace.transpose() * gv;
        }
        // The constant mode only sees the O(g) mass term: rescale its row and
        // column so small but nonzero g does not read as a singular pivot.
        double sigma = 1.0;
        if (policy_ == MeanConstraint::Always || gmax < opts_.g_tol) {
            apply_mean_constraint(A, rhs, 0.0);
            constrained[e] = 1;
        } else {
            const double r0 = A.row(0).cwiseAbs().maxCoeff();
            const double ref = std::max(A.cwiseAbs().maxCoeff(), 1e-300);
            if (r0 > 0.0 && r0 < ref) {
                sigma = std::sqrt(ref / r0);
                A.row(0) *= sigma;
                A.col(0) *= sigma;
                rhs[0] *= sigma;
            }
        }
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
        const auto& U = lu.matrixLU();
        const double dmax = U.diagonal().cwiseAbs().maxCoeff();
        const double dmin = U.diagonal().cwiseAbs().minCoeff();
        if (!(dmin > opts_.pivot_tol * dmax))
            throw NumericalBreakdown("element matrix is singular (pivot ratio " + std::to_string(dmin / dmax) +
                                         ") in element " + std::to_string(e),
                                     e);
        Eigen::VectorXd du = lu.solve(rhs);
        du[0] *= sigma;
        for (int i = 0; i < nv(); ++i)
            du[embed_[i]] += b[i];

        // v-equation with the orthonormal mass jac * I.
        vrhs.noalias() -= c2 * (d.Svq * a);
        vrhs.noalias() += bv_.values().transpose() * d.wvec.cwiseProduct(fsrc);
        Eigen::VectorXd dv = vrhs / d.jac - problem_.theta * b;

        if (!du.allFinite() || !dv.allFinite())
            throw NumericalBreakdown("non-finite derivative in element " + std::to_string(e), e);
        dy.u.segment(e * nu(), nu()) = du;
        dy.v.segment(e * nv(), nv()) = dv;
    });
    int count = 0;
    for (char c : constrained)
        count += c;
    constraint_count_ = count;
    return dy;
}

} // namespace egdg
