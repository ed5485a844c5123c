#include "egdg/reference.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace egdg {

void golub_welsch(int n, std::vector<double>& nodes, std::vector<double>& weights)
{
    if (n < 1)
        throw std::invalid_argument("golub_welsch: n must be positive");
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        J(k, k - 1) = J(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    nodes.resize(n);
    weights.resize(n);
    for (int k = 0; k < n; ++k) {
        nodes[k] = es.eigenvalues()[k];
        const double v0 = es.eigenvectors()(0, k);
        weights[k] = 2.0 * v0 * v0;
    }
}

namespace {

double binom(int n, int k)
{
    double r = 1.0;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

// Orthonormal Legendre mode and derivative from the explicit sum
// P_n(x) = sum_k C(n,k) C(n+k,k) ((x-1)/2)^k.
void legendre_direct(int n, double x, double& val, double& der)
{
    const double z = 0.5 * (x - 1.0);
    val = 0.0;
    der = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double c = binom(n, k) * binom(n + k, k);
        val += c * std::pow(z, k);
        if (k > 0)
            der += c * k * 0.5 * std::pow(z, k - 1);
    }
    const double s = std::sqrt(n + 0.5);
    val *= s;
    der *= s;
}

struct ModeEval {
    double val;
    Vec2 grad; // physical
};

class Evaluator {
public:
    Evaluator(int q, int dim) : q_(q), dim_(dim) {}
    int size() const { return dim_ == 1 ? q_ + 1 : (q_ + 1) * (q_ + 1); }

    ModeEval eval(int i, const Vec2& xi, const Vec2& h) const
    {
        if (dim_ == 1) {
            double v, d;
            legendre_direct(i, xi[0], v, d);
            return {v, {d * 2.0 / h[0], 0.0}};
        }
        const int kx = i / (q_ + 1), ky = i % (q_ + 1);
        double vx, dx, vy, dy;
        legendre_direct(kx, xi[0], vx, dx);
        legendre_direct(ky, xi[1], vy, dy);
        return {vx * vy, {dx * vy * 2.0 / h[0], vx * dy * 2.0 / h[1]}};
    }

private:
    int q_, dim_;
};

struct Point {
    Vec2 xi;
    Vec2 x;
    double w;
};

} // namespace

State reference_rhs(const Discretization& disc, const State& y)
{
    const Problem& pb = disc.problem();
    const Mesh& mesh = disc.mesh();
    const int dim = mesh.dim;
    const int ne = mesh.num_cells();
    const Evaluator eu(disc.q(), dim), ev(disc.s(), dim);
    const int nu = eu.size(), nv = ev.size();
    const double c2 = pb.c * pb.c;
    const FluxParams& fp = disc.flux();
    const DiscretizationOptions& opts = disc.options();
    const double t = y.t;

    std::vector<double> qn, qw;
    golub_welsch(opts.quad_points, qn, qw);
    const int nq = opts.quad_points;

    auto volume_points = [&](const Cell& c) {
        std::vector<Point> pts;
        const Vec2 h = c.size();
        if (dim == 1) {
            for (int k = 0; k < nq; ++k)
                pts.push_back({{qn[k], 0.0}, {c.lo[0] + 0.5 * (qn[k] + 1.0) * h[0], 0.0}, qw[k] * h[0] / 2.0});
        } else {
            for (int a = 0; a < nq; ++a)
                for (int b = 0; b < nq; ++b)
                    pts.push_back({{qn[a], qn[b]},
                                   {c.lo[0] + 0.5 * (qn[a] + 1.0) * h[0], c.lo[1] + 0.5 * (qn[b] + 1.0) * h[1]},
                                   qw[a] * qw[b] * h[0] * h[1] / 4.0});
        }
        return pts;
    };
    auto uval = [&](int e, const Vec2& xi, Vec2& grad) {
        const Vec2 h = mesh.cells[e].size();
        double u = 0.0;
        grad = {0.0, 0.0};
        for (int j = 0; j < nu; ++j) {
            const ModeEval m = eu.eval(j, xi, h);
            const double a = y.u[e * nu + j];
            u += a * m.val;
            grad[0] += a * m.grad[0];
            grad[1] += a * m.grad[1];
        }
        return u;
    };
    auto vval = [&](int e, const Vec2& xi) {
        const Vec2 h = mesh.cells[e].size();
        double v = 0.0;
        for (int j = 0; j < nv; ++j)
            v += y.v[e * nv + j] * ev.eval(j, xi, h).val;
        return v;
    };
    auto weight = [&](double u0, double ut) {
        return opts.shift_weight == ShiftWeight::Divided ? pb.nonlin.quotient(u0, ut) : pb.nonlin.g(u0 + ut);
    };

    const int NU = ne * nu, NV = ne * nv;
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(NU, NU);
    Eigen::VectorXd R = Eigen::VectorXd::Zero(NU);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(NV, NV);
    Eigen::VectorXd Rv = Eigen::VectorXd::Zero(NV);
    // v^h expressed in the u space: (c^2 S - M_g) applied to it goes to the right side.
    Eigen::VectorXd vq = Eigen::VectorXd::Zero(NU);

    std::vector<bool> constrained(ne, false);
    for (int e = 0; e < ne; ++e) {
        const Cell& cell = mesh.cells[e];
        const Vec2 h = cell.size();
        const auto pts = volume_points(cell);
        double gmax = 0.0;
        Eigen::MatrixXd Mq = Eigen::MatrixXd::Zero(nu, nu); // u-space mass for projecting v
        Eigen::VectorXd bq = Eigen::VectorXd::Zero(nu);
        for (const Point& p : pts) {
            Vec2 gut;
            const double ut = uval(e, p.xi, gut);
            const double u0 = pb.shift ? pb.shift->value(p.x) : 0.0;
            const double g = weight(u0, ut);
            gmax = std::max(gmax, std::abs(g));
            const double v = vval(e, p.xi);
            double src = pb.nonlin.f(u0 + ut);
            if (pb.shift)
                src += c2 * pb.shift->laplacian(p.x);
            if (pb.forcing)
                src += pb.forcing(p.x, t);
            std::vector<ModeEval> mu(nu), mv(nv);
            for (int i = 0; i < nu; ++i)
                mu[i] = eu.eval(i, p.xi, h);
            for (int i = 0; i < nv; ++i)
                mv[i] = ev.eval(i, p.xi, h);
            for (int i = 0; i < nu; ++i) {
                for (int j = 0; j < nu; ++j) {
                    G(e * nu + i, e * nu + j) += p.w * (c2 * dot(mu[i].grad, mu[j].grad) - g * mu[i].val * mu[j].val);
                    Mq(i, j) += p.w * mu[i].val * mu[j].val;
                }
                bq[i] += p.w * mu[i].val * v;
            }
            for (int i = 0; i < nv; ++i) {
                for (int j = 0; j < nv; ++j)
                    M(e * nv + i, e * nv + j) += p.w * mv[i].val * mv[j].val;
                Rv[e * nv + i] += p.w * (-c2 * dot(mv[i].grad, gut) - pb.theta * mv[i].val * v + mv[i].val * src);
            }
        }
        vq.segment(e * nu, nu) = Mq.fullPivLu().solve(bq);
        constrained[e] = disc.mean_constraint() == MeanConstraint::Always || gmax < opts.g_tol;
    }
    R = G * vq;

    // Faces.
    for (const Face& f : mesh.faces) {
        const int sides = f.boundary() ? 1 : 2;
        const int elem[2] = {f.elem1, f.elem2};
        const int loc[2] = {f.local1, f.local2};
        const Cell& c1 = mesh.cells[f.elem1];
        const int np = dim == 1 ? 1 : nq;
        for (int p = 0; p < np; ++p) {
            const double tang = dim == 1 ? 0.0 : qn[p];
            const double w = dim == 1 ? 1.0 : qw[p] * 0.5 * c1.size()[1 - f.axis];
            Vec2 xis[2];
            double vs[2];
            Vec2 gs[2];
            for (int sd = 0; sd < sides; ++sd) {
                Vec2 xi{0.0, 0.0};
                xi[f.axis] = (loc[sd] % 2 == 0) ? -1.0 : 1.0;
                if (dim == 2)
                    xi[1 - f.axis] = tang;
                xis[sd] = xi;
                vs[sd] = vval(elem[sd], xi);
                uval(elem[sd], xi, gs[sd]);
            }
            const Vec2& n1 = f.n1;
            double vstar;
            Vec2 gstar;
            if (!f.boundary()) {
                const double jv = vs[0] - vs[1];
                const double jg = dot(gs[0], n1) - dot(gs[1], n1);
                vstar = fp.alpha * vs[0] + (1.0 - fp.alpha) * vs[1] - fp.tau * jg;
                for (int a = 0; a < 2; ++a)
                    gstar[a] = (1.0 - fp.alpha) * gs[0][a] + fp.alpha * gs[1][a] - fp.beta * jv * n1[a];
            } else {
                const Vec2 x = c1.map(xis[0], dim);
                const Vec2 g0 = pb.shift ? pb.shift->grad(x) : Vec2{0.0, 0.0};
                Vec2 G0{gs[0][0] + g0[0], gs[0][1] + g0[1]};
                double v = vs[0];
                double vex = 0.0;
                Vec2 gex{0.0, 0.0};
                if (pb.boundary.exact_data) {
                    vex = pb.exact->ut(x, t);
                    gex = pb.exact->grad(x, t);
                }
                const double dv = v - vex;
                const Vec2 dg{G0[0] - gex[0], G0[1] - gex[1]};
                const auto& bp = pb.boundary.params;
                const double rho = bp.gamma * dv + bp.eta * dot(dg, n1);
                vstar = vex + dv - (bp.gamma - bp.a * bp.eta) * rho;
                for (int a = 0; a < 2; ++a)
                    gstar[a] = gex[a] + dg[a] - (bp.eta + bp.a * bp.gamma) * rho * n1[a] - g0[a];
            }
            for (int sd = 0; sd < sides; ++sd) {
                const int e = elem[sd];
                const double sgn = sd == 0 ? 1.0 : -1.0;
                const Vec2 n{sgn * n1[0], sgn * n1[1]};
                const Vec2 h = mesh.cells[e].size();
                for (int i = 0; i < nu; ++i)
                    R[e * nu + i] += w * c2 * dot(eu.eval(i, xis[sd], h).grad, n) * (vstar - vs[sd]);
                for (int i = 0; i < nv; ++i)
                    Rv[e * nv + i] += w * c2 * ev.eval(i, xis[sd], h).val * dot(gstar, n);
            }
        }
    }

    // Mean equation int (du - v) = 0 replaces the constant test function's row.
    for (int e = 0; e < ne; ++e) {
        if (!constrained[e])
            continue;
        const int r = e * nu;
        G.row(r).setZero();
        R[r] = 0.0;
        const Vec2 h = mesh.cells[e].size();
        for (const Point& p : volume_points(mesh.cells[e])) {
            const double phi0 = eu.eval(0, p.xi, h).val;
            for (int j = 0; j < nu; ++j)
                G(r, e * nu + j) += p.w * phi0 * eu.eval(j, p.xi, h).val;
            R[r] += p.w * phi0 * vval(e, p.xi);
        }
    }

    State dy;
    dy.t = t;
    dy.u = G.fullPivLu().solve(R);
    dy.v = M.fullPivLu().solve(Rv);
    return dy;
}

} // namespace egdg
