#include "egdg/basis.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace egdg {

QuadRule gauss_rule(int n)
{
    if (n < 1)
        throw std::invalid_argument("gauss_rule: n must be >= 1");

    QuadRule rule;
    rule.n = n;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);

    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-like initial guess for the i-th largest root.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            const LegendreValue p = legendre_eval(n, x);
            dp = p.derivative;
            const double dx = p.value / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        dp = legendre_eval(n, x).derivative;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[n - 1 - i] = x;
        rule.nodes[i] = -x;
        rule.weights[n - 1 - i] = w;
        rule.weights[i] = w;
    }
    if (n % 2 == 1)
        rule.nodes[n / 2] = 0.0;
    return rule;
}

LegendreValue legendre_eval(int k, double x)
{
    if (k == 0)
        return {1.0, 0.0};
    double p0 = 1.0, p1 = x;
    double d0 = 0.0, d1 = 1.0;
    for (int j = 2; j <= k; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        // Derivative recurrence P'_j = P'_{j-2} + (2j-1) P_{j-1}, valid at x = +-1.
        const double d2 = d0 + (2.0 * j - 1.0) * p1;
        p0 = p1;
        p1 = p2;
        d0 = d1;
        d1 = d2;
    }
    return {p1, d1};
}

namespace {

double phi(int k, double x) { return orthonormal_scale(k) * legendre_eval(k, x).value; }
double dphi(int k, double x) { return orthonormal_scale(k) * legendre_eval(k, x).derivative; }

} // namespace

Basis::Basis(int q, QuadRule quad, int dim) : q_(q), dim_(dim), quad_(std::move(quad))
{
    if (q < 0)
        throw std::invalid_argument("Basis: negative degree");
    if (dim != 1 && dim != 2)
        throw std::invalid_argument("Basis: dim must be 1 or 2");
    if (quad_.n < q + 1)
        throw std::invalid_argument("Basis: quadrature with " + std::to_string(quad_.n) +
                                    " points cannot resolve degree " + std::to_string(q));

    const int n = quad_.n;
    size_ = dim == 1 ? q + 1 : (q + 1) * (q + 1);

    if (dim == 1) {
        for (int k = 0; k < n; ++k) {
            nodes_.push_back({quad_.nodes[k], 0.0});
            node_weights_.push_back(quad_.weights[k]);
        }
    } else {
        for (int kx = 0; kx < n; ++kx)
            for (int ky = 0; ky < n; ++ky) {
                nodes_.push_back({quad_.nodes[kx], quad_.nodes[ky]});
                node_weights_.push_back(quad_.weights[kx] * quad_.weights[ky]);
            }
    }

    const int nn = num_nodes();
    values_.resize(nn, size_);
    for (int a = 0; a < dim_; ++a)
        derivs_[a].resize(nn, size_);
    for (int k = 0; k < nn; ++k)
        for (int i = 0; i < size_; ++i) {
            values_(k, i) = eval_mode(i, nodes_[k]);
            const auto g = eval_mode_gradient(i, nodes_[k]);
            for (int a = 0; a < dim_; ++a)
                derivs_[a](k, i) = g[a];
        }

    face_weights_ = dim == 1 ? std::vector<double>{1.0} : quad_.weights;
    const int nf = face_nodes();
    face_values_.resize(num_faces());
    face_derivs_.resize(num_faces());
    for (int lf = 0; lf < num_faces(); ++lf) {
        face_values_[lf].resize(nf, size_);
        for (int a = 0; a < dim_; ++a)
            face_derivs_[lf][a].resize(nf, size_);
        for (int p = 0; p < nf; ++p) {
            const auto xi = face_point(lf, p);
            for (int i = 0; i < size_; ++i) {
                face_values_[lf](p, i) = eval_mode(i, xi);
                const auto g = eval_mode_gradient(i, xi);
                for (int a = 0; a < dim_; ++a)
                    face_derivs_[lf][a](p, i) = g[a];
            }
        }
    }

    // Orthonormality must survive the chosen rule.
    Eigen::VectorXd w(nn);
    for (int k = 0; k < nn; ++k)
        w[k] = node_weights_[k];
    const Eigen::MatrixXd gram = values_.transpose() * w.asDiagonal() * values_;
    const double dev = (gram - Eigen::MatrixXd::Identity(size_, size_)).cwiseAbs().maxCoeff();
    if (dev > 1e-12)
        throw std::invalid_argument("Basis: Gram matrix deviates from identity by " + std::to_string(dev));
}

std::array<double, 2> Basis::face_point(int lf, int p) const
{
    const int axis = lf / 2;
    const double side = (lf % 2 == 0) ? -1.0 : 1.0;
    if (dim_ == 1)
        return {side, 0.0};
    std::array<double, 2> xi{};
    xi[axis] = side;
    xi[1 - axis] = quad_.nodes[p];
    return xi;
}

std::array<int, 2> Basis::mode(int i) const
{
    if (dim_ == 1)
        return {i, 0};
    return {i / (q_ + 1), i % (q_ + 1)};
}

double Basis::eval_mode(int i, const std::array<double, 2>& xi) const
{
    const auto m = mode(i);
    if (dim_ == 1)
        return phi(m[0], xi[0]);
    return phi(m[0], xi[0]) * phi(m[1], xi[1]);
}

std::array<double, 2> Basis::eval_mode_gradient(int i, const std::array<double, 2>& xi) const
{
    const auto m = mode(i);
    if (dim_ == 1)
        return {dphi(m[0], xi[0]), 0.0};
    return {dphi(m[0], xi[0]) * phi(m[1], xi[1]), phi(m[0], xi[0]) * dphi(m[1], xi[1])};
}

Basis build_basis(int q, const QuadRule& quad, int dim) { return Basis(q, quad, dim); }

std::vector<int> embedding(const Basis& coarse, const Basis& fine)
{
    if (coarse.degree() > fine.degree() || coarse.spatial_dim() != fine.spatial_dim())
        throw std::invalid_argument("embedding: coarse basis must have degree <= fine basis");
    std::vector<int> map(coarse.size());
    for (int i = 0; i < coarse.size(); ++i) {
        const auto m = coarse.mode(i);
        map[i] = fine.index(m[0], m[1]);
    }
    return map;
}

} // namespace egdg
