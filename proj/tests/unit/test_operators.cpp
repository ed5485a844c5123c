#include "egdg/operators.hpp"
#include "egdg/reference.hpp"

#include "../oracle/oracle_values.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <random>

using namespace egdg;

TEST_CASE("stiffness q = 4 on a cell of width 0.1 matches exact integration")
{
    const Basis b = build_basis(4, gauss_rule(16), 1);
    const Eigen::MatrixXd S = stiffness(b, Cell{{0.0, 0.0}, {0.1, 0.0}});
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            CHECK(std::abs(S(i, j) - oracle::stiffness_q4_h01[i * 5 + j]) < 1e-11 * 840.0);
}

TEST_CASE("stiffness examples and scaling")
{
    const Basis b = build_basis(1, gauss_rule(4), 1);
    const Eigen::MatrixXd S = stiffness(b, Cell{{-1.0, 0.0}, {1.0, 0.0}});
    CHECK(std::abs(S(0, 0)) < 1e-15);
    CHECK(std::abs(S(0, 1)) < 1e-15);
    CHECK(S(1, 1) == doctest::Approx(3.0));
    const Basis b3 = build_basis(3, gauss_rule(8), 1);
    const Eigen::MatrixXd S1 = stiffness(b3, Cell{{0.0, 0.0}, {1.0, 0.0}});
    const Eigen::MatrixXd S2 = stiffness(b3, Cell{{0.0, 0.0}, {2.0, 0.0}});
    CHECK((S2 - 0.5 * S1).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(S1.col(0).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("stiffness: symmetric, PSD, null space is the constant mode")
{
    for (int dim = 1; dim <= 2; ++dim)
        for (int q = 1; q <= 4; ++q) {
            const Basis b = build_basis(q, gauss_rule(q + 2), dim);
            const Cell c = dim == 1 ? Cell{{0.2, 0.0}, {0.45, 0.0}} : Cell{{0.0, 0.0}, {0.3, 0.2}};
            const Eigen::MatrixXd S = stiffness(b, c);
            CHECK((S - S.transpose()).cwiseAbs().maxCoeff() < 1e-12 * S.cwiseAbs().maxCoeff());
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
            const auto& ev = es.eigenvalues();
            CHECK(std::abs(ev[0]) < 1e-10 * ev[ev.size() - 1]);
            CHECK(ev[1] > 1e-6 * ev[ev.size() - 1]);
            CHECK(std::abs(std::abs(es.eigenvectors()(0, 0)) - 1.0) < 1e-10);
            CHECK((S - stiffness_by_quadrature(b, c)).cwiseAbs().maxCoeff() < 1e-11 * S.cwiseAbs().maxCoeff());
        }
}

TEST_CASE("weighted_mass")
{
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int dim = 1; dim <= 2; ++dim) {
        const Basis b = build_basis(3, gauss_rule(6), dim);
        const Cell c = dim == 1 ? Cell{{0.0, 0.0}, {0.5, 0.0}} : Cell{{0.0, 0.0}, {0.5, 0.25}};
        const double jac = c.measure(dim) / (dim == 1 ? 2.0 : 4.0);
        std::vector<double> one(b.num_nodes(), 1.0), zero(b.num_nodes(), 0.0), w(b.num_nodes());
        CHECK((weighted_mass(b, c, one) - jac * Eigen::MatrixXd::Identity(b.size(), b.size())).cwiseAbs().maxCoeff() <
              1e-13);
        CHECK(weighted_mass(b, c, zero).cwiseAbs().maxCoeff() == 0.0);
        for (double& x : w)
            x = U(rng);
        const Eigen::MatrixXd M = weighted_mass(b, c, w);
        const auto pw = physical_weights(b, c);
        for (int i = 0; i < b.size(); ++i)
            for (int j = 0; j < b.size(); ++j) {
                double s = 0.0;
                for (int k = 0; k < b.num_nodes(); ++k)
                    s += pw[k] * w[k] * b.eval_mode(i, b.node(k)) * b.eval_mode(j, b.node(k));
                CHECK(std::abs(M(i, j) - s) < 1e-13);
            }
    }
    const Basis b = build_basis(2, gauss_rule(4), 1);
    std::vector<double> bad(3, 1.0);
    CHECK_THROWS(weighted_mass(b, Cell{{0.0, 0.0}, {1.0, 0.0}}, bad));
}

TEST_CASE("face_lift in 1D is a point evaluation")
{
    const Basis b = build_basis(3, gauss_rule(6), 1);
    const Cell c{{1.0, 0.0}, {1.5, 0.0}};
    for (int lf = 0; lf < 2; ++lf) {
        const FaceLift L = face_lift(b, c, lf);
        const double xi = lf == 0 ? -1.0 : 1.0;
        CHECK(L.normal[0] == xi);
        CHECK(L.weights.size() == 1);
        CHECK(L.weights[0] == 1.0);
        CHECK(L.points[0][0] == doctest::Approx(lf == 0 ? 1.0 : 1.5));
        for (int i = 0; i < b.size(); ++i) {
            CHECK(std::abs(L.trace(0, i) - b.eval_mode(i, {xi, 0.0})) < 1e-14);
            CHECK(std::abs(L.normal_derivative(0, i) - xi * b.eval_mode_gradient(i, {xi, 0.0})[0] * 4.0) < 1e-12);
        }
    }
}

TEST_CASE("face_lift in 2D integrates polynomials exactly")
{
    const Basis b = build_basis(3, gauss_rule(6), 2);
    const Cell c{{0.0, 0.0}, {0.2, 0.2}};
    const FaceLift L = face_lift(b, c, 1); // x = 0.2, outward +x
    const double phi0 = 0.5;
    double s = 0.0;
    for (size_t p = 0; p < L.weights.size(); ++p)
        s += L.weights[p] * L.trace(p, 0);
    CHECK(s == doctest::Approx(0.2 * phi0));

    std::vector<double> x, w;
    golub_welsch(30, x, w);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    const double a0 = U(rng), a1 = U(rng), a2 = U(rng), a3 = U(rng);
    auto g = [&](double y) { return a0 + a1 * y + a2 * y * y + a3 * y * y * y; };
    for (int i = 0; i < b.size(); ++i) {
        double lifted = 0.0, ref = 0.0, dref = 0.0, dlift = 0.0;
        for (size_t p = 0; p < L.weights.size(); ++p) {
            lifted += L.weights[p] * L.trace(p, i) * g(L.points[p][1]);
            dlift += L.weights[p] * L.normal_derivative(p, i) * g(L.points[p][1]);
        }
        for (size_t k = 0; k < x.size(); ++k) {
            const double y = 0.1 * (x[k] + 1.0);
            ref += 0.1 * w[k] * b.eval_mode(i, {1.0, x[k]}) * g(y);
            dref += 0.1 * w[k] * b.eval_mode_gradient(i, {1.0, x[k]})[0] * 10.0 * g(y);
        }
        CHECK(std::abs(lifted - ref) < 1e-12);
        CHECK(std::abs(dlift - dref) < 1e-11);
    }
}
