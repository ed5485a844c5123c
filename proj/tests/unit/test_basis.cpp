#include "egdg/basis.hpp"
#include "egdg/reference.hpp"

#include "../oracle/oracle_values.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace egdg;

TEST_CASE("gauss_rule matches the high-precision oracle")
{
    const std::pair<int, const std::vector<double>*> cases[] = {
        {2, &oracle::gauss2_nodes}, {5, &oracle::gauss5_nodes}, {16, &oracle::gauss16_nodes}};
    const std::vector<double>* weights[] = {&oracle::gauss2_weights, &oracle::gauss5_weights, &oracle::gauss16_weights};
    for (int c = 0; c < 3; ++c) {
        const QuadRule r = gauss_rule(cases[c].first);
        REQUIRE(r.n == cases[c].first);
        for (int k = 0; k < r.n; ++k) {
            CHECK(r.nodes[k] == doctest::Approx((*cases[c].second)[k]).epsilon(1e-15));
            CHECK(r.weights[k] == doctest::Approx((*weights[c])[k]).epsilon(1e-14));
        }
    }
}

TEST_CASE("gauss_rule invariants")
{
    const QuadRule one = gauss_rule(1);
    CHECK(one.nodes[0] == 0.0);
    CHECK(one.weights[0] == doctest::Approx(2.0));
    for (int n = 1; n <= 20; ++n) {
        const QuadRule r = gauss_rule(n);
        CHECK(std::abs(std::accumulate(r.weights.begin(), r.weights.end(), 0.0) - 2.0) < 1e-14);
        for (int k = 0; k + 1 < n; ++k)
            CHECK(r.nodes[k] < r.nodes[k + 1]);
        for (int k = 0; k < n; ++k)
            CHECK(std::abs(r.nodes[k] + r.nodes[n - 1 - k]) < 1e-15);
        for (int p = 0; p <= 2 * n - 1; ++p) {
            double s = 0.0;
            for (int k = 0; k < n; ++k)
                s += r.weights[k] * std::pow(r.nodes[k], p);
            const double exact = p % 2 == 1 ? 0.0 : 2.0 / (p + 1);
            CHECK(std::abs(s - exact) <= 1e-13 * std::max(1.0, exact));
        }
    }
    CHECK_THROWS_AS(gauss_rule(0), std::invalid_argument);
}

TEST_CASE("gauss_rule agrees with the Golub-Welsch rule")
{
    for (int n : {3, 8, 16, 24}) {
        std::vector<double> x, w;
        golub_welsch(n, x, w);
        const QuadRule r = gauss_rule(n);
        for (int k = 0; k < n; ++k) {
            CHECK(std::abs(r.nodes[k] - x[k]) < 1e-14);
            CHECK(std::abs(r.weights[k] - w[k]) < 1e-14);
        }
    }
}

TEST_CASE("legendre_eval")
{
    CHECK(legendre_eval(0, 0.3).value == 1.0);
    CHECK(legendre_eval(0, 0.3).derivative == 0.0);
    CHECK(legendre_eval(2, 0.5).value == doctest::Approx(-0.125));
    CHECK(legendre_eval(3, 0.5).value == doctest::Approx(-0.4375));
    const std::vector<double>* vals[] = {&oracle::legendre0_value, &oracle::legendre1_value, &oracle::legendre2_value,
                                         &oracle::legendre3_value, &oracle::legendre4_value, &oracle::legendre5_value,
                                         &oracle::legendre6_value};
    const std::vector<double>* ders[] = {&oracle::legendre0_deriv, &oracle::legendre1_deriv, &oracle::legendre2_deriv,
                                         &oracle::legendre3_deriv, &oracle::legendre4_deriv, &oracle::legendre5_deriv,
                                         &oracle::legendre6_deriv};
    for (int k = 0; k <= 6; ++k)
        for (size_t i = 0; i < oracle::legendre_x.size(); ++i) {
            const auto L = legendre_eval(k, oracle::legendre_x[i]);
            CHECK(std::abs(L.value - (*vals[k])[i]) < 1e-14);
            CHECK(std::abs(L.derivative - (*ders[k])[i]) < 1e-13);
        }
    // Endpoints: P_k(1) = 1, P_k'(1) = k(k+1)/2.
    for (int k = 0; k <= 10; ++k) {
        CHECK(legendre_eval(k, 1.0).value == doctest::Approx(1.0));
        CHECK(legendre_eval(k, 1.0).derivative == doctest::Approx(k * (k + 1) / 2.0));
        CHECK(legendre_eval(k, -1.0).value == doctest::Approx(k % 2 ? -1.0 : 1.0));
    }
}

TEST_CASE("build_basis shapes and constant mode")
{
    const Basis b0 = build_basis(0, gauss_rule(16), 1);
    CHECK(b0.size() == 1);
    CHECK((b0.values().array() - 1.0 / std::sqrt(2.0)).abs().maxCoeff() < 1e-15);
    const Basis b4 = build_basis(4, gauss_rule(16), 2);
    CHECK(b4.size() == 25);
    CHECK(b4.num_nodes() == 256);
    CHECK(b4.values().rows() == 256);
    CHECK(b4.values().cols() == 25);
    CHECK_THROWS(build_basis(-1, gauss_rule(4), 1));
    CHECK_THROWS(build_basis(2, gauss_rule(4), 3));
}

TEST_CASE("basis is orthonormal under its rule")
{
    for (int dim = 1; dim <= 2; ++dim)
        for (int q = 0; q <= 5; ++q) {
            const Basis b = build_basis(q, gauss_rule(q + 1), dim);
            Eigen::VectorXd w(b.num_nodes());
            for (int k = 0; k < b.num_nodes(); ++k)
                w[k] = b.node_weights()[k];
            const Eigen::MatrixXd G = b.values().transpose() * w.asDiagonal() * b.values();
            CHECK((G - Eigen::MatrixXd::Identity(b.size(), b.size())).cwiseAbs().maxCoeff() < 1e-12);
        }
    // q = 1 checked with an independent high-order rule.
    std::vector<double> x, w;
    golub_welsch(30, x, w);
    const Basis b = build_basis(1, gauss_rule(2), 1);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            double s = 0.0;
            for (size_t k = 0; k < x.size(); ++k)
                s += w[k] * b.eval_mode(i, {x[k], 0.0}) * b.eval_mode(j, {x[k], 0.0});
            CHECK(std::abs(s - (i == j ? 1.0 : 0.0)) < 1e-13);
        }
}

TEST_CASE("tables agree with direct evaluation")
{
    for (int dim = 1; dim <= 2; ++dim) {
        const Basis b = build_basis(3, gauss_rule(5), dim);
        for (int k = 0; k < b.num_nodes(); ++k)
            for (int i = 0; i < b.size(); ++i) {
                CHECK(std::abs(b.values()(k, i) - b.eval_mode(i, b.node(k))) < 1e-13);
                const auto g = b.eval_mode_gradient(i, b.node(k));
                for (int a = 0; a < dim; ++a)
                    CHECK(std::abs(b.derivatives(a)(k, i) - g[a]) < 1e-12);
            }
        for (int lf = 0; lf < b.num_faces(); ++lf)
            for (int p = 0; p < b.face_nodes(); ++p) {
                const auto xi = b.face_point(lf, p);
                CHECK(std::abs(std::abs(xi[lf / 2]) - 1.0) < 1e-15);
                for (int i = 0; i < b.size(); ++i) {
                    CHECK(std::abs(b.face_values(lf)(p, i) - b.eval_mode(i, xi)) < 1e-13);
                    const auto g = b.eval_mode_gradient(i, xi);
                    for (int a = 0; a < dim; ++a)
                        CHECK(std::abs(b.face_derivatives(lf, a)(p, i) - g[a]) < 1e-12);
                }
            }
    }
}

TEST_CASE("2D mode ordering and embedding")
{
    const Basis b = build_basis(2, gauss_rule(5), 2);
    CHECK(b.index(1, 2) == 5);
    CHECK(b.mode(5) == std::array<int, 2>{1, 2});
    const Basis c = build_basis(1, gauss_rule(4), 2);
    const std::vector<int> e = embedding(c, b);
    REQUIRE(e.size() == 4);
    for (int i = 0; i < c.size(); ++i)
        CHECK(b.mode(e[i]) == c.mode(i));
    const Basis c1 = build_basis(2, gauss_rule(5), 1), f1 = build_basis(4, gauss_rule(5), 1);
    CHECK(embedding(c1, f1) == std::vector<int>{0, 1, 2});
    CHECK_THROWS(embedding(b, c));
}
