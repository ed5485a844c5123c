#include "egdg/diagnostics.hpp"
#include "egdg/error.hpp"
#include "egdg/reference.hpp"
#include "egdg/semidisc.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace egdg;
using std::numbers::pi;

namespace {

State random_state(const Discretization& d, unsigned seed, double amp = 0.5)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-amp, amp);
    State y = d.zero_state();
    for (Eigen::Index i = 0; i < y.u.size(); ++i)
        y.u[i] = U(rng);
    for (Eigen::Index i = 0; i < y.v.size(); ++i)
        y.v[i] = U(rng);
    return y;
}

double rel(const State& a, const State& b)
{
    const double s = std::max(b.u.lpNorm<Eigen::Infinity>(), b.v.lpNorm<Eigen::Infinity>());
    return std::max((a.u - b.u).lpNorm<Eigen::Infinity>(), (a.v - b.v).lpNorm<Eigen::Infinity>()) / s;
}

Discretization sg(int n, int q, int s, FluxParams f = FluxParams::central(), double theta = 0.0)
{
    const Problem p = sine_gordon(theta);
    return Discretization(p, build_interval_mesh(-20.0, 20.0, n), q, s, f);
}

} // namespace

TEST_CASE("State arithmetic")
{
    State a{Eigen::VectorXd::Ones(2), Eigen::VectorXd::Zero(1), 1.5};
    State b{Eigen::VectorXd::Ones(2), Eigen::VectorXd::Ones(1), 3.0};
    const State c = a + 2.0 * b;
    CHECK(c.u[0] == 3.0);
    CHECK(c.v[0] == 2.0);
    CHECK(c.t == 1.5);
    CHECK(c.finite());
    a.u[0] = NAN;
    CHECK_FALSE(a.finite());
}

TEST_CASE("zero state gives a zero derivative")
{
    for (const char* name : {"sine-gordon", "cubic-defocusing", "cubic-focusing"}) {
        const Problem p = make_problem(name);
        const Mesh m = p.dim == 1 ? build_interval_mesh(-20, 20, 5) : build_cartesian_mesh(p.domain, 3, 3);
        const Discretization d(p, m, 3, 3, FluxParams::sommerfeld(1.0));
        const State dy = d.compute_rhs(d.zero_state());
        CHECK(dy.u.cwiseAbs().maxCoeff() == 0.0);
        CHECK(dy.v.cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("single element, u = 0: du/dt = v exactly")
{
    // One cell: every face is a wall, and with Neumann walls v* = v, so the face term vanishes.
    Problem p = sine_gordon(0.0);
    const Discretization d(p, build_interval_mesh(-1.0, 1.0, 1), 4, 4, FluxParams::central());
    State y = random_state(d, 3);
    y.u.setZero();
    const State dy = d.compute_rhs(y);
    CHECK((dy.u - y.v).cwiseAbs().maxCoeff() < 1e-13);

    Problem c = cubic(1);
    const Discretization d2(c, build_cartesian_mesh(c.domain, 1, 1), 3, 2, FluxParams::central());
    State z = random_state(d2, 4);
    z.u.setZero();
    const State dz = d2.compute_rhs(z);
    Eigen::VectorXd embedded = Eigen::VectorXd::Zero(d2.nu());
    for (int i = 0; i < d2.nv(); ++i)
        embedded[d2.embed()[i]] = z.v[i];
    CHECK((dz.u - embedded).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("mean constraint activation")
{
    SUBCASE("linear wave: active everywhere, mean of du/dt equals mean of v")
    {
        Problem p = sine_gordon(0.0);
        p.nonlin = linear_nonlinearity();
        const Discretization d(p, build_interval_mesh(-20, 20, 6), 3, 2, FluxParams::sommerfeld(1.0));
        const State y = random_state(d, 8);
        const State dy = d.compute_rhs(y);
        CHECK(d.last_constraint_count() == 6);
        for (int e = 0; e < 6; ++e)
            CHECK(std::abs(dy.u[e * d.nu()] - y.v[e * d.nv()]) < 1e-13);
    }
    SUBCASE("sine-Gordon, u = 0: inactive")
    {
        const Discretization d = sg(4, 3, 3);
        State y = d.zero_state();
        y.v = random_state(d, 2).v;
        d.compute_rhs(y);
        CHECK(d.last_constraint_count() == 0);
        CHECK(d.mean_constraint() == MeanConstraint::Threshold);
    }
    SUBCASE("sine-Gordon, u = pi: active and equal to the dense oracle")
    {
        for (FluxParams f : {FluxParams::central(), FluxParams::sommerfeld(1.0)}) {
            const Discretization d = sg(3, 4, 4, f);
            State y = d.zero_state();
            for (int e = 0; e < 3; ++e)
                y.u[e * d.nu()] = pi * std::sqrt(2.0);
            y.v = random_state(d, 5).v;
            const State dy = d.compute_rhs(y);
            CHECK(d.last_constraint_count() == 3);
            CHECK(dy.finite());
            CHECK(rel(dy, reference_rhs(d, y)) < 1e-11);
        }
    }
    SUBCASE("apply_mean_constraint")
    {
        Eigen::MatrixXd A = Eigen::MatrixXd::Random(3, 3) * 10.0;
        Eigen::VectorXd r = Eigen::VectorXd::Ones(3);
        apply_mean_constraint(A, r, 2.0);
        CHECK(A(0, 1) == 0.0);
        CHECK(A(0, 2) == 0.0);
        CHECK(r[0] / A(0, 0) == doctest::Approx(2.0));
    }
}

TEST_CASE("element-wise RHS equals the dense monolithic oracle")
{
    unsigned seed = 100;
    for (FluxParams f : {FluxParams::central(), FluxParams::alternating(), FluxParams::sommerfeld(1.3),
                         FluxParams::alt_sommerfeld(0.7)}) {
        for (const char* name : {"sine-gordon", "breather-forced", "cubic-defocusing", "manufactured-2d", "focusing-2d"}) {
            Problem p = make_problem(name);
            if (!p.boundary.exact_data && p.boundary.kind == BoundaryKind::Flux)
                p.boundary.params = {0.6, 0.8, 0.2};
            const Mesh m = p.dim == 1 ? build_interval_mesh(p.domain.x0, p.domain.x1, 3)
                                      : build_cartesian_mesh(p.domain, 2, 2, p.boundary.kind == BoundaryKind::Periodic);
            for (auto [q, s] : {std::pair{2, 2}, std::pair{3, 2}}) {
                const Discretization d(p, m, q, s, f);
                State y = random_state(d, ++seed);
                y.t = 0.3;
                CHECK(rel(d.compute_rhs(y), reference_rhs(d, y)) < 1e-11);
            }
        }
    }
}

TEST_CASE("shifted discretization agrees with the oracle and starts at u~ = 0")
{
    Problem p = make_problem("manufactured-1d");
    p = shifted(p, *p.initial_field);
    const Discretization d(p, build_interval_mesh(p.domain.x0, p.domain.x1, 3), 4, 3, FluxParams::sommerfeld(1.0));
    const State y0 = d.project_initial();
    CHECK(y0.u.cwiseAbs().maxCoeff() == 0.0);
    State y = random_state(d, 77, 0.1);
    y.t = 0.4;
    CHECK(rel(d.compute_rhs(y), reference_rhs(d, y)) < 1e-11);
}

TEST_CASE("projection")
{
    const Problem p = sine_gordon(0.0);
    const Discretization d(p, build_interval_mesh(-20, 20, 7), 0, 0, FluxParams::central());
    const State y = d.project([](const Vec2&) { return 1.25; }, [](const Vec2&) { return -0.5; });
    for (int e = 0; e < 7; ++e) {
        CHECK(d.eval_u(y, e, {0.3, 0.0}) == doctest::Approx(1.25));
        CHECK(d.eval_v(y, e, {-0.9, 0.0}) == doctest::Approx(-0.5));
    }
    // e^{sin x} projection converges at order q + 1.
    for (int q : {1, 2, 3}) {
        std::vector<double> err;
        for (int n : {100, 200, 400}) {
            const Discretization dq(p, build_interval_mesh(-20, 20, n), q, q, FluxParams::central());
            const State yq = dq.project([](const Vec2& x) { return std::exp(std::sin(x[0])); }, nullptr);
            double e2 = 0.0;
            for (int e = 0; e < n; ++e) {
                const Eigen::VectorXd u = dq.u_nodes(yq, e);
                for (int k = 0; k < u.size(); ++k)
                    e2 += dq.node_weights(e)[k] * std::pow(u[k] - std::exp(std::sin(dq.node_points(e)[k][0])), 2);
            }
            err.push_back(std::sqrt(e2));
        }
        CHECK(std::log2(err[0] / err[1]) == doctest::Approx(q + 1).epsilon(0.05));
        CHECK(std::log2(err[1] / err[2]) == doctest::Approx(q + 1).epsilon(0.05));
    }
}

TEST_CASE("constructor validation")
{
    const Problem p = sine_gordon(0.0);
    const Mesh m = build_interval_mesh(-20, 20, 4);
    CHECK_THROWS(Discretization(p, m, 2, 3, FluxParams::central()));
    CHECK_THROWS(Discretization(p, build_cartesian_mesh({0, 1, 0, 1}, 2, 2), 2, 2, FluxParams::central()));
    CHECK_THROWS(Discretization(p, build_interval_mesh(-20, 20, 4, true), 2, 2, FluxParams::central()));
    const Discretization d(p, m, 2, 2, FluxParams::central());
    State bad = d.zero_state();
    bad.u.resize(3);
    CHECK_THROWS_AS(d.compute_rhs(bad), std::invalid_argument);
}

TEST_CASE("non-finite state raises NumericalBreakdown")
{
    const Discretization d = sg(3, 2, 2);
    State y = d.zero_state();
    y.v[1] = INFINITY;
    CHECK_THROWS_AS(d.compute_rhs(y), NumericalBreakdown);
}

TEST_CASE("mean constraint policy resolution")
{
    const Problem m2 = make_problem("manufactured-2d");
    const Discretization d(m2, build_cartesian_mesh(m2.domain, 2, 2), 2, 2, FluxParams::sommerfeld(1.0));
    CHECK(d.mean_constraint() == MeanConstraint::Always);
    DiscretizationOptions o;
    o.mean_constraint = MeanConstraint::Threshold;
    const Discretization t(m2, build_cartesian_mesh(m2.domain, 2, 2), 2, 2, FluxParams::sommerfeld(1.0), o);
    CHECK(t.mean_constraint() == MeanConstraint::Threshold);
    CHECK(sg(3, 2, 2).mean_constraint() == MeanConstraint::Threshold);
}

TEST_CASE("compute_rhs is deterministic")
{
    const Problem c = make_problem("cubic-focusing");
    const Discretization d(c, build_cartesian_mesh(c.domain, 4, 4), 3, 3, FluxParams::alt_sommerfeld(1.0));
    const State y = random_state(d, 21);
    const State a = d.compute_rhs(y);
    const State b = d.compute_rhs(y);
    CHECK((a.u - b.u).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.v - b.v).cwiseAbs().maxCoeff() == 0.0);
}
