#include "egdg/flux.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace egdg;

TEST_CASE("flux presets")
{
    const FluxParams c = FluxParams::central();
    CHECK(c.alpha == 0.5);
    CHECK(c.tau == 0.0);
    CHECK(c.beta == 0.0);
    const FluxParams a = FluxParams::alternating();
    CHECK((a.alpha == 0.0 || a.alpha == 1.0));
    CHECK(a.tau == 0.0);
    const FluxParams s = FluxParams::sommerfeld(2.0);
    CHECK(s.alpha == 0.5);
    CHECK(s.tau == doctest::Approx(1.0));
    CHECK(s.beta == doctest::Approx(0.25));
    const FluxParams as = FluxParams::alt_sommerfeld(2.0);
    CHECK(as.alpha == 0.0);
    CHECK(as.tau == doctest::Approx(1.0));
    CHECK(as.beta == doctest::Approx(0.25));
    CHECK(FluxParams::from_name("alt-sommerfeld", 1.0).preset == FluxPreset::AltSommerfeld);
    CHECK(preset_name(FluxParams::from_name("central", 1.0).preset) == "central");
    CHECK_THROWS(FluxParams::from_name("upwind", 1.0));
    CHECK_THROWS(FluxParams::sommerfeld(0.0));
}

TEST_CASE("interior_flux examples")
{
    const Vec2 n{1.0, 0.0};
    FaceTrace t{1.0, 3.0, {0.0, 0.0}, {0.0, 0.0}};
    CHECK(interior_flux(t, FluxParams::central(), n).v_star == doctest::Approx(2.0));

    FaceTrace s{1.0, 0.0, {0.0, 0.0}, {0.0, 0.0}};
    CHECK(jump_v(s, n)[0] == 1.0);
    CHECK(jump_grad(s, n) == 0.0);
    const FluxValue f = interior_flux(s, FluxParams::sommerfeld(1.0), n);
    CHECK(f.v_star == doctest::Approx(0.5));
    CHECK(f.grad_star[0] == doctest::Approx(-0.5));
    CHECK(interface_energy_rate(s, FluxParams::sommerfeld(1.0), n) == doctest::Approx(-0.5));
}

TEST_CASE("boundary_flux examples")
{
    const Vec2 n{1.0, 0.0};
    const FluxValue d = boundary_flux(0.7, {0.3, 0.0}, BoundaryParams::dirichlet(), n);
    CHECK(d.v_star == doctest::Approx(0.0));
    CHECK(d.grad_star[0] == doctest::Approx(0.3));
    const FluxValue nm = boundary_flux(0.7, {0.3, 0.0}, BoundaryParams::neumann(), n);
    CHECK(nm.v_star == doctest::Approx(0.7));
    CHECK(std::abs(nm.grad_star[0]) < 1e-16);
    const double r = 1.0 / std::sqrt(2.0);
    const BoundaryParams m{r, r, 0.0};
    const FluxValue mx = boundary_flux(1.0, {1.0, 0.0}, m, n);
    CHECK(std::abs(mx.v_star) < 1e-15);
    CHECK(std::abs(mx.grad_star[0]) < 1e-15);
    CHECK_THROWS(BoundaryParams{0.5, 0.5, 0.0}.validate());
    CHECK_THROWS(BoundaryParams{-1.0, 0.0, 0.0}.validate());
    CHECK_NOTHROW(BoundaryParams{0.6, 0.8, 0.3}.validate());
}

TEST_CASE("flux properties on random traces")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int k = 0; k < 2000; ++k) {
        const double ang = 3.2 * U(rng);
        const Vec2 n{std::cos(ang), std::sin(ang)};
        const FaceTrace t{U(rng), U(rng), {U(rng), U(rng)}, {U(rng), U(rng)}};
        const double xi = 1.5 + U(rng);
        for (const FluxParams& p : {FluxParams::central(), FluxParams::alternating(), FluxParams::alternating(1.0),
                                    FluxParams::sommerfeld(xi), FluxParams::alt_sommerfeld(xi)}) {
            const FluxValue f = interior_flux(t, p, n);
            const double J = interface_functional(t, f, n, 1.3);
            CHECK(std::abs(J - interface_energy_rate(t, p, n, 1.3)) < 1e-13 * 8.0);
            CHECK(interface_energy_rate(t, p, n) <= 0.0);
            if (p.tau == 0.0 && p.beta == 0.0)
                CHECK(std::abs(J) < 1e-13 * 8.0);
            // Swapping sides and flipping the normal gives the same trace.
            const FaceTrace sw{t.v_plus, t.v_minus, t.grad_plus, t.grad_minus};
            FluxParams q = p;
            q.alpha = 1.0 - p.alpha;
            const FluxValue g = interior_flux(sw, q, {-n[0], -n[1]});
            CHECK(std::abs(g.v_star - f.v_star) < 1e-14);
            CHECK(std::abs(g.grad_star[0] - f.grad_star[0]) < 1e-14);
        }
        const double phi = 0.8 * (U(rng) + 1.0);
        const BoundaryParams bp{std::cos(phi), std::sin(phi), 0.25 * (U(rng) + 1.0)};
        const FluxValue f = boundary_flux(t.v_minus, t.grad_minus, bp, n);
        CHECK(std::abs(bp.gamma * f.v_star + bp.eta * dot(f.grad_star, n)) < 1e-14);
        // Tangential gradient untouched.
        const Vec2 tn{-n[1], n[0]};
        CHECK(std::abs(dot(f.grad_star, tn) - dot(t.grad_minus, tn)) < 1e-14);
    }
}

TEST_CASE("boundary dissipation coefficient b")
{
    CHECK(BoundaryParams::dirichlet().b() == 0.0);
    CHECK(BoundaryParams::neumann().b() == 0.0);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(BoundaryParams{r, r, 0.0}.b() == doctest::Approx(0.5));
}
