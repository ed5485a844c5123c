#include "egdg/mesh.hpp"

#include <doctest.h>

#include <cmath>

using namespace egdg;

namespace {

void check_topology(const Mesh& m)
{
    double area = 0.0;
    for (const Cell& c : m.cells)
        area += c.measure(m.dim);
    const Rectangle& d = m.domain;
    const double expected = m.dim == 1 ? d.x1 - d.x0 : (d.x1 - d.x0) * (d.y1 - d.y0);
    CHECK(std::abs(area - expected) < 1e-12 * expected);
    for (size_t fi = 0; fi < m.faces.size(); ++fi) {
        const Face& f = m.faces[fi];
        CHECK(std::abs(std::hypot(f.n1[0], f.n1[1]) - 1.0) < 1e-15);
        CHECK(m.cell_faces[f.elem1][f.local1] == static_cast<int>(fi));
        // Outward normal of elem1 points away from its centre.
        const Cell& c = m.cells[f.elem1];
        const double sgn = f.local1 % 2 == 0 ? -1.0 : 1.0;
        CHECK(f.n1[f.axis] == sgn);
        (void)c;
        if (!f.boundary()) {
            CHECK(f.elem1 < f.elem2);
            CHECK(m.cell_faces[f.elem2][f.local2] == static_cast<int>(fi));
            CHECK(f.local2 / 2 == f.local1 / 2);
            CHECK(f.local2 != f.local1);
        }
    }
}

} // namespace

TEST_CASE("build_interval_mesh")
{
    const Mesh m = build_interval_mesh(-20.0, 20.0, 400);
    CHECK(m.num_cells() == 400);
    CHECK(m.h[0] == doctest::Approx(0.1));
    CHECK(m.min_size() == doctest::Approx(0.1));
    CHECK(m.num_interior_faces() == 399);
    CHECK(m.num_boundary_faces() == 2);
    check_topology(m);

    const Mesh one = build_interval_mesh(0.0, 1.0, 1);
    CHECK(one.num_cells() == 1);
    CHECK(one.num_interior_faces() == 0);

    const Mesh two = build_interval_mesh(0.0, 2.0, 2);
    CHECK(two.cells[0].lo[0] == 0.0);
    CHECK(two.cells[0].hi[0] == 1.0);
    CHECK(two.cells[1].hi[0] == 2.0);
    for (const Face& f : two.faces)
        if (!f.boundary()) {
            CHECK(f.elem1 == 0);
            CHECK(f.n1[0] == 1.0);
        }

    const Mesh p = build_interval_mesh(0.0, 1.0, 4, true);
    CHECK(p.num_boundary_faces() == 0);
    CHECK(p.num_interior_faces() == 4);
    check_topology(p);

    CHECK_THROWS(build_interval_mesh(0.0, 1.0, 0));
    CHECK_THROWS(build_interval_mesh(1.0, 0.0, 4));
}

TEST_CASE("build_cartesian_mesh")
{
    const Mesh m = build_cartesian_mesh({0.0, 1.0, 0.0, 1.0}, 5, 5);
    CHECK(m.num_cells() == 25);
    CHECK(m.num_interior_faces() == 40);
    CHECK(m.num_boundary_faces() == 20);
    CHECK(m.h[0] == doctest::Approx(0.2));
    CHECK(m.h[1] == doctest::Approx(0.2));
    check_topology(m);

    const Mesh one = build_cartesian_mesh({0.0, 1.0, 0.0, 1.0}, 1, 1);
    CHECK(one.num_cells() == 1);
    CHECK(one.num_boundary_faces() == 4);

    const Mesh r = build_cartesian_mesh({0.0, 2.0, -1.0, 1.0}, 4, 3);
    CHECK(r.num_cells() == 12);
    CHECK(r.num_interior_faces() == 3 * 3 + 4 * 2);
    check_topology(r);

    const Mesh p = build_cartesian_mesh({0.0, 1.0, 0.0, 1.0}, 3, 3, true);
    CHECK(p.num_boundary_faces() == 0);
    CHECK(p.num_interior_faces() == 18);
    check_topology(p);
}

TEST_CASE("Cell::map")
{
    const Cell c{{1.0, 2.0}, {3.0, 6.0}};
    const Vec2 x = c.map({-1.0, 1.0}, 2);
    CHECK(x[0] == doctest::Approx(1.0));
    CHECK(x[1] == doctest::Approx(6.0));
    CHECK(c.map({0.0, 0.0}, 1)[0] == doctest::Approx(2.0));
}
