#include "egdg/mesh.hpp"

#include <algorithm>
#include <stdexcept>

namespace egdg {

Vec2 Cell::map(const Vec2& xi, int dim) const
{
    Vec2 x{};
    for (int a = 0; a < dim; ++a)
        x[a] = lo[a] + 0.5 * (xi[a] + 1.0) * (hi[a] - lo[a]);
    return x;
}

int Mesh::num_interior_faces() const
{
    return static_cast<int>(std::count_if(faces.begin(), faces.end(), [](const Face& f) { return !f.boundary(); }));
}

int Mesh::num_boundary_faces() const { return static_cast<int>(faces.size()) - num_interior_faces(); }

double Mesh::min_size() const { return dim == 1 ? h[0] : std::min(h[0], h[1]); }

namespace {

Face make_face(int ea, int la, int eb, int lb, int axis, double measure)
{
    // Orient so that elem1 is the lower index; n1 follows from elem1's local face.
    Face f;
    if (eb >= 0 && eb < ea) {
        std::swap(ea, eb);
        std::swap(la, lb);
    }
    f.elem1 = ea;
    f.local1 = la;
    f.elem2 = eb;
    f.local2 = lb;
    f.axis = axis;
    f.n1 = {0.0, 0.0};
    f.n1[axis] = (la % 2 == 0) ? -1.0 : 1.0;
    f.measure = measure;
    return f;
}

} // namespace

Mesh build_interval_mesh(double a, double b, int n, bool periodic)
{
    if (!(a < b))
        throw std::invalid_argument("build_interval_mesh: require a < b");
    if (n < 1)
        throw std::invalid_argument("build_interval_mesh: require at least one cell");

    Mesh mesh;
    mesh.dim = 1;
    mesh.domain = {a, b, 0.0, 0.0};
    mesh.periodic = periodic;
    const double h = (b - a) / n;
    mesh.h = {h, 0.0};
    for (int j = 0; j < n; ++j) {
        // Last vertex pinned to b so the cells tile exactly.
        const double lo = a + j * h;
        const double hi = (j == n - 1) ? b : a + (j + 1) * h;
        mesh.cells.push_back({{lo, 0.0}, {hi, 0.0}});
    }
    mesh.cell_faces.assign(n, {-1, -1, -1, -1});

    auto add = [&](Face f) {
        const int id = static_cast<int>(mesh.faces.size());
        mesh.cell_faces[f.elem1][f.local1] = id;
        if (!f.boundary())
            mesh.cell_faces[f.elem2][f.local2] = id;
        mesh.faces.push_back(f);
    };

    if (periodic)
        add(make_face(n - 1, 1, 0, 0, 0, 1.0));
    else
        add(make_face(0, 0, -1, -1, 0, 1.0));
    for (int j = 0; j + 1 < n; ++j)
        add(make_face(j, 1, j + 1, 0, 0, 1.0));
    if (!periodic)
        add(make_face(n - 1, 1, -1, -1, 0, 1.0));
    return mesh;
}

Mesh build_cartesian_mesh(const Rectangle& domain, int nx, int ny, bool periodic)
{
    if (!(domain.x0 < domain.x1) || !(domain.y0 < domain.y1))
        throw std::invalid_argument("build_cartesian_mesh: degenerate rectangle");
    if (nx < 1 || ny < 1)
        throw std::invalid_argument("build_cartesian_mesh: require nx, ny >= 1");

    Mesh mesh;
    mesh.dim = 2;
    mesh.domain = domain;
    mesh.periodic = periodic;
    const double hx = (domain.x1 - domain.x0) / nx;
    const double hy = (domain.y1 - domain.y0) / ny;
    mesh.h = {hx, hy};

    auto xv = [&](int i) { return i == nx ? domain.x1 : domain.x0 + i * hx; };
    auto yv = [&](int j) { return j == ny ? domain.y1 : domain.y0 + j * hy; };
    auto id = [&](int i, int j) { return j * nx + i; };

    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            mesh.cells.push_back({{xv(i), yv(j)}, {xv(i + 1), yv(j + 1)}});
    mesh.cell_faces.assign(nx * ny, {-1, -1, -1, -1});

    auto add = [&](Face f) {
        const int fid = static_cast<int>(mesh.faces.size());
        mesh.cell_faces[f.elem1][f.local1] = fid;
        if (!f.boundary())
            mesh.cell_faces[f.elem2][f.local2] = fid;
        mesh.faces.push_back(f);
    };

    // x-normal faces (axis 0), measure hy
    for (int j = 0; j < ny; ++j) {
        if (periodic)
            add(make_face(id(nx - 1, j), 1, id(0, j), 0, 0, hy));
        else
            add(make_face(id(0, j), 0, -1, -1, 0, hy));
        for (int i = 0; i + 1 < nx; ++i)
            add(make_face(id(i, j), 1, id(i + 1, j), 0, 0, hy));
        if (!periodic)
            add(make_face(id(nx - 1, j), 1, -1, -1, 0, hy));
    }
    // y-normal faces (axis 1), measure hx
    for (int i = 0; i < nx; ++i) {
        if (periodic)
            add(make_face(id(i, ny - 1), 3, id(i, 0), 2, 1, hx));
        else
            add(make_face(id(i, 0), 2, -1, -1, 1, hx));
        for (int j = 0; j + 1 < ny; ++j)
            add(make_face(id(i, j), 3, id(i, j + 1), 2, 1, hx));
        if (!periodic)
            add(make_face(id(i, ny - 1), 3, -1, -1, 1, hx));
    }
    return mesh;
}

} // namespace egdg
