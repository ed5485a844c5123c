#ifndef EGDG_MESH_HPP
#define EGDG_MESH_HPP

#include <array>
#include <vector>

namespace egdg {

using Vec2 = std::array<double, 2>;

/// Axis-aligned cell. The unused y extent of 1D cells is [0, 0].
struct Cell {
    Vec2 lo{};
    Vec2 hi{};

    Vec2 size() const { return {hi[0] - lo[0], hi[1] - lo[1]}; }
    double measure(int dim) const { return dim == 1 ? size()[0] : size()[0] * size()[1]; }
    /// Physical point of reference coordinate xi.
    Vec2 map(const Vec2& xi, int dim) const;
};

/// A face shared by elem1 and elem2, or a physical boundary face of elem1
/// (elem2 == -1). `n1` is the unit outward normal of elem1; elem1 is always
/// the lower element index on interior faces.
struct Face {
    int elem1 = -1;
    int elem2 = -1;
    int local1 = -1;
    int local2 = -1;
    Vec2 n1{};
    int axis = 0;
    double measure = 1.0;

    bool boundary() const { return elem2 < 0; }
};

struct Rectangle {
    double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
};

struct Mesh {
    int dim = 1;
    Rectangle domain;
    std::vector<Cell> cells;
    std::vector<Face> faces;
    /// cell_faces[e][lf] is the face id at local face lf (2 * axis + side).
    std::vector<std::array<int, 4>> cell_faces;
    Vec2 h{};
    bool periodic = false;

    int num_cells() const { return static_cast<int>(cells.size()); }
    int num_interior_faces() const;
    int num_boundary_faces() const;
    /// Smallest cell extent over active directions.
    double min_size() const;
};

Mesh build_interval_mesh(double a, double b, int n, bool periodic = false);
Mesh build_cartesian_mesh(const Rectangle& domain, int nx, int ny, bool periodic = false);

} // namespace egdg

#endif
