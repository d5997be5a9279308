#pragma once

#include "wscub/geometry.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace wscub {

using TriangleIndices = std::array<std::size_t, 3>;

/// Flat-panel surface with per-triangle collocation point, area and outward normal.
struct TriangulatedSurface {
    std::vector<Vec3> vertices;
    std::vector<TriangleIndices> triangles;
    /// Point of each triangle equidistant from its vertices (barycenter for obtuse triangles).
    std::vector<Vec3> collocation;
    std::vector<double> areas;
    std::vector<Vec3> normals;
    double total_area = 0.0;
    /// Structured-mesh parameters; 0 when the mesh did not come from triangulate_sphere.
    int n_azimuth = 0;
    int m_polar = 0;

    std::size_t size() const noexcept { return triangles.size(); }
};

/// Builds the per-triangle geometry. Throws MeshError naming the first
/// degenerate triangle or out-of-range index.
TriangulatedSurface make_surface(std::vector<Vec3> vertices, std::vector<TriangleIndices> triangles,
                                 int n_azimuth = 0, int m_polar = 0);

/// Circumcenter of the triangle when it lies inside, barycenter otherwise.
Vec3 equidistant_point(Vec3 a, Vec3 b, Vec3 c);

/// Radial description rho(direction) of a surface star-shaped about the origin.
class StarShape {
public:
    using RadialFunction = std::function<double(Vec3 unit_direction)>;

    StarShape(RadialFunction rho, std::string description);

    static StarShape sphere(double a);
    static StarShape ellipsoid(double a, double b, double c);
    /// Table rho[i][j] at phi_i = 2 pi i / n_phi, theta_j = pi j / (n_theta - 1), bilinear in between.
    /// The first and last columns (the poles) must be constant in phi.
    static StarShape sampled(std::vector<std::vector<double>> table);

    double radius(Vec3 unit_direction) const { return rho_(unit_direction); }
    const std::string& description() const noexcept { return description_; }

private:
    RadialFunction rho_;
    std::string description_;
};

/// Structured unit-sphere triangulation: pole fans of n triangles and 2n per
/// interior latitude band, N = 2 n (m - 1) in total. Requires n >= 3 and even m >= 2.
TriangulatedSurface triangulate_sphere(int n, int m);

/// Moves every vertex v to rho(v/|v|) v/|v| and recomputes panel geometry.
TriangulatedSurface project_to_surface(const TriangulatedSurface& sphere_mesh, const StarShape& shape);

/// Multiplies every vertex by `factor`.
TriangulatedSurface scaled(const TriangulatedSurface& mesh, double factor);

/// True when every undirected edge belongs to exactly two triangles traversed in opposite directions.
bool is_closed_oriented(const TriangulatedSurface& mesh);

/// Writes the "wsmesh 1" text format.
void mesh_io_write(const TriangulatedSurface& mesh, const std::string& path);
std::string mesh_to_string(const TriangulatedSurface& mesh);

/// Reads the "wsmesh 1" text format; ParseError carries the offending line.
TriangulatedSurface mesh_io_read(const std::string& path);
TriangulatedSurface mesh_from_string(const std::string& text);

/// Triangle soup: one triangle per line as nine coordinates; '#' starts a comment.
/// Coincident vertices are merged exactly.
TriangulatedSurface mesh_from_triangle_soup(const std::string& text);

} // namespace wscub
