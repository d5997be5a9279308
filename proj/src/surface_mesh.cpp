#include "wscub/surface_mesh.hpp"

#include "wscub/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

namespace wscub {

namespace {

/// Twice the area divided by the squared longest edge; zero for collinear vertices.
constexpr double kDegenerateShape = 1e-12;

} // namespace

Vec3 equidistant_point(Vec3 a, Vec3 b, Vec3 c) {
    const Vec3 ab = b - a;
    const Vec3 ac = c - a;
    const Vec3 n = cross(ab, ac);
    const double n2 = norm2(n);
    const Vec3 offset = (norm2(ac) * cross(n, ab) + norm2(ab) * cross(ac, n)) / (2.0 * n2);
    const Vec3 centre = a + offset;
    // Barycentric coordinates of the circumcenter.
    const double wb = dot(cross(centre - a, ac), n) / n2;
    const double wc = dot(cross(ab, centre - a), n) / n2;
    const double wa = 1.0 - wb - wc;
    if (wa > 0.0 && wb > 0.0 && wc > 0.0) {
        return centre;
    }
    return (a + b + c) / 3.0;
}

TriangulatedSurface make_surface(std::vector<Vec3> vertices, std::vector<TriangleIndices> triangles, int n_azimuth,
                                 int m_polar) {
    TriangulatedSurface mesh;
    mesh.vertices = std::move(vertices);
    mesh.triangles = std::move(triangles);
    mesh.n_azimuth = n_azimuth;
    mesh.m_polar = m_polar;
    const std::size_t count = mesh.triangles.size();
    mesh.collocation.resize(count);
    mesh.areas.resize(count);
    mesh.normals.resize(count);
    double total = 0.0;
    for (std::size_t t = 0; t < count; ++t) {
        const TriangleIndices& tri = mesh.triangles[t];
        for (std::size_t v : tri) {
            if (v >= mesh.vertices.size()) {
                throw MeshError("triangle " + std::to_string(t) + " references missing vertex " + std::to_string(v),
                                t);
            }
        }
        const Vec3 a = mesh.vertices[tri[0]], b = mesh.vertices[tri[1]], c = mesh.vertices[tri[2]];
        const Vec3 n = cross(b - a, c - a);
        const double twice_area = norm(n);
        const double longest2 = std::max({norm2(b - a), norm2(c - b), norm2(a - c)});
        if (!(twice_area > 0.0) || !std::isfinite(twice_area) || twice_area < kDegenerateShape * longest2) {
            throw MeshError("triangle " + std::to_string(t) + " is degenerate", t);
        }
        mesh.areas[t] = 0.5 * twice_area;
        mesh.normals[t] = n / twice_area;
        mesh.collocation[t] = equidistant_point(a, b, c);
        total += mesh.areas[t];
    }
    mesh.total_area = total;
    return mesh;
}

StarShape::StarShape(RadialFunction rho, std::string description)
    : rho_(std::move(rho)), description_(std::move(description)) {}

StarShape StarShape::sphere(double a) {
    if (!(a > 0.0)) {
        throw ArgumentError("sphere radius must be positive");
    }
    return StarShape([a](Vec3) { return a; }, "sphere:" + std::to_string(a));
}

StarShape StarShape::ellipsoid(double a, double b, double c) {
    if (!(a > 0.0 && b > 0.0 && c > 0.0)) {
        throw ArgumentError("ellipsoid semi-axes must be positive");
    }
    const double ia = 1.0 / (a * a), ib = 1.0 / (b * b), ic = 1.0 / (c * c);
    return StarShape(
        [ia, ib, ic](Vec3 d) { return 1.0 / std::sqrt(d.x * d.x * ia + d.y * d.y * ib + d.z * d.z * ic); },
        "ellipsoid:" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c));
}

StarShape StarShape::sampled(std::vector<std::vector<double>> table) {
    const std::size_t n_phi = table.size();
    if (n_phi < 1 || table[0].size() < 2) {
        throw ArgumentError("sampled shape needs at least one azimuth row and two polar samples");
    }
    const std::size_t n_theta = table[0].size();
    for (const auto& row : table) {
        if (row.size() != n_theta) {
            throw ArgumentError("sampled shape rows must have equal length");
        }
        for (double r : row) {
            if (!(r > 0.0) || !std::isfinite(r)) {
                throw ArgumentError("sampled shape radii must be positive and finite");
            }
        }
        if (row.front() != table[0].front() || row.back() != table[0].back()) {
            throw ArgumentError("sampled shape must be single-valued at the poles");
        }
    }
    auto rho = [table = std::move(table), n_phi, n_theta](Vec3 d) {
        const double theta = std::acos(std::clamp(d.z, -1.0, 1.0));
        double phi = std::atan2(d.y, d.x);
        if (phi < 0.0) {
            phi += 2.0 * pi;
        }
        const double u = phi / (2.0 * pi) * static_cast<double>(n_phi);
        const double v = theta / pi * static_cast<double>(n_theta - 1);
        const std::size_t i0 = static_cast<std::size_t>(std::floor(u)) % n_phi;
        const std::size_t i1 = (i0 + 1) % n_phi;
        const std::size_t j0 = std::min(static_cast<std::size_t>(std::floor(v)), n_theta - 2);
        const double fu = u - std::floor(u);
        const double fv = v - static_cast<double>(j0);
        const double r0 = (1.0 - fu) * table[i0][j0] + fu * table[i1][j0];
        const double r1 = (1.0 - fu) * table[i0][j0 + 1] + fu * table[i1][j0 + 1];
        return (1.0 - fv) * r0 + fv * r1;
    };
    return StarShape(std::move(rho), "sampled");
}

TriangulatedSurface triangulate_sphere(int n, int m) {
    if (n < 3) {
        throw ArgumentError("triangulate_sphere: n must be >= 3");
    }
    if (m < 2 || m % 2 != 0) {
        throw ArgumentError("triangulate_sphere: m must be even and >= 2");
    }
    std::vector<Vec3> vertices;
    vertices.reserve(static_cast<std::size_t>(n) * (m - 1) + 2);
    vertices.push_back({0.0, 0.0, 1.0});
    for (int l = 1; l < m; ++l) {
        const double theta = pi * l / m;
        for (int k = 0; k < n; ++k) {
            const double phi = 2.0 * pi * k / n;
            vertices.push_back({std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)});
        }
    }
    vertices.push_back({0.0, 0.0, -1.0});
    const std::size_t north = 0;
    const std::size_t south = vertices.size() - 1;
    auto ring = [n](int l, int k) { return 1 + static_cast<std::size_t>(l - 1) * n + static_cast<std::size_t>(k % n); };

    std::vector<TriangleIndices> triangles;
    triangles.reserve(2 * static_cast<std::size_t>(n) * (m - 1));
    for (int k = 0; k < n; ++k) {
        triangles.push_back({north, ring(1, k), ring(1, k + 1)});
    }
    for (int l = 1; l < m - 1; ++l) {
        for (int k = 0; k < n; ++k) {
            const std::size_t a = ring(l, k), b = ring(l, k + 1);
            const std::size_t d = ring(l + 1, k), c = ring(l + 1, k + 1);
            triangles.push_back({a, d, c});
            triangles.push_back({a, c, b});
        }
    }
    for (int k = 0; k < n; ++k) {
        triangles.push_back({south, ring(m - 1, k + 1), ring(m - 1, k)});
    }
    return make_surface(std::move(vertices), std::move(triangles), n, m);
}

TriangulatedSurface project_to_surface(const TriangulatedSurface& sphere_mesh, const StarShape& shape) {
    std::vector<Vec3> vertices;
    vertices.reserve(sphere_mesh.vertices.size());
    for (std::size_t v = 0; v < sphere_mesh.vertices.size(); ++v) {
        const Vec3 dir = normalized(sphere_mesh.vertices[v]);
        const double r = shape.radius(dir);
        if (!(r > 0.0) || !std::isfinite(r)) {
            throw MeshError("shape radius is not positive in the direction of vertex " + std::to_string(v));
        }
        vertices.push_back(r * dir);
    }
    return make_surface(std::move(vertices), sphere_mesh.triangles, sphere_mesh.n_azimuth, sphere_mesh.m_polar);
}

TriangulatedSurface scaled(const TriangulatedSurface& mesh, double factor) {
    std::vector<Vec3> vertices = mesh.vertices;
    for (Vec3& v : vertices) {
        v = factor * v;
    }
    return make_surface(std::move(vertices), mesh.triangles, mesh.n_azimuth, mesh.m_polar);
}

bool is_closed_oriented(const TriangulatedSurface& mesh) {
    std::map<std::pair<std::size_t, std::size_t>, int> directed;
    for (const TriangleIndices& tri : mesh.triangles) {
        for (int e = 0; e < 3; ++e) {
            ++directed[{tri[e], tri[(e + 1) % 3]}];
        }
    }
    for (const auto& [edge, count] : directed) {
        if (count != 1) {
            return false;
        }
        const auto twin = directed.find({edge.second, edge.first});
        if (twin == directed.end() || twin->second != 1) {
            return false;
        }
    }
    return !mesh.triangles.empty();
}

} // namespace wscub
