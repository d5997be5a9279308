#include "wscub/errors.hpp"
#include "wscub/surface_mesh.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

using namespace wscub;

TEST_CASE("triangle counts follow 2 n (m - 1)") {
    CHECK(triangulate_sphere(40, 30).size() == 2320);
    CHECK(triangulate_sphere(50, 40).size() == 3900);
    CHECK(triangulate_sphere(60, 50).size() == 5880);
    const auto tiny = triangulate_sphere(3, 2);
    CHECK(tiny.size() == 6);
    CHECK(tiny.vertices.size() == 5);
    CHECK_THROWS_AS(triangulate_sphere(8, 5), ArgumentError);
    CHECK_THROWS_AS(triangulate_sphere(2, 4), ArgumentError);
    CHECK_THROWS_AS(triangulate_sphere(8, 0), ArgumentError);
}

TEST_CASE("sphere meshes are closed, outward and inscribed") {
    double previous = 0.0;
    for (auto [n, m] : {std::pair{8, 6}, std::pair{20, 16}, std::pair{40, 30}, std::pair{80, 60}}) {
        const auto mesh = triangulate_sphere(n, m);
        CHECK(is_closed_oriented(mesh));
        for (std::size_t t = 0; t < mesh.size(); ++t) {
            CHECK(dot(mesh.normals[t], mesh.collocation[t]) > 0.0);
            CHECK(std::abs(norm(mesh.normals[t]) - 1.0) < 1e-14);
        }
        CHECK(mesh.total_area < 4 * pi);
        CHECK(mesh.total_area > previous);
        previous = mesh.total_area;
    }
    CHECK(previous == doctest::Approx(4 * pi).epsilon(2e-3));
}

TEST_CASE("collocation point is equidistant or the barycenter") {
    const Vec3 a{0, 0, 0}, b{2, 0, 0}, c{1, 1.5, 0};
    const Vec3 p = equidistant_point(a, b, c);
    CHECK(p.x == doctest::Approx(1.0));
    CHECK(p.y == doctest::Approx(1.25 / 3));
    // Obtuse: the circumcenter falls outside.
    const Vec3 q = equidistant_point(a, b, Vec3{1, 0.1, 0});
    CHECK(q.x == doctest::Approx(1.0));
    CHECK(q.y == doctest::Approx(0.1 / 3));

    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 500; ++trial) {
        const Vec3 u{gauss(rng), gauss(rng), gauss(rng)}, v{gauss(rng), gauss(rng), gauss(rng)},
            w{gauss(rng), gauss(rng), gauss(rng)};
        const Vec3 e = equidistant_point(u, v, w);
        const double du = norm(e - u), dv = norm(e - v), dw = norm(e - w);
        const Vec3 bary = (1.0 / 3.0) * (u + v + w);
        const bool is_bary = norm(e - bary) < 1e-12 * (1 + norm(bary));
        const bool is_circ = std::abs(du - dv) < 1e-9 * du && std::abs(du - dw) < 1e-9 * du;
        CHECK((is_bary || is_circ));
    }
}

TEST_CASE("projection onto shapes") {
    const auto sphere = triangulate_sphere(16, 12);
    const auto same = project_to_surface(sphere, StarShape::sphere(1.0));
    for (std::size_t v = 0; v < sphere.vertices.size(); ++v) {
        CHECK(norm(same.vertices[v] - sphere.vertices[v]) < 1e-15);
    }
    const auto ell = project_to_surface(sphere, StarShape::ellipsoid(1.0, 1.0, 0.5));
    CHECK(ell.size() == sphere.size());
    CHECK(is_closed_oriented(ell));
    for (const Vec3& v : ell.vertices) {
        CHECK(v.x * v.x + v.y * v.y + 4 * v.z * v.z == doctest::Approx(1.0).epsilon(1e-12));
    }
    const auto big = project_to_surface(sphere, StarShape::sphere(3.0));
    CHECK(big.total_area == doctest::Approx(9 * sphere.total_area).epsilon(1e-12));

    CHECK_THROWS_AS(StarShape::sphere(0.0), ArgumentError);
    CHECK_THROWS_AS(StarShape::ellipsoid(1, -1, 1), ArgumentError);
}

TEST_CASE("pinched shapes are rejected with the triangle named") {
    const auto sphere = triangulate_sphere(8, 4);
    const double ring_z = std::cos(pi / 4);
    const StarShape pinched([ring_z](Vec3 d) { return std::abs(d.z - ring_z) < 1e-9 ? 1e-14 : 1.0; }, "pinched");
    try {
        project_to_surface(sphere, pinched);
        FAIL("expected MeshError");
    } catch (const MeshError& e) {
        CHECK(e.triangle() == 0);
    }
    const StarShape hole([](Vec3 d) { return d.z > 0.99 ? 0.0 : 1.0; }, "hole");
    CHECK_THROWS_AS(project_to_surface(sphere, hole), MeshError);
}

TEST_CASE("sampled star shapes") {
    std::vector<std::vector<double>> table(6, std::vector<double>(5, 2.0));
    const auto mesh = project_to_surface(triangulate_sphere(12, 8), StarShape::sampled(table));
    for (const Vec3& v : mesh.vertices) {
        CHECK(norm(v) == doctest::Approx(2.0));
    }
    table[2][0] = 3.0;
    CHECK_THROWS_AS(StarShape::sampled(table), ArgumentError);
    CHECK_THROWS_AS(StarShape::sampled({{1.0}}), ArgumentError);
}

TEST_CASE("scaling multiplies areas by the square") {
    const auto mesh = triangulate_sphere(10, 8);
    const auto twice = scaled(mesh, 2.0);
    CHECK(twice.total_area == doctest::Approx(4 * mesh.total_area).epsilon(1e-14));
    CHECK(twice.n_azimuth == 10);
    CHECK(twice.m_polar == 8);
}

TEST_CASE("make_surface validation") {
    CHECK_THROWS_AS(make_surface({{0, 0, 0}, {1, 0, 0}}, {{0, 1, 2}}), MeshError);
    try {
        make_surface({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {0, 1, 0}}, {{0, 1, 3}, {0, 1, 2}});
        FAIL("expected MeshError");
    } catch (const MeshError& e) {
        CHECK(e.triangle() == 1);
    }
    // An open mesh is valid but not closed.
    const auto open = make_surface({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2}});
    CHECK_FALSE(is_closed_oriented(open));
    // Flipping one triangle breaks the orientation.
    auto mesh = triangulate_sphere(6, 4);
    auto tris = mesh.triangles;
    std::swap(tris[3][1], tris[3][2]);
    CHECK_FALSE(is_closed_oriented(make_surface(mesh.vertices, tris)));
}

TEST_CASE("wsmesh round trip") {
    const auto mesh = project_to_surface(triangulate_sphere(3, 2), StarShape::ellipsoid(1.0, 2.0, 0.3));
    CHECK(mesh.size() == 6);
    const auto back = mesh_from_string(mesh_to_string(mesh));
    CHECK(back.triangles == mesh.triangles);
    REQUIRE(back.vertices.size() == mesh.vertices.size());
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
        CHECK(back.vertices[v].x == mesh.vertices[v].x);
        CHECK(back.vertices[v].y == mesh.vertices[v].y);
        CHECK(back.vertices[v].z == mesh.vertices[v].z);
    }
    const auto path = (std::filesystem::temp_directory_path() / "wscub_roundtrip.wsmesh").string();
    mesh_io_write(mesh, path);
    const auto file = mesh_io_read(path);
    CHECK(file.triangles == mesh.triangles);
    CHECK(file.total_area == mesh.total_area);
    std::filesystem::remove(path);
}

TEST_CASE("wsmesh parse errors carry line numbers") {
    auto line_of = [](const std::string& text) -> std::size_t {
        try {
            mesh_from_string(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 999;
    };
    CHECK(line_of("") == 0);
    CHECK(line_of("mesh 2\n") == 1);
    CHECK(line_of("wsmesh 1\n3 1\nv 0 0 0\nv 1 0 0\nv 0 1 0\nt 0 1 3\n") == 6);
    CHECK(line_of("wsmesh 1\n3 1\nv 0 0 0\nv 1 zero 0\nv 0 1 0\nt 0 1 2\n") == 4);
    CHECK(line_of("wsmesh 1\n3 1\nv 0 0 0\nv 1 0 0\n") == 0);
    CHECK(line_of("wsmesh 1\n3 1\nv 0 0 0\nv 1 0 0\nv 0 1 0\nt 0 1 2\nt 0 1 2\n") == 7);
    CHECK_THROWS_AS(mesh_io_read("/nonexistent/dir/mesh.wsmesh"), ParseError);
}

TEST_CASE("triangle soup merges shared vertices") {
    const std::string soup = "# two triangles sharing an edge\n"
                             "0 0 0  1 0 0  0 1 0\n"
                             "\n"
                             "1 0 0  1 1 0  0 1 0  # trailing comment\n";
    const auto mesh = mesh_from_triangle_soup(soup);
    CHECK(mesh.size() == 2);
    CHECK(mesh.vertices.size() == 4);
    CHECK(mesh.total_area == doctest::Approx(1.0));
    try {
        mesh_from_triangle_soup("0 0 0 1 0 0 0 1\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
    }
    CHECK_THROWS_AS(mesh_from_triangle_soup("# nothing\n"), ParseError);
}
