#include "oracles.hpp"

#include "wscub/errors.hpp"
#include "wscub/kernels.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace wscub;

TEST_CASE("singular exponent must lie strictly between 0 and 1") {
    CHECK_NOTHROW(SingularExponent(0.5));
    CHECK_THROWS_AS(SingularExponent(0.0), ArgumentError);
    CHECK_THROWS_AS(SingularExponent(1.0), ArgumentError);
    CHECK_THROWS_AS(SingularExponent(-0.2), ArgumentError);
    CHECK_THROWS_AS(SingularExponent(std::nan("")), ArgumentError);
}

TEST_CASE("surface point rejects non-unit normals") {
    CHECK_NOTHROW(SurfacePoint({0, 0, 1}, {0, 0, 1}));
    CHECK_THROWS_AS(SurfacePoint({0, 0, 1}, {0, 0, 1.001}), ArgumentError);
    CHECK_THROWS_AS(SurfacePoint({0, 0, 1}, {0, 0, 0}), ArgumentError);
}

TEST_CASE("periodic kernel values") {
    const SingularExponent half(0.5);
    CHECK(periodic_kernel({pi, pi}, {0, 0}, half) == doctest::Approx(0.7071067811865476).epsilon(1e-15));
    CHECK(periodic_kernel({pi, 0}, {0, 0}, half) == doctest::Approx(1.0).epsilon(1e-15));
    const double v = periodic_kernel({1.1, 2.2}, {1.0, 2.0}, SingularExponent(0.3));
    CHECK(v == doctest::Approx(oracle::periodic_kernel_hp(0.1, 0.2, 0.3)).epsilon(1e-14));
}

TEST_CASE("periodic kernel rejects coincident points, including periodic images") {
    const SingularExponent lam(0.4);
    CHECK_THROWS_AS(periodic_kernel({1, 2}, {1, 2}, lam), DomainError);
    CHECK_THROWS_AS(periodic_kernel({0, 0}, {2 * pi, 2 * pi}, lam), DomainError);
    CHECK_NOTHROW(periodic_kernel({0, 0}, {1e-10, 0}, lam));
}

TEST_CASE("planar kernel values") {
    CHECK(planar_kernel({3, 4}, {0, 0}, SingularExponent(0.5)) == doctest::Approx(0.2).epsilon(1e-15));
    for (double lam : {0.1, 0.5, 0.9}) {
        CHECK(planar_kernel({1, 0}, {0, 0}, SingularExponent(lam)) == doctest::Approx(1.0).epsilon(1e-15));
    }
    CHECK(planar_kernel({0.5, 0.5}, {0, 0}, SingularExponent(0.75)) ==
          doctest::Approx(std::pow(0.5, -0.75)).epsilon(1e-14));
    CHECK(std::pow(0.5, -0.75) == doctest::Approx(1.6817928).epsilon(1e-7));
    CHECK_THROWS_AS(planar_kernel({0.3, 0.3}, {0.3, 0.3}, SingularExponent(0.5)), DomainError);
}

TEST_CASE("newton kernel") {
    CHECK(newton_kernel({0, 0, 0}, {1, 2, 2}) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(newton_kernel({1e-3, 0, 0}, {0, 0, 0}) == doctest::Approx(1e3).epsilon(1e-12));
    CHECK_THROWS_AS(newton_kernel({1, 1, 1}, {1, 1, 1}), DomainError);
}

TEST_CASE("dipole kernel") {
    CHECK(dipole_kernel(SurfacePoint({1, 0, 0}, {1, 0, 0}), {-1, 0, 0}) == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(dipole_kernel(SurfacePoint({0, 0, 0}, {0, 0, 1}), {1, 2, 0}) == 0.0);
    CHECK(dipole_kernel(SurfacePoint({0.3, 0.1, 2.0}, {0, 0, 1}), {-0.5, 0.7, 2.0}) == 0.0);
    CHECK_THROWS_AS(dipole_kernel(SurfacePoint({1, 0, 0}, {1, 0, 0}), {1, 0, 0}), DomainError);
}

TEST_CASE("kernel properties on seeded random samples") {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const SingularExponent lam(0.05 + 0.9 * u(rng));
        const Vec2 sigma{2 * pi * u(rng), 2 * pi * u(rng)};
        const Vec2 s{2 * pi * u(rng), 2 * pi * u(rng)};
        const double base = periodic_kernel(sigma, s, lam);
        CHECK(base > 0.0);
        CHECK(periodic_kernel(sigma + Vec2{2 * pi, 0}, s, lam) == doctest::Approx(base).epsilon(1e-12));
        CHECK(periodic_kernel(sigma + Vec2{0, 2 * pi}, s, lam) == doctest::Approx(base).epsilon(1e-12));
        CHECK(periodic_kernel(sigma, s + Vec2{0, -2 * pi}, lam) == doctest::Approx(base).epsilon(1e-12));

        // Planar: rotation about a random centre, and homogeneity.
        const Vec2 tau{2 * u(rng) - 1, 2 * u(rng) - 1}, t{2 * u(rng) - 1, 2 * u(rng) - 1};
        const Vec2 centre{4 * u(rng) - 2, 4 * u(rng) - 2};
        const double angle = 2 * pi * u(rng);
        auto rotate = [&](Vec2 p) {
            const Vec2 d = p - centre;
            return centre + Vec2{std::cos(angle) * d.x - std::sin(angle) * d.y,
                                 std::sin(angle) * d.x + std::cos(angle) * d.y};
        };
        const double plane = planar_kernel(tau, t, lam);
        CHECK(planar_kernel(rotate(tau), rotate(t), lam) == doctest::Approx(plane).epsilon(1e-12));
        const double c = 0.1 + 5 * u(rng);
        CHECK(planar_kernel(c * tau, c * t, lam) ==
              doctest::Approx(std::pow(c, -2 * lam.value()) * plane).epsilon(1e-12));

        // Sphere identity for the dipole kernel.
        const double a = 0.2 + 3 * u(rng);
        auto on_sphere = [&] {
            const double z = 2 * u(rng) - 1, ph = 2 * pi * u(rng), r = std::sqrt(1 - z * z);
            return Vec3{r * std::cos(ph), r * std::sin(ph), z};
        };
        const Vec3 nt = on_sphere(), ns = on_sphere();
        const Vec3 pt = a * nt, ps = a * ns;
        if (norm(pt - ps) < 1e-6) {
            continue;
        }
        const double d = dipole_kernel(SurfacePoint(pt, nt), ps);
        CHECK(d * 2 * a * norm(pt - ps) == doctest::Approx(-1.0).epsilon(1e-10));
        CHECK(newton_kernel(pt, ps) == newton_kernel(ps, pt));
    }
}
