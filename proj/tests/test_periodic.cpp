#include "oracles.hpp"

#include "wscub/errors.hpp"
#include "wscub/periodic_cubature.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace wscub;

TEST_CASE("gamma_constant against the dyadic oracle") {
    CHECK(gamma_constant(SingularExponent(0.5), 1e-6) == doctest::Approx(oracle::gamma_dyadic(0.5)).epsilon(1e-6));
    for (double lam : {0.1, 0.25, 0.75, 0.9}) {
        CAPTURE(lam);
        CHECK(gamma_constant(SingularExponent(lam), 1e-6) ==
              doctest::Approx(oracle::gamma_dyadic(lam)).epsilon(1e-5));
    }
    CHECK(gamma_constant(SingularExponent(1e-3), 1e-6) == doctest::Approx(4 * pi * pi).epsilon(1e-2));
    CHECK(gamma_constant(SingularExponent(0.9), 1e-4) > 0.0);
}

TEST_CASE("gamma_constant reports the best estimate when the tolerance is out of reach") {
    CHECK_THROWS_AS(gamma_constant(SingularExponent(0.5), 0.0), ArgumentError);
    try {
        gamma_constant(SingularExponent(0.5), 1e-18);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.best_estimate() == doctest::Approx(oracle::gamma_dyadic(0.5)).epsilon(1e-8));
    }
}

TEST_CASE("exact weights: n = 2 symmetry") {
    const auto rule = build_weights_exact(PeriodicGrid(2), SingularExponent(0.5), 0, 0);
    // Swapping the two coordinates fixes the target and exchanges cells (0,1) and (1,0).
    CHECK(rule.weight(0, 1) == doctest::Approx(rule.weight(1, 0)).epsilon(1e-12));
    CHECK(rule.weight(0, 0) > rule.weight(0, 1));
    CHECK(rule.weight(0, 1) > rule.weight(1, 1));
}

TEST_CASE("exact weights sum to gamma") {
    const SingularExponent lam(0.5);
    const double gamma = oracle::gamma_dyadic(0.5);
    const auto rule = build_weights_exact(PeriodicGrid(16), lam, 3, 11);
    CHECK(rule.weight_sum() == doctest::Approx(gamma).epsilon(0.02));
    // Eval on f = 1 is the weight sum.
    CHECK(eval_Kf([](Vec2) { return 1.0; }, rule) == doctest::Approx(rule.weight_sum()).epsilon(1e-14));
    CHECK(eval_Kf([](Vec2) { return 0.0; }, rule) == 0.0);
}

TEST_CASE("antipodal cell weight matches the adaptive oracle") {
    const SingularExponent lam(0.5);
    const PeriodicGrid grid(4);
    const auto rule = build_weights_exact(grid, lam, 0, 0);
    const Vec2 s{grid.midpoint(0), grid.midpoint(0)};
    const Rect c = grid.cell(2, 2);
    const double ref = oracle::adaptive_rect(
        [&](double x, double y) {
            const double a = std::sin(0.5 * (x - s.x)), b = std::sin(0.5 * (y - s.y));
            return std::pow(a * a + b * b, -0.5);
        },
        c.x0, c.x1, c.y0, c.y1);
    CHECK(rule.weight(2, 2) == doctest::Approx(ref).epsilon(1e-10));
}

TEST_CASE("closed-form weights") {
    const SingularExponent lam(0.5);
    const PeriodicGrid grid(4);
    const auto closed = build_weights_closed_form(grid, lam, 1, 2);
    const double area = 4 * pi * pi / 16;
    for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) {
            if (k == 1 && l == 2) {
                continue;
            }
            const double kern = periodic_kernel({grid.midpoint(k), grid.midpoint(l)}, {grid.midpoint(1), grid.midpoint(2)}, lam);
            CHECK(closed.weight(k, l) == doctest::Approx(area * kern).epsilon(1e-15));
        }
    }
    // Same row: only the second coordinate differs.
    const double s = std::sin(0.5 * (grid.midpoint(0) - grid.midpoint(2)));
    CHECK(closed.weight(1, 0) == doctest::Approx(area * std::pow(s * s, -0.5)).epsilon(1e-14));

    // Cellwise agreement with the exact weights improves like 1/n.
    double previous = 1e300;
    for (int n : {4, 8, 16, 32}) {
        const PeriodicGrid g(n);
        const auto a = build_weights_closed_form(g, lam, 0, 0);
        const auto b = build_weights_exact(g, lam, 0, 0);
        double worst = 0.0;
        for (std::size_t q = 0; q < a.weights.size(); ++q) {
            worst = std::max(worst, std::abs(a.weights[q] - b.weights[q]));
        }
        CAPTURE(n);
        CHECK(worst * n <= 6.0);
        CHECK(worst < previous);
        previous = worst;
    }
}

TEST_CASE("translation covariance of the exact weights") {
    const SingularExponent lam(0.4);
    const int n = 8;
    const PeriodicGrid grid(n);
    const auto base = build_weights_exact(grid, lam, 2, 5);
    for (int c : {1, 3, 6}) {
        const auto moved = build_weights_exact(grid, lam, (2 + c) % n, (5 + c) % n);
        for (int k = 0; k < n; ++k) {
            for (int l = 0; l < n; ++l) {
                CHECK(moved.weight((k + c) % n, (l + c) % n) == doctest::Approx(base.weight(k, l)).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("exact weights are positive for every exponent") {
    std::mt19937_64 rng(20261016);
    for (int trial = 0; trial < 12; ++trial) {
        const double lam = 0.02 + 0.96 * static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const int n = 2 + static_cast<int>(rng() % 9);
        const int i = static_cast<int>(rng() % n), j = static_cast<int>(rng() % n);
        const auto rule = build_weights_exact(PeriodicGrid(n), SingularExponent(lam), i, j);
        for (double w : rule.weights) {
            CHECK(w > 0.0);
        }
        const auto closed = build_weights_closed_form(PeriodicGrid(n), SingularExponent(lam), i, j);
        for (double w : closed.weights) {
            CHECK(w > 0.0);
        }
    }
}

TEST_CASE("eval_Kf on a function cancelling the kernel tends to 4 pi^2") {
    const SingularExponent lam(0.5);
    auto f = [](Vec2 s) {
        const double a = std::sin(0.5 * s.x - 0.5 * pi), b = std::sin(0.5 * s.y - 0.5 * pi);
        return std::pow(a * a + b * b, 0.5);
    };
    double previous = 1e300;
    for (int n : {5, 9, 17, 33}) {
        // Odd n puts (pi, pi) on the midpoint of cell (n/2, n/2).
        const auto rule = build_weights_exact(PeriodicGrid(n), lam, n / 2, n / 2);
        const double err = std::abs(eval_Kf(f, rule) - 4 * pi * pi);
        CAPTURE(n);
        CHECK(err < previous);
        previous = err;
    }
    CHECK(previous < 1e-2 * 4 * pi * pi);
}

TEST_CASE("exact target variant") {
    const SingularExponent lam(0.5);
    const PeriodicGrid grid(8);
    const Vec2 mid{grid.midpoint(3), grid.midpoint(4)};
    const auto a = build_weights_exact(grid, lam, 3, 4);
    const auto b = build_weights_exact(grid, lam, 3, 4, 0.5, mid);
    for (std::size_t q = 0; q < a.weights.size(); ++q) {
        CHECK(a.weights[q] == doctest::Approx(b.weights[q]).epsilon(1e-14));
    }
    // Any target in the cell still integrates the whole kernel.
    const auto c = build_weights_exact(grid, lam, 3, 4, 0.5, Vec2{grid.node(3) + 1e-3, grid.node(5) - 0.2});
    CHECK(c.weight_sum() == doctest::Approx(a.weight_sum()).epsilon(1e-4));
    CHECK_THROWS_AS(build_weights_exact(grid, lam, 3, 4, 0.5, Vec2{0.0, 0.0}), ArgumentError);
    CHECK_THROWS_AS(build_weights_exact(grid, lam, 8, 0), ArgumentError);
    CHECK_THROWS_AS(build_weights_closed_form(grid, lam, -1, 0), ArgumentError);
    CHECK_THROWS_AS(PeriodicGrid(0), ArgumentError);
}

TEST_CASE("periodic weights: serial and parallel paths agree bit for bit") {
    const PeriodicGrid grid(24);
    const auto a = build_weights_exact(grid, SingularExponent(0.7), 5, 17, 0.5, std::nullopt, Execution::serial);
    const auto b = build_weights_exact(grid, SingularExponent(0.7), 5, 17, 0.5, std::nullopt, Execution::parallel);
    CHECK(a.weights == b.weights);
}
