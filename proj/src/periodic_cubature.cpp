#include "wscub/periodic_cubature.hpp"

#include "wscub/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numeric>
#include <string>

namespace wscub {

namespace {

int cyclic_distance(int a, int b, int n) {
    const int d = std::abs(a - b) % n;
    return std::min(d, n - d);
}

void check_target_cell(const PeriodicGrid& grid, int i, int j) {
    const int n = grid.size();
    if (i < 0 || i >= n || j < 0 || j >= n) {
        throw ArgumentError("periodic cubature: target cell out of range");
    }
}

} // namespace

PeriodicGrid::PeriodicGrid(int n) : n_(n) {
    if (n < 1) {
        throw ArgumentError("PeriodicGrid: n must be >= 1");
    }
}

double PeriodicGrid::node(int k) const {
    if (k == n_) {
        return 2.0 * pi;
    }
    return 2.0 * pi * k / n_;
}

double PeriodicGrid::midpoint(int k) const { return 0.5 * (node(k) + node(k + 1)); }

Rect PeriodicGrid::cell(int k, int l) const { return Rect{node(k), node(k + 1), node(l), node(l + 1)}; }

double PeriodicCubature::weight_sum() const {
    // Fixed summation order keeps the result reproducible.
    double s = 0.0;
    for (double w : weights) {
        s += w;
    }
    return s;
}

double gamma_constant(SingularExponent lambda, double tol) {
    using boost::math::quadrature::gauss_kronrod;
    if (!(tol > 0.0)) {
        throw ArgumentError("gamma_constant: tolerance must be positive");
    }
    const double lam = lambda.value();
    // Shift the period to [-pi, pi]^2 so the only singularity sits at the origin;
    // eight-fold symmetry reduces to the triangle 0 <= s2 <= s1 <= pi. In polar
    // coordinates r = R u^q with q = 1/(2 - 2 lambda) the integrand stays bounded.
    const double q = 1.0 / (2.0 - 2.0 * lam);
    constexpr unsigned kMaxDepth = 18;
    // Below this the adaptive rule only burns its depth budget on rounding noise.
    const double working = std::max(tol, 1e-13);
    bool inner_failed = false;
    double worst_inner = 0.0;
    auto radial = [&](double theta) {
        const double c = std::cos(theta), s = std::sin(theta);
        const double r_max = pi / c;
        auto integrand = [&](double u) {
            if (u <= 0.0) {
                // Limit u -> 0: K r dr/du -> 4^lambda R^{2 - 2 lambda} q.
                return std::pow(4.0, lam) * std::pow(r_max, 2.0 - 2.0 * lam) * q;
            }
            const double r = r_max * std::pow(u, q);
            const double a = std::sin(0.5 * r * c), b = std::sin(0.5 * r * s);
            const double base = a * a + b * b;
            const double dr_du = r_max * q * std::pow(u, q - 1.0);
            return std::pow(base, -lam) * r * dr_du;
        };
        double err = 0.0;
        const double v = gauss_kronrod<double, 21>::integrate(integrand, 0.0, 1.0, kMaxDepth, 0.1 * working, &err);
        if (err > 0.2 * working * std::abs(v)) {
            inner_failed = true;
        }
        worst_inner = std::max(worst_inner, err / std::abs(v));
        return v;
    };
    double err = 0.0;
    const double wedge = gauss_kronrod<double, 21>::integrate(radial, 0.0, 0.25 * pi, kMaxDepth, 0.3 * working, &err);
    const double gamma = 8.0 * wedge;
    const double rel_err = err / std::abs(wedge) + worst_inner;
    if (inner_failed || rel_err > tol) {
        throw ConvergenceError("gamma_constant: tolerance " + std::to_string(tol) + " not reached", gamma,
                               rel_err * gamma);
    }
    return gamma;
}

PeriodicCubature build_weights_exact(const PeriodicGrid& grid, SingularExponent lambda, int i, int j,
                                     double alpha, std::optional<Vec2> exact_target, Execution exec) {
    check_target_cell(grid, i, j);
    const int n = grid.size();
    Vec2 target{grid.midpoint(i), grid.midpoint(j)};
    if (exact_target) {
        const Rect c = grid.cell(i, j);
        const double slack = 1e-12 * (c.width() + 1.0);
        if (c.distance_to(*exact_target) > slack) {
            throw ArgumentError("build_weights_exact: exact target must lie in the target cell");
        }
        target = *exact_target;
    }
    const RegularizationParams params = select_regularization(std::max(n, 2), lambda, alpha);
    const int levels = graded_levels(lambda);
    const double lam = lambda.value();

    PeriodicCubature rule{grid, lambda, i, j, target, std::vector<double>(static_cast<std::size_t>(n) * n)};
    double* out = rule.weights.data();

#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel)
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            const Rect cell = grid.cell(k, l);
            double w = 0.0;
            if (cyclic_distance(k, i, n) <= 1 && cyclic_distance(l, j, n) <= 1) {
                // Image of the target nearest to this cell.
                const Vec2 centre = cell.center();
                const Vec2 image{target.x + 2.0 * pi * std::round((centre.x - target.x) / (2.0 * pi)),
                                 target.y + 2.0 * pi * std::round((centre.y - target.y) / (2.0 * pi))};
                const double h = params.h;
                auto shifted = [lam, h](Vec2 d) {
                    const double a = std::sin(0.5 * d.x), b = std::sin(0.5 * d.y);
                    return 1.0 / (std::pow(a * a + b * b, lam) + h);
                };
                // Offsets from the image keep the innermost graded boxes resolvable.
                const Rect local{cell.x0 - image.x, cell.x1 - image.x, cell.y0 - image.y, cell.y1 - image.y};
                w = integrate_graded(shifted, local, Vec2{0.0, 0.0}, params.m, levels);
            } else {
                auto kernel = [target, lambda](Vec2 sigma) { return periodic_kernel(sigma, target, lambda); };
                w = integrate_square(kernel, cell, kFarFieldOrder);
            }
            out[static_cast<std::size_t>(k) * n + l] = w;
        }
    }
    return rule;
}

PeriodicCubature build_weights_closed_form(const PeriodicGrid& grid, SingularExponent lambda, int i, int j,
                                           double alpha) {
    check_target_cell(grid, i, j);
    const int n = grid.size();
    const Vec2 target{grid.midpoint(i), grid.midpoint(j)};
    const double cell_area = 4.0 * pi * pi / (static_cast<double>(n) * n);
    PeriodicCubature rule{grid, lambda, i, j, target, std::vector<double>(static_cast<std::size_t>(n) * n)};
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            if (k == i && l == j) {
                continue;
            }
            rule.weights[static_cast<std::size_t>(k) * n + l] =
                cell_area * periodic_kernel({grid.midpoint(k), grid.midpoint(l)}, target, lambda);
        }
    }
    const RegularizationParams params = select_regularization(std::max(n, 2), lambda, alpha);
    const double lam = lambda.value();
    const double h = params.h;
    auto shifted = [lam, h](Vec2 sigma) {
        const double a = std::sin(0.5 * sigma.x), b = std::sin(0.5 * sigma.y);
        return 1.0 / (std::pow(a * a + b * b, lam) + h);
    };
    const double half = pi / n;
    rule.weights[static_cast<std::size_t>(i) * n + j] =
        integrate_graded(shifted, Rect{-half, half, -half, half}, Vec2{0.0, 0.0}, params.m, graded_levels(lambda));
    return rule;
}

double eval_Kf(const std::function<double(Vec2)>& f, const PeriodicCubature& rule) {
    const int n = rule.grid.size();
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
        const double x = rule.grid.midpoint(k);
        for (int l = 0; l < n; ++l) {
            sum += rule.weight(k, l) * f(Vec2{x, rule.grid.midpoint(l)});
        }
    }
    return sum;
}

} // namespace wscub
