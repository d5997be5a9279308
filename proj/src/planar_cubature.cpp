#include "wscub/planar_cubature.hpp"

#include "wscub/errors.hpp"

#include <cmath>

namespace wscub {

PlanarGrid::PlanarGrid(int n) : n_(n) {
    if (n < 1) {
        throw ArgumentError("PlanarGrid: n must be >= 1");
    }
}

double PlanarGrid::node(int k) const {
    if (k == n_) {
        return 1.0;
    }
    return -1.0 + 2.0 * k / n_;
}

double PlanarGrid::midpoint(int k) const { return 0.5 * (node(k) + node(k + 1)); }

Rect PlanarGrid::cell(int k, int l) const { return Rect{node(k), node(k + 1), node(l), node(l + 1)}; }

int PlanarGrid::locate(double v) const {
    const int idx = static_cast<int>(std::ceil((v + 1.0) * n_ / 2.0)) - 1;
    return std::clamp(idx, 0, n_ - 1);
}

double PlanarCubature::weight_sum() const {
    double s = 0.0;
    for (double w : weights) {
        s += w;
    }
    return s;
}

PlanarCubature build_planar_weights(const PlanarGrid& grid, SingularExponent lambda, Vec2 t, PlanarMode mode,
                                    double alpha, Execution exec) {
    if (!(t.x >= -1.0 && t.x <= 1.0 && t.y >= -1.0 && t.y <= 1.0)) {
        throw ArgumentError("build_planar_weights: target must lie in [-1, 1]^2");
    }
    const int n = grid.size();
    const int i = grid.locate(t.x);
    const int j = grid.locate(t.y);
    const RegularizationParams params = select_regularization(std::max(n, 2), lambda, alpha);

    PlanarCubature rule{grid, lambda, t, i, j, mode, std::vector<double>(static_cast<std::size_t>(n) * n)};
    double* out = rule.weights.data();

#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel)
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            const Rect cell = grid.cell(k, l);
            double w = 0.0;
            if (std::abs(k - i) <= 1 && std::abs(l - j) <= 1) {
                w = near_field_weight(cell, t, params);
            } else {
                auto kernel = [t, lambda](Vec2 tau) { return planar_kernel(tau, t, lambda); };
                w = integrate_square(kernel, cell, kFarFieldOrder);
            }
            out[static_cast<std::size_t>(k) * n + l] = w;
        }
    }

    if (mode == PlanarMode::merged_near_field) {
        double merged = 0.0;
        for (int k = std::max(i - 1, 0); k <= std::min(i + 1, n - 1); ++k) {
            for (int l = std::max(j - 1, 0); l <= std::min(j + 1, n - 1); ++l) {
                double& w = rule.weights[static_cast<std::size_t>(k) * n + l];
                merged += w;
                w = 0.0;
            }
        }
        rule.weights[static_cast<std::size_t>(i) * n + j] = merged;
    }
    return rule;
}

double eval_Tf(const std::function<double(Vec2)>& f, const PlanarCubature& rule) {
    const int n = rule.grid.size();
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
        const double x = rule.grid.midpoint(k);
        for (int l = 0; l < n; ++l) {
            const double w = rule.weight(k, l);
            if (w != 0.0) {
                sum += w * f(Vec2{x, rule.grid.midpoint(l)});
            }
        }
    }
    return sum;
}

} // namespace wscub
