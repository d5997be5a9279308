#pragma once

#include "wscub/geometry.hpp"
#include "wscub/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace wscub {

/// m-point Gauss-Legendre rule on [-1, 1].
struct GaussRule1D {
    int order = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached Gauss-Legendre rule, 1 <= m <= 128. Nodes ascend. Thread-safe.
const GaussRule1D& gauss_legendre(int m);

/// Axis-aligned rectangle [x0, x1] x [y0, y1].
struct Rect {
    double x0 = 0.0;
    double x1 = 0.0;
    double y0 = 0.0;
    double y1 = 0.0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area() const { return width() * height(); }
    Vec2 center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
    double diameter() const { return std::hypot(width(), height()); }

    Vec2 clamp(Vec2 p) const { return {std::clamp(p.x, x0, x1), std::clamp(p.y, y0, y1)}; }
    double distance_to(Vec2 p) const {
        const Vec2 d = p - clamp(p);
        return std::hypot(d.x, d.y);
    }
};

/// Tensor-product Gauss rule P_m x P_m mapped onto `r`.
template <class F>
double integrate_square(F&& f, const Rect& r, int m) {
    const GaussRule1D& g = gauss_legendre(m);
    const double hx = 0.5 * r.width();
    const double hy = 0.5 * r.height();
    const double cx = r.x0 + hx;
    const double cy = r.y0 + hy;
    double sum = 0.0;
    for (int i = 0; i < m; ++i) {
        const double x = cx + hx * g.nodes[i];
        double row = 0.0;
        for (int j = 0; j < m; ++j) {
            row += g.weights[j] * f(Vec2{x, cy + hy * g.nodes[j]});
        }
        sum += g.weights[i] * row;
    }
    return sum * hx * hy;
}

/// Kernel shift h and Gauss order m used for cells touching the singularity.
struct RegularizationParams {
    double h;
    int m;
    double alpha;
    SingularExponent lambda;
};

inline constexpr int kDefaultGaussCap = 64;
inline constexpr double kDefaultShiftFloor = 1e-14;
/// Gauss order used on cells that share no point with the singular cell.
inline constexpr int kFarFieldOrder = 8;
/// Per-box order cap inside the graded near-field partition.
inline constexpr int kGradedBoxOrderCap = 16;

/// h = n^{-2(2 lambda + alpha)/(1 - lambda)} (floored) and
/// m = max([n^{(8 lambda + 4 alpha)/(1 - lambda) + alpha - 3}], 1) clamped to m_cap.
RegularizationParams select_regularization(int n, SingularExponent lambda, double alpha,
                                           int m_cap = kDefaultGaussCap,
                                           double h_floor = kDefaultShiftFloor);

/// Number of dyadic grading levels needed before the remaining corner box
/// carries a negligible share of the r^{-2 lambda} mass.
int graded_levels(SingularExponent lambda);

namespace detail {

template <class F>
double integrate_corner_graded(F& f, Vec2 corner, double dx, double dy, int m, int levels) {
    // The rectangle spans corner + [0, dx] x [0, dy]; dx, dy may be negative.
    auto box = [&](double u0, double u1, double v0, double v1) {
        const double xa = corner.x + u0 * dx, xb = corner.x + u1 * dx;
        const double ya = corner.y + v0 * dy, yb = corner.y + v1 * dy;
        return integrate_square(f, Rect{std::min(xa, xb), std::max(xa, xb), std::min(ya, yb),
                                        std::max(ya, yb)},
                                m);
    };
    double a = 1.0, b = 1.0; // fractions of |dx|, |dy| still to resolve
    double sum = 0.0;
    const double ax = std::abs(dx), ay = std::abs(dy);
    while (b * ay > 2.0 * a * ax) {
        sum += box(0.0, a, 0.5 * b, b);
        b *= 0.5;
    }
    while (a * ax > 2.0 * b * ay) {
        sum += box(0.5 * a, a, 0.0, b);
        a *= 0.5;
    }
    for (int level = 0; level < levels; ++level) {
        sum += box(0.5 * a, a, 0.0, 0.5 * b);
        sum += box(0.0, 0.5 * a, 0.5 * b, b);
        sum += box(0.5 * a, a, 0.5 * b, b);
        a *= 0.5;
        b *= 0.5;
    }
    return sum + box(0.0, a, 0.0, b);
}

} // namespace detail

/// Composite Gauss rule over `r` on a partition graded geometrically toward
/// `singular`; plain P_m x P_m when the point is well separated from `r`.
template <class F>
double integrate_graded(F&& f, const Rect& r, Vec2 singular, int m, int levels) {
    if (r.distance_to(singular) >= r.diameter()) {
        return integrate_square(f, r, m);
    }
    const int box_order = std::min(m, kGradedBoxOrderCap);
    const Vec2 c = r.clamp(singular);
    double sum = 0.0;
    for (double dx : {r.x0 - c.x, r.x1 - c.x}) {
        if (dx == 0.0) {
            continue;
        }
        for (double dy : {r.y0 - c.y, r.y1 - c.y}) {
            if (dy == 0.0) {
                continue;
            }
            sum += detail::integrate_corner_graded(f, c, dx, dy, box_order, levels);
        }
    }
    return sum;
}

/// Integral over `square` of the h-shifted planar kernel 1/(|tau - t|^{2 lambda} + h).
double near_field_weight(const Rect& square, Vec2 t, const RegularizationParams& params);

/// Integral over `square` of |tau - t|^{-2 lambda} by triangle fans from t and
/// adaptive quadrature in the polar angle. Debug cross-check for near_field_weight.
double polar_singular_integral(const Rect& square, Vec2 t, SingularExponent lambda);

} // namespace wscub
