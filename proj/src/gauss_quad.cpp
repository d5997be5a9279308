#include "wscub/gauss_quad.hpp"

#include "wscub/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>

namespace wscub {

namespace {

constexpr int kMaxGaussOrder = 128;

GaussRule1D compute_gauss_legendre(int m) {
    GaussRule1D rule;
    rule.order = m;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    // Roots are symmetric; solve for the upper half and mirror.
    for (int i = 0; i < (m + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (m + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= m; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double p = (m == 1) ? x : p1;
            const double pm1 = (m == 1) ? 1.0 : p0;
            dp = m * (x * p - pm1) / (x * x - 1.0);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) <= 1e-15) {
                break;
            }
        }
        // Refresh the derivative at the converged root.
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= m; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = (m == 1) ? 1.0 : m * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[m - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[m - 1 - i] = w;
    }
    if (m % 2 == 1) {
        rule.nodes[m / 2] = 0.0;
    }
    if (m == 1) {
        rule.weights[0] = 2.0;
    }
    return rule;
}

} // namespace

const GaussRule1D& gauss_legendre(int m) {
    if (m < 1 || m > kMaxGaussOrder) {
        throw ArgumentError("gauss_legendre: order must be in [1, 128], got " + std::to_string(m));
    }
    static std::array<std::once_flag, kMaxGaussOrder + 1> flags;
    static std::array<GaussRule1D, kMaxGaussOrder + 1> cache;
    std::call_once(flags[m], [m] { cache[m] = compute_gauss_legendre(m); });
    return cache[m];
}

RegularizationParams select_regularization(int n, SingularExponent lambda, double alpha, int m_cap,
                                           double h_floor) {
    if (n < 2) {
        throw ArgumentError("select_regularization: n must be >= 2");
    }
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw ArgumentError("select_regularization: alpha must lie in (0, 1]");
    }
    if (m_cap < 1) {
        throw ArgumentError("select_regularization: m_cap must be >= 1");
    }
    const double lam = lambda.value();
    const double nd = static_cast<double>(n);
    const double h = std::max(std::pow(nd, -2.0 * (2.0 * lam + alpha) / (1.0 - lam)), h_floor);
    const double m_raw = std::floor(std::pow(nd, (8.0 * lam + 4.0 * alpha) / (1.0 - lam) + alpha - 3.0));
    int m = 1;
    if (!(m_raw < static_cast<double>(m_cap))) {
        m = m_cap;
    } else if (m_raw > 1.0) {
        m = static_cast<int>(m_raw);
    }
    return RegularizationParams{h, m, alpha, lambda};
}

int graded_levels(SingularExponent lambda) {
    // Corner box of relative size 2^-L holds ~ 2^{-L (2 - 2 lambda)} of the mass.
    const double per_level = (2.0 - 2.0 * lambda.value()) * std::log10(2.0);
    return std::min(200, static_cast<int>(std::ceil(15.0 / per_level)));
}

double near_field_weight(const Rect& square, Vec2 t, const RegularizationParams& params) {
    if (!(params.h > 0.0)) {
        throw ArgumentError("near_field_weight: shift h must be positive");
    }
    const double lam = params.lambda.value();
    const double h = params.h;
    // Work in offsets from t: absolute coordinates cannot resolve the
    // innermost graded boxes once they shrink below the spacing of doubles near t.
    auto shifted = [lam, h](Vec2 d) { return 1.0 / (std::pow(d.x * d.x + d.y * d.y, lam) + h); };
    const Rect local{square.x0 - t.x, square.x1 - t.x, square.y0 - t.y, square.y1 - t.y};
    return integrate_graded(shifted, local, Vec2{0.0, 0.0}, params.m, graded_levels(params.lambda));
}

double polar_singular_integral(const Rect& square, Vec2 t, SingularExponent lambda) {
    using boost::math::quadrature::gauss_kronrod;
    const double p = 2.0 - 2.0 * lambda.value();
    const std::array<Vec2, 4> corners{Vec2{square.x0, square.y0}, Vec2{square.x1, square.y0},
                                      Vec2{square.x1, square.y1}, Vec2{square.x0, square.y1}};
    double total = 0.0;
    for (std::size_t e = 0; e < 4; ++e) {
        const Vec2 a = corners[e] - t;
        const Vec2 b = corners[(e + 1) % 4] - t;
        const Vec2 edge = b - a;
        const double len = std::hypot(edge.x, edge.y);
        // Signed distance from t to the edge line, foot direction nx, ny.
        const double d = (a.x * edge.y - a.y * edge.x) / len;
        if (std::abs(d) < 1e-300) {
            continue;
        }
        const double nx = edge.y / len * (d > 0 ? 1.0 : -1.0);
        const double ny = -edge.x / len * (d > 0 ? 1.0 : -1.0);
        auto angle = [nx, ny](Vec2 v) { return std::atan2(nx * v.y - ny * v.x, nx * v.x + ny * v.y); };
        const double dist = std::abs(d);
        auto integrand = [dist, p](double phi) { return std::pow(dist / std::cos(phi), p) / p; };
        double err = 0.0;
        total += gauss_kronrod<double, 31>::integrate(integrand, angle(a), angle(b), 15, 1e-14, &err);
    }
    return total;
}

} // namespace wscub
