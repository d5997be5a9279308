#include "wscub/panel_integrals.hpp"

#include <array>
#include <cmath>

namespace wscub {

namespace {

struct EdgeTerms {
    double log_term;      // integral of 1/R along the edge
    double signed_dist;   // in-plane distance from the projected point, positive inside
    Vec3 outward;         // in-plane outward unit normal of the edge
};

EdgeTerms edge_terms(Vec3 p, Vec3 q, Vec3 n, Vec3 x) {
    const Vec3 e = q - p;
    const double len = norm(e);
    const Vec3 t = e / len;
    const Vec3 m = cross(t, n);
    const double s_minus = dot(p - x, t);
    const double s_plus = s_minus + len;
    const double r_minus = norm(p - x);
    const double r_plus = norm(q - x);
    double f = 0.0;
    if (s_minus >= 0.0) {
        f = std::log((r_plus + s_plus) / (r_minus + s_minus));
    } else if (s_plus <= 0.0) {
        f = std::log((r_minus - s_minus) / (r_plus - s_plus));
    } else {
        const Vec3 foot = p - s_minus * t;
        const double r0_sq = norm2(x - foot);
        f = std::log((r_plus + s_plus) * (r_minus - s_minus) / r0_sq);
    }
    return {f, dot(p - x, m), m};
}

} // namespace

double triangle_solid_angle(const FlatTriangle& tri, Vec3 x) {
    const Vec3 a = tri.a - x, b = tri.b - x, c = tri.c - x;
    const double la = norm(a), lb = norm(b), lc = norm(c);
    const double num = dot(a, cross(b, c));
    const double scale = la * lb * lc;
    if (std::abs(num) <= 1e-15 * scale) {
        return 0.0;
    }
    const double den = scale + dot(a, b) * lc + dot(a, c) * lb + dot(b, c) * la;
    return 2.0 * std::atan2(num, den);
}

double triangle_potential(const FlatTriangle& tri, Vec3 x) {
    const std::array<Vec3, 3> v{tri.a, tri.b, tri.c};
    const double w = dot(x - tri.a, tri.n);
    double sum = 0.0;
    for (int e = 0; e < 3; ++e) {
        const Vec3 p = v[e], q = v[(e + 1) % 3];
        const EdgeTerms et = edge_terms(p, q, tri.n, x);
        const double scale = norm(q - p);
        if (std::abs(et.signed_dist) > 1e-14 * scale) {
            sum += et.signed_dist * et.log_term;
        }
    }
    return sum - std::abs(w) * std::abs(triangle_solid_angle(tri, x));
}

Vec3 triangle_field(const FlatTriangle& tri, Vec3 x) {
    const std::array<Vec3, 3> v{tri.a, tri.b, tri.c};
    Vec3 field = -triangle_solid_angle(tri, x) * tri.n;
    for (int e = 0; e < 3; ++e) {
        const EdgeTerms et = edge_terms(v[e], v[(e + 1) % 3], tri.n, x);
        field += et.log_term * et.outward;
    }
    return field;
}

} // namespace wscub
