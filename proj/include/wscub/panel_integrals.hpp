#pragma once

#include "wscub/geometry.hpp"

namespace wscub {

/// Closed-form integrals over a flat triangle (a, b, c) with unit normal n,
/// counterclockwise about n, observed from a point x.
struct FlatTriangle {
    Vec3 a;
    Vec3 b;
    Vec3 c;
    Vec3 n;
};

/// Integral of 1/|x - t| over the triangle. Finite for every x not on an edge.
double triangle_potential(const FlatTriangle& tri, Vec3 x);

/// Signed solid angle: integral of n.(t - x)/|t - x|^3, positive when x lies on the -n side.
/// Returns 0 for x in the plane of the triangle.
double triangle_solid_angle(const FlatTriangle& tri, Vec3 x);

/// Integral of (x - t)/|x - t|^3 over the triangle (the field of a unit surface charge).
Vec3 triangle_field(const FlatTriangle& tri, Vec3 x);

} // namespace wscub
