#include "wscub/kernels.hpp"

#include "wscub/errors.hpp"

#include <cmath>
#include <string>

namespace wscub {

SingularExponent::SingularExponent(double lambda) : lambda_(lambda) {
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw ArgumentError("singular exponent must lie in (0, 1), got " + std::to_string(lambda));
    }
}

SurfacePoint::SurfacePoint(Vec3 position, Vec3 normal) : position_(position), normal_(normal) {
    if (std::abs(norm(normal) - 1.0) > 1e-12) {
        throw ArgumentError("surface normal must have unit length");
    }
}

double periodic_kernel(Vec2 sigma, Vec2 s, SingularExponent lambda) {
    const double a = std::sin(0.5 * (sigma.x - s.x));
    const double b = std::sin(0.5 * (sigma.y - s.y));
    const double base = a * a + b * b;
    // 4 * base is the squared chord distance on the torus.
    if (4.0 * base < kCoincidenceThreshold2) {
        throw DomainError("periodic_kernel: coincident points");
    }
    return std::pow(base, -lambda.value());
}

double planar_kernel(Vec2 tau, Vec2 t, SingularExponent lambda) {
    const Vec2 d = tau - t;
    const double r2 = d.x * d.x + d.y * d.y;
    if (r2 < kCoincidenceThreshold2) {
        throw DomainError("planar_kernel: coincident points");
    }
    return std::pow(r2, -lambda.value());
}

double newton_kernel(Vec3 s, Vec3 t) {
    const double r2 = norm2(s - t);
    if (r2 < kCoincidenceThreshold2) {
        throw DomainError("newton_kernel: coincident points");
    }
    return 1.0 / std::sqrt(r2);
}

double dipole_kernel(const SurfacePoint& t, Vec3 s) {
    const Vec3 d = t.position() - s;
    const double r2 = norm2(d);
    if (r2 < kCoincidenceThreshold2) {
        throw DomainError("dipole_kernel: coincident points");
    }
    const double r = std::sqrt(r2);
    return -dot(t.normal(), d) / (r2 * r);
}

} // namespace wscub
