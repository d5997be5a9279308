#pragma once

#include "wscub/geometry.hpp"

namespace wscub {

/// Exponent of a weakly singular kernel |x - y|^{-2 lambda}; requires 0 < lambda < 1.
class SingularExponent {
public:
    explicit SingularExponent(double lambda);

    double value() const noexcept { return lambda_; }

private:
    double lambda_;
};

/// Point on a surface together with its outward unit normal.
class SurfacePoint {
public:
    SurfacePoint(Vec3 position, Vec3 normal);

    Vec3 position() const noexcept { return position_; }
    Vec3 normal() const noexcept { return normal_; }

private:
    Vec3 position_;
    Vec3 normal_;
};

/// Squared distance below which two points count as coincident.
inline constexpr double kCoincidenceThreshold2 = 1e-28;

/// (sin^2((sigma1 - s1)/2) + sin^2((sigma2 - s2)/2))^{-lambda}.
double periodic_kernel(Vec2 sigma, Vec2 s, SingularExponent lambda);

/// ((tau1 - t1)^2 + (tau2 - t2)^2)^{-lambda}.
double planar_kernel(Vec2 tau, Vec2 t, SingularExponent lambda);

/// 1 / |s - t|.
double newton_kernel(Vec3 s, Vec3 t);

/// Normal derivative of 1/|t - s| taken at t along N_t: -(N_t . (t - s)) / |t - s|^3.
double dipole_kernel(const SurfacePoint& t, Vec3 s);

} // namespace wscub
