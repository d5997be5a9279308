#pragma once

#include "wscub/execution.hpp"
#include "wscub/surface_mesh.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace wscub {

/// Dense row-major matrix.
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Source panels closer than this many panel radii are integrated in closed form.
inline constexpr double kNearFieldRatio = 8.0;

/// G[j][k] ~ integral over panel k of 1/|tau_j - t| dt.
DenseMatrix single_layer_matrix(const TriangulatedSurface& mesh, Execution exec = Execution::parallel);

/// g_k = integral over the whole surface of the potential of a unit density on
/// panel k. The inner integral is analytic; the outer one uses a collapsed Gauss
/// rule on nearby panels and the centroid on distant ones. Replaces the one-point
/// sum_j area_j G[j][k], which is badly biased on long sliver panels.
std::vector<double> single_layer_column_weights(const TriangulatedSurface& mesh,
                                                Execution exec = Execution::parallel);

/// 4 pi eps0 S^2 / J with J = sum_k g_k.
double capacitance_zeroth(const TriangulatedSurface& mesh, double epsilon0 = 1.0);

/// Piecewise-constant density, one value per triangle.
struct DensityField {
    const TriangulatedSurface* mesh = nullptr;
    std::vector<double> values;

    static DensityField constant(const TriangulatedSurface& m, double v);
    /// sum_k values[k] area[k].
    double integral() const;
};

/// Discrete (1/2 pi) integral of delta(t) times a normal derivative of 1/r.
///
/// With NormalAt::target the derivative is taken along the normal at the
/// collocation point (the operator A driving the capacitance iteration); with
/// NormalAt::source it is taken along the normal of the integrated panel (the
/// double-layer operator, whose rows reproduce the solid-angle identity).
///
/// The self-panel term of a flat panel is zero. Rank completion replaces it so
/// that the discrete operator reproduces the identity exactly: rows of the
/// source form sum to -1, and area-weighted columns of the target form sum to -area.
class DoubleLayerOperator {
public:
    enum class NormalAt { target, source };

    DoubleLayerOperator(const TriangulatedSurface& mesh, NormalAt normal, bool rank_complete = true,
                        Execution exec = Execution::parallel);

    std::size_t size() const noexcept { return matrix_.rows; }
    NormalAt normal_at() const noexcept { return normal_; }
    const DenseMatrix& matrix() const noexcept { return matrix_; }
    double entry(std::size_t j, std::size_t k) const { return matrix_(j, k); }

    /// out[j] = sum_k entry(j, k) in[k], each row summed in increasing k.
    std::vector<double> apply(const std::vector<double>& in, Execution exec = Execution::parallel) const;

private:
    NormalAt normal_;
    DenseMatrix matrix_;
};

/// (A delta)[j] with A built on `op`'s mesh.
DensityField apply_A(const DoubleLayerOperator& op, const DensityField& delta);
/// Convenience overload that assembles the rank-completed target-normal operator.
DensityField apply_A(const TriangulatedSurface& mesh, const DensityField& delta);

struct IterationRecord {
    int index = 0;
    double capacitance = 0.0;
    double density_min = 0.0;
    double density_max = 0.0;
    /// sum_k delta_k area_k after normalization (equals S_N).
    double density_integral = 0.0;
};

struct CapacitanceRun {
    int n_azimuth = 0;
    int m_polar = 0;
    std::size_t triangle_count = 0;
    double epsilon0 = 1.0;
    double surface_area = 0.0;
    std::vector<IterationRecord> iterates;
    double capacitance = 0.0;
    /// |C_k - C_{k-1}| / |C_{k-1} - C_{k-2}| at the last step, when defined.
    std::optional<double> ratio_estimate;
    bool converged = false;
};

/// Iteration produced a non-positive energy denominator.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& what, CapacitanceRun run)
        : std::runtime_error(what), run_(std::move(run)) {}
    const CapacitanceRun& run() const noexcept { return run_; }

private:
    CapacitanceRun run_;
};

/// delta_{k+1} = -A delta_k, delta_0 = 1, renormalized to integrate to S_N;
/// C_k = 4 pi eps0 S_N^2 / (sum_k g_k delta_k[k]). Stops when
/// successive values agree to stop_tol (relative) or after max_iter steps.
CapacitanceRun iterate_capacitance(const TriangulatedSurface& mesh, double epsilon0 = 1.0, int max_iter = 50,
                                   double stop_tol = 1e-7, Execution exec = Execution::parallel);

/// Capacitance of the ellipsoid x^2/a^2 + y^2/b^2 + z^2/c^2 = 1 (Carlson R_F form).
double ellipsoid_capacitance(double a, double b, double c, double epsilon0 = 1.0);
/// Oblate spheroid a = b > c: 4 pi eps0 sqrt(a^2 - c^2) / arccos(c / a).
double oblate_spheroid_capacitance(double a, double c, double epsilon0 = 1.0);
/// Thin circular disc of radius a: 8 a eps0.
double disc_capacitance(double a, double epsilon0 = 1.0);

} // namespace wscub
