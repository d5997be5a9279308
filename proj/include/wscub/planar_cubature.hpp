#pragma once

#include "wscub/execution.hpp"
#include "wscub/gauss_quad.hpp"
#include "wscub/geometry.hpp"
#include "wscub/kernels.hpp"

#include <functional>
#include <vector>

namespace wscub {

/// Uniform grid x_k = -1 + 2k/n on [-1, 1] with midpoints x'_k.
class PlanarGrid {
public:
    explicit PlanarGrid(int n);

    int size() const noexcept { return n_; }
    double node(int k) const;
    double midpoint(int k) const;
    Rect cell(int k, int l) const;
    /// Index of the cell containing coordinate v; points on an interior node go to the lower cell.
    int locate(double v) const;

private:
    int n_;
};

enum class PlanarMode {
    per_cell,          ///< every cell weighted by its own kernel integral
    merged_near_field, ///< cells touching the target cell merged onto the target midpoint
};

struct PlanarCubature {
    PlanarGrid grid;
    SingularExponent lambda;
    Vec2 target;
    int target_i = 0;
    int target_j = 0;
    PlanarMode mode = PlanarMode::per_cell;
    /// Row-major n x n, index k * n + l.
    std::vector<double> weights;

    double weight(int k, int l) const { return weights[static_cast<std::size_t>(k) * grid.size() + l]; }
    double weight_sum() const;
};

/// Weights approximating the integral of |tau - t|^{-2 lambda} over each cell.
/// Cells sharing a point with the target cell use near_field_weight; in
/// merged_near_field mode their total is attributed to the target cell.
PlanarCubature build_planar_weights(const PlanarGrid& grid, SingularExponent lambda, Vec2 t,
                                    PlanarMode mode = PlanarMode::per_cell, double alpha = 0.5,
                                    Execution exec = Execution::parallel);

/// sum_kl w_kl f(x'_k, x'_l).
double eval_Tf(const std::function<double(Vec2)>& f, const PlanarCubature& rule);

} // namespace wscub
