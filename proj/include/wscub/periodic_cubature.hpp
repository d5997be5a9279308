#pragma once

#include "wscub/execution.hpp"
#include "wscub/gauss_quad.hpp"
#include "wscub/geometry.hpp"
#include "wscub/kernels.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace wscub {

/// Uniform grid x_k = 2 k pi / n on [0, 2 pi] with midpoints x'_k.
class PeriodicGrid {
public:
    explicit PeriodicGrid(int n);

    int size() const noexcept { return n_; }
    double node(int k) const;
    double midpoint(int k) const;
    Rect cell(int k, int l) const;

private:
    int n_;
};

/// Weights w_kl of Kf ~ sum_kl w_kl f(x'_k, x'_l) for one target cell (i, j).
struct PeriodicCubature {
    PeriodicGrid grid;
    SingularExponent lambda;
    int target_i = 0;
    int target_j = 0;
    /// Point at which the kernel is centred: (x'_i, x'_j) unless an exact target was given.
    Vec2 target;
    /// Row-major n x n, index k * n + l.
    std::vector<double> weights;

    double weight(int k, int l) const { return weights[static_cast<std::size_t>(k) * grid.size() + l]; }
    double weight_sum() const;
};

/// Integral of the periodic kernel over [0, 2 pi]^2, to relative tolerance `tol`.
/// Throws ConvergenceError (carrying the best estimate) if the budget runs out.
double gamma_constant(SingularExponent lambda, double tol);

/// Weights I_kl = integral over cell (k, l) of the kernel centred at the target.
/// Cells sharing a point with the target cell use the h-shifted graded rule,
/// the rest the fixed-order Gauss product rule. With `exact_target` the kernel
/// is centred at that point (which must lie in cell (i, j)) instead of the midpoint.
PeriodicCubature build_weights_exact(const PeriodicGrid& grid, SingularExponent lambda, int i, int j,
                                     double alpha = 0.5, std::optional<Vec2> exact_target = std::nullopt,
                                     Execution exec = Execution::parallel);

/// Closed-form weights p*_kl = (4 pi^2 / n^2) K(x'_kl, x'_ij) off the target cell,
/// h-regularized Gauss value on it.
PeriodicCubature build_weights_closed_form(const PeriodicGrid& grid, SingularExponent lambda, int i, int j,
                                           double alpha = 0.5);

/// sum_kl w_kl f(x'_k, x'_l).
double eval_Kf(const std::function<double(Vec2)>& f, const PeriodicCubature& rule);

} // namespace wscub
