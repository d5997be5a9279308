#pragma once

#include "wscub/execution.hpp"
#include "wscub/gauss_quad.hpp"
#include "wscub/geometry.hpp"
#include "wscub/kernels.hpp"
#include "wscub/planar_cubature.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wscub {

enum class Domain { periodic, planar };

enum class HolderFamily {
    periodic_cusp, ///< |sin s1|^a + |sin s2|^a
    planar_cusp,   ///< |t1 - c1|^a + |t2 - c2|^a
    radial_cusp,   ///< |t - c|^a
    dyadic_cusp,   ///< mean over dyadic levels j of dist(t_i, L_j Z)^a summed over both coordinates
};

std::string_view family_name(HolderFamily family);
/// Throws ArgumentError for an unknown name.
HolderFamily parse_family(std::string_view name);

struct HolderParams {
    Vec2 center{0.0, 0.0};
    /// Only used by dyadic_cusp: which square the dyadic lattice lives on.
    Domain domain = Domain::periodic;
    /// Only used by dyadic_cusp: finest level is the period divided by 2^levels.
    int levels = 12;
};

/// Member of H_{aa}(M): |f(x) - f(y)| <= M (|x1 - y1|^a + |x2 - y2|^a).
struct HolderTestFunction {
    HolderFamily family = HolderFamily::planar_cusp;
    double alpha = 1.0;
    HolderParams params;
    /// Hoelder constant guaranteed by the construction.
    double constant = 1.0;

    double operator()(Vec2 x) const;
};

HolderTestFunction make_holder(HolderFamily family, double alpha, HolderParams params = {});
HolderTestFunction make_holder(std::string_view family, double alpha, HolderParams params = {});

struct HolderAudit {
    std::size_t pairs = 0;
    /// max |f(x) - f(y)| / (|x1 - y1|^a + |x2 - y2|^a) over the sample.
    double max_ratio = 0.0;
    bool passed = false;
};

/// Random-pair check of the Hoelder bound on `box`. Half the pairs are
/// independent points, half are close pairs at log-uniform separations.
/// A pair passes if it meets the bound up to the rounding error of f.
HolderAudit audit_holder(const HolderTestFunction& f, const Rect& box, std::size_t pairs, std::uint64_t seed);

/// The square a rule family integrates over.
Rect domain_box(Domain domain);

/// A cubature rule parametrized by grid size, centred at a target point.
struct RuleFamily {
    Domain domain = Domain::periodic;
    SingularExponent lambda{0.5};
    double alpha = 0.5; ///< smoothness used to pick the near-field regularization
    PlanarMode planar_mode = PlanarMode::per_cell;

    /// Rule value for f with grid size n and the kernel singularity at `target`.
    double evaluate(const std::function<double(Vec2)>& f, int n, Vec2 target,
                    Execution exec = Execution::parallel) const;
};

/// `count` targets: up to a quarter are cell midpoints of the grid of size
/// `coarse_n`, the rest uniform interior points. Deterministic in `seed`.
std::vector<Vec2> sample_targets(Domain domain, std::size_t count, int coarse_n, std::uint64_t seed);

struct RateReport {
    std::vector<int> grid_sizes;
    /// sup over targets of |rule(n) - rule(oracle_resolution)|.
    std::vector<double> sup_errors;
    int oracle_resolution = 0;
    std::size_t target_count = 0;
    /// Least-squares fit log e = log C - p log n; empty when skipped.
    std::optional<double> fitted_order;
    std::optional<double> fitted_constant;
    /// RMS residual of the log-log fit.
    std::optional<double> fit_residual;
    /// Errors are at the rounding floor, so no rate is meaningful.
    bool fit_skipped = false;
    /// Some error failed to decrease when n grew.
    bool non_monotone = false;
    /// 2 gamma / (1 + a) pi^a, the worst-case constant for the periodic rule; not asserted.
    std::optional<double> theory_constant;
    /// Relative change of the largest-n error when the oracle resolution doubles.
    std::optional<double> oracle_shift;
};

struct RateOptions {
    bool check_oracle = false;
    /// Errors below floor * (1 + |oracle|) count as exact; the default is the
    /// accuracy to which the h-shifted weights reproduce constants.
    double floor = 1e-6;
    Execution exec = Execution::parallel;
};

/// Empirical sup-error rate of `family` on `f`. The reference value for each
/// target is the same rule at `oracle_resolution`, which must be at least 8x
/// the largest grid size.
RateReport measure_rate(const RuleFamily& family, const std::function<double(Vec2)>& f,
                        const std::vector<int>& grid_sizes, const std::vector<Vec2>& targets,
                        int oracle_resolution, const RateOptions& options = {});

} // namespace wscub
