#include "wscub/analysis.hpp"

#include "wscub/errors.hpp"
#include "wscub/periodic_cubature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace wscub {

namespace {

// 53 random bits in [0, 1); std::uniform_real_distribution is not
// reproducible across standard libraries.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double dyadic_term(double x, double lo, double length, int levels, double alpha) {
    double acc = 0.0;
    for (int j = 0; j <= levels; ++j) {
        const double cell = std::ldexp(length, -j);
        double u = std::fmod(x - lo, cell);
        if (u < 0.0) {
            u += cell;
        }
        acc += std::pow(std::min(u, cell - u), alpha);
    }
    return acc / (levels + 1);
}

int periodic_cell(double v, int n) {
    const int k = static_cast<int>(std::floor(v / (2.0 * pi) * n));
    return std::clamp(k, 0, n - 1);
}

bool inside(const Rect& box, Vec2 p) { return p.x >= box.x0 && p.x <= box.x1 && p.y >= box.y0 && p.y <= box.y1; }

} // namespace

std::string_view family_name(HolderFamily family) {
    switch (family) {
    case HolderFamily::periodic_cusp:
        return "periodic_cusp";
    case HolderFamily::planar_cusp:
        return "planar_cusp";
    case HolderFamily::radial_cusp:
        return "radial_cusp";
    case HolderFamily::dyadic_cusp:
        return "dyadic_cusp";
    }
    return "unknown";
}

HolderFamily parse_family(std::string_view name) {
    for (HolderFamily f : {HolderFamily::periodic_cusp, HolderFamily::planar_cusp, HolderFamily::radial_cusp,
                           HolderFamily::dyadic_cusp}) {
        if (family_name(f) == name) {
            return f;
        }
    }
    throw ArgumentError("unknown test-function family '" + std::string(name) + "'");
}

double HolderTestFunction::operator()(Vec2 x) const {
    const Vec2 c = params.center;
    switch (family) {
    case HolderFamily::periodic_cusp:
        return std::pow(std::abs(std::sin(x.x)), alpha) + std::pow(std::abs(std::sin(x.y)), alpha);
    case HolderFamily::planar_cusp:
        return std::pow(std::abs(x.x - c.x), alpha) + std::pow(std::abs(x.y - c.y), alpha);
    case HolderFamily::radial_cusp:
        return std::pow((x.x - c.x) * (x.x - c.x) + (x.y - c.y) * (x.y - c.y), 0.5 * alpha);
    case HolderFamily::dyadic_cusp: {
        const Rect box = domain_box(params.domain);
        return dyadic_term(x.x, box.x0, box.width(), params.levels, alpha) +
               dyadic_term(x.y, box.y0, box.height(), params.levels, alpha);
    }
    }
    return 0.0;
}

HolderTestFunction make_holder(HolderFamily family, double alpha, HolderParams params) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw ArgumentError("Hoelder exponent must satisfy 0 < alpha <= 1");
    }
    if (family == HolderFamily::dyadic_cusp && (params.levels < 0 || params.levels > 40)) {
        throw ArgumentError("dyadic_cusp: levels must be in [0, 40]");
    }
    // Every family is built from 1-Lipschitz distances raised to alpha, and
    // t -> t^alpha is subadditive, so M = 1 throughout.
    return {family, alpha, params, 1.0};
}

HolderTestFunction make_holder(std::string_view family, double alpha, HolderParams params) {
    return make_holder(parse_family(family), alpha, params);
}

HolderAudit audit_holder(const HolderTestFunction& f, const Rect& box, std::size_t pairs, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    HolderAudit audit;
    audit.pairs = pairs;
    bool ok = true;
    auto point = [&] { return Vec2{box.x0 + box.width() * unit(rng), box.y0 + box.height() * unit(rng)}; };
    for (std::size_t p = 0; p < pairs; ++p) {
        const Vec2 x = point();
        Vec2 y;
        if (p % 2 == 0) {
            y = point();
        } else {
            const double scale = box.diameter() * std::pow(10.0, -8.0 * unit(rng));
            y = box.clamp(x + Vec2{scale * (2.0 * unit(rng) - 1.0), scale * (2.0 * unit(rng) - 1.0)});
        }
        const double gauge = std::pow(std::abs(x.x - y.x), f.alpha) + std::pow(std::abs(x.y - y.y), f.alpha);
        if (gauge == 0.0) {
            continue;
        }
        const double fx = f(x), fy = f(y);
        const double diff = std::abs(fx - fy);
        audit.max_ratio = std::max(audit.max_ratio, diff / gauge);
        // Rounding in f itself can exceed the bound on very close pairs.
        const double slack = 64.0 * std::numeric_limits<double>::epsilon() * (std::abs(fx) + std::abs(fy));
        if (diff > f.constant * gauge * (1.0 + 1e-12) + slack) {
            ok = false;
        }
    }
    audit.passed = ok;
    return audit;
}

Rect domain_box(Domain domain) {
    if (domain == Domain::periodic) {
        return {0.0, 2.0 * pi, 0.0, 2.0 * pi};
    }
    return {-1.0, 1.0, -1.0, 1.0};
}

double RuleFamily::evaluate(const std::function<double(Vec2)>& f, int n, Vec2 target, Execution exec) const {
    if (!inside(domain_box(domain), target)) {
        throw ArgumentError("RuleFamily: target outside the integration square");
    }
    if (domain == Domain::periodic) {
        const PeriodicGrid grid(n);
        const PeriodicCubature rule = build_weights_exact(grid, lambda, periodic_cell(target.x, n),
                                                          periodic_cell(target.y, n), alpha, target, exec);
        return eval_Kf(f, rule);
    }
    const PlanarGrid grid(n);
    return eval_Tf(f, build_planar_weights(grid, lambda, target, planar_mode, alpha, exec));
}

std::vector<Vec2> sample_targets(Domain domain, std::size_t count, int coarse_n, std::uint64_t seed) {
    if (coarse_n < 1) {
        throw ArgumentError("sample_targets: coarse_n must be >= 1");
    }
    std::mt19937_64 rng(seed);
    const Rect box = domain_box(domain);
    std::vector<Vec2> targets;
    targets.reserve(count);
    const std::size_t midpoints = count / 4;
    for (std::size_t p = 0; p < midpoints; ++p) {
        const auto i = static_cast<int>(rng() % static_cast<std::uint64_t>(coarse_n));
        const auto j = static_cast<int>(rng() % static_cast<std::uint64_t>(coarse_n));
        targets.push_back({box.x0 + box.width() * (i + 0.5) / coarse_n, box.y0 + box.height() * (j + 0.5) / coarse_n});
    }
    while (targets.size() < count) {
        targets.push_back({box.x0 + box.width() * unit(rng), box.y0 + box.height() * unit(rng)});
    }
    return targets;
}

RateReport measure_rate(const RuleFamily& family, const std::function<double(Vec2)>& f,
                        const std::vector<int>& grid_sizes, const std::vector<Vec2>& targets, int oracle_resolution,
                        const RateOptions& options) {
    if (grid_sizes.empty() || targets.empty()) {
        throw ArgumentError("measure_rate: need at least one grid size and one target");
    }
    const int largest = *std::max_element(grid_sizes.begin(), grid_sizes.end());
    if (oracle_resolution < 8 * largest) {
        throw ArgumentError("measure_rate: oracle resolution must be at least 8x the largest grid size");
    }
    RateReport report;
    report.grid_sizes = grid_sizes;
    report.oracle_resolution = oracle_resolution;
    report.target_count = targets.size();
    report.sup_errors.assign(grid_sizes.size(), 0.0);

    std::vector<double> values(targets.size() * grid_sizes.size());
    double oracle_scale = 0.0;
    double shifted_sup = 0.0;
    const std::size_t last = static_cast<std::size_t>(
        std::max_element(grid_sizes.begin(), grid_sizes.end()) - grid_sizes.begin());
    for (std::size_t t = 0; t < targets.size(); ++t) {
        const double oracle = family.evaluate(f, oracle_resolution, targets[t], options.exec);
        oracle_scale = std::max(oracle_scale, std::abs(oracle));
        for (std::size_t g = 0; g < grid_sizes.size(); ++g) {
            values[t * grid_sizes.size() + g] = family.evaluate(f, grid_sizes[g], targets[t], options.exec);
            report.sup_errors[g] = std::max(report.sup_errors[g], std::abs(values[t * grid_sizes.size() + g] - oracle));
        }
        if (options.check_oracle) {
            const double fine = family.evaluate(f, 2 * oracle_resolution, targets[t], options.exec);
            shifted_sup = std::max(shifted_sup, std::abs(values[t * grid_sizes.size() + last] - fine));
        }
    }
    if (options.check_oracle && report.sup_errors[last] > 0.0) {
        report.oracle_shift = std::abs(shifted_sup - report.sup_errors[last]) / report.sup_errors[last];
    }

    for (std::size_t g = 1; g < grid_sizes.size(); ++g) {
        if (grid_sizes[g] > grid_sizes[g - 1] && report.sup_errors[g] >= report.sup_errors[g - 1]) {
            report.non_monotone = true;
        }
    }

    if (family.domain == Domain::periodic) {
        const double a = family.alpha;
        report.theory_constant = 2.0 * gamma_constant(family.lambda, 1e-8) / (1.0 + a) * std::pow(pi, a);
    }

    const double floor = options.floor * (1.0 + oracle_scale);
    const bool at_floor = std::any_of(report.sup_errors.begin(), report.sup_errors.end(),
                                      [&](double e) { return e <= floor; });
    if (at_floor || grid_sizes.size() < 2) {
        report.fit_skipped = true;
        return report;
    }
    const double k = static_cast<double>(grid_sizes.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t g = 0; g < grid_sizes.size(); ++g) {
        const double x = std::log(static_cast<double>(grid_sizes[g]));
        const double y = std::log(report.sup_errors[g]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = k * sxx - sx * sx;
    if (denom <= 0.0) {
        report.fit_skipped = true;
        return report;
    }
    const double slope = (k * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / k;
    double rss = 0.0;
    for (std::size_t g = 0; g < grid_sizes.size(); ++g) {
        const double r = std::log(report.sup_errors[g]) - (intercept + slope * std::log(static_cast<double>(grid_sizes[g])));
        rss += r * r;
    }
    report.fitted_order = -slope;
    report.fitted_constant = std::exp(intercept);
    report.fit_residual = std::sqrt(rss / k);
    return report;
}

} // namespace wscub
