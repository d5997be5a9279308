#include "wscub/capacitance.hpp"

#include "wscub/errors.hpp"
#include "wscub/gauss_quad.hpp"
#include "wscub/kernels.hpp"
#include "wscub/panel_integrals.hpp"

#include <boost/math/special_functions/ellint_rf.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace wscub {

namespace {

struct Panel {
    FlatTriangle tri;
    Vec3 centroid;
    double radius; // largest centroid-to-vertex distance
    double area;
};

std::vector<Panel> panels_of(const TriangulatedSurface& mesh) {
    std::vector<Panel> panels;
    panels.reserve(mesh.size());
    for (std::size_t k = 0; k < mesh.size(); ++k) {
        const auto& t = mesh.triangles[k];
        const Vec3 a = mesh.vertices[t[0]], b = mesh.vertices[t[1]], c = mesh.vertices[t[2]];
        const Vec3 centroid = (a + b + c) / 3.0;
        const double radius = std::sqrt(std::max({norm2(a - centroid), norm2(b - centroid), norm2(c - centroid)}));
        panels.push_back({FlatTriangle{a, b, c, mesh.normals[k]}, centroid, radius, mesh.areas[k]});
    }
    return panels;
}

bool is_near(const Panel& p, Vec3 x) { return norm2(x - p.centroid) < kNearFieldRatio * kNearFieldRatio * p.radius * p.radius; }

double potential_entry(const Panel& p, Vec3 x, bool self) {
    if (self || is_near(p, x)) {
        return triangle_potential(p.tri, x);
    }
    return p.area * newton_kernel(x, p.centroid);
}

struct WeightedPoint {
    Vec3 x;
    double w;
};

constexpr int kOuterRuleOrder = 4;

// Collapsed Gauss product rule on a triangle; weights sum to its area.
std::vector<WeightedPoint> triangle_rule(const Panel& p, int q) {
    const GaussRule1D& g = gauss_legendre(q);
    std::vector<WeightedPoint> out;
    out.reserve(static_cast<std::size_t>(q * q));
    for (int i = 0; i < q; ++i) {
        const double u = 0.5 * (g.nodes[i] + 1.0);
        for (int j = 0; j < q; ++j) {
            const double v = 0.5 * (g.nodes[j] + 1.0);
            const Vec3 x = p.tri.a + u * (p.tri.b - p.tri.a) + (1.0 - u) * v * (p.tri.c - p.tri.a);
            out.push_back({x, 0.5 * g.weights[i] * g.weights[j] * (1.0 - u) * p.area});
        }
    }
    return out;
}

void require_mesh(const TriangulatedSurface& mesh) {
    if (mesh.size() == 0) {
        throw MeshError("capacitance: empty mesh");
    }
}

constexpr double kInvTwoPi = 1.0 / (2.0 * pi);

} // namespace

DenseMatrix single_layer_matrix(const TriangulatedSurface& mesh, Execution exec) {
    require_mesh(mesh);
    const std::vector<Panel> panels = panels_of(mesh);
    const std::size_t n = mesh.size();
    DenseMatrix g(n, n);
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
    for (std::size_t j = 0; j < n; ++j) {
        const Vec3 x = mesh.collocation[j];
        for (std::size_t k = 0; k < n; ++k) {
            g(j, k) = potential_entry(panels[k], x, j == k);
        }
    }
    return g;
}

std::vector<double> single_layer_column_weights(const TriangulatedSurface& mesh, Execution exec) {
    require_mesh(mesh);
    const std::vector<Panel> panels = panels_of(mesh);
    const std::size_t n = mesh.size();
    std::vector<double> weights(n, 0.0);
    std::vector<std::vector<WeightedPoint>> fine(n), coarse(n);
    for (std::size_t j = 0; j < n; ++j) {
        fine[j] = triangle_rule(panels[j], kOuterRuleOrder);
        coarse[j] = triangle_rule(panels[j], 2);
    }
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
    for (std::size_t k = 0; k < n; ++k) {
        const Panel& source = panels[k];
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double reach = std::max(source.radius, panels[j].radius);
            const double d2 = norm2(panels[j].centroid - source.centroid);
            if (d2 >= kNearFieldRatio * kNearFieldRatio * reach * reach) {
                sum += panels[j].area * source.area * newton_kernel(panels[j].centroid, source.centroid);
                continue;
            }
            const auto& rule = (j == k || d2 < 4.0 * reach * reach) ? fine[j] : coarse[j];
            for (const WeightedPoint& wp : rule) {
                sum += wp.w * triangle_potential(source.tri, wp.x);
            }
        }
        weights[k] = sum;
    }
    return weights;
}

double capacitance_zeroth(const TriangulatedSurface& mesh, double epsilon0) {
    const std::vector<double> g = single_layer_column_weights(mesh);
    double energy = 0.0;
    for (double v : g) {
        energy += v;
    }
    return 4.0 * pi * epsilon0 * mesh.total_area * mesh.total_area / energy;
}

DensityField DensityField::constant(const TriangulatedSurface& m, double v) { return {&m, std::vector<double>(m.size(), v)}; }

double DensityField::integral() const {
    double s = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        s += values[k] * mesh->areas[k];
    }
    return s;
}

DoubleLayerOperator::DoubleLayerOperator(const TriangulatedSurface& mesh, NormalAt normal, bool rank_complete,
                                         Execution exec)
    : normal_(normal) {
    require_mesh(mesh);
    const std::vector<Panel> panels = panels_of(mesh);
    const std::size_t n = mesh.size();
    matrix_ = DenseMatrix(n, n);
    DenseMatrix& m = matrix_;

#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
    for (std::size_t j = 0; j < n; ++j) {
        const SurfacePoint target(mesh.collocation[j], mesh.normals[j]);
        for (std::size_t k = 0; k < n; ++k) {
            if (j == k) {
                continue; // flat self-panel contributes nothing
            }
            const Panel& p = panels[k];
            double v = 0.0;
            if (normal == NormalAt::target) {
                if (is_near(p, target.position())) {
                    v = -kInvTwoPi * dot(target.normal(), triangle_field(p.tri, target.position()));
                } else {
                    v = kInvTwoPi * p.area * dipole_kernel(target, p.centroid);
                }
            } else {
                if (is_near(p, target.position())) {
                    v = -kInvTwoPi * triangle_solid_angle(p.tri, target.position());
                } else {
                    v = kInvTwoPi * p.area * dipole_kernel(SurfacePoint(p.centroid, p.tri.n), target.position());
                }
            }
            m(j, k) = v;
        }
    }

    if (!rank_complete) {
        return;
    }
    if (normal == NormalAt::source) {
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
        for (std::size_t j = 0; j < n; ++j) {
            double off = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                if (k != j) {
                    off += m(j, k);
                }
            }
            m(j, j) = -1.0 - off;
        }
    } else {
        std::vector<double> diag(n);
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
        for (std::size_t k = 0; k < n; ++k) {
            double off = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != k) {
                    off += mesh.areas[j] * m(j, k);
                }
            }
            diag[k] = -1.0 - off / mesh.areas[k];
        }
        for (std::size_t k = 0; k < n; ++k) {
            m(k, k) = diag[k];
        }
    }
}

std::vector<double> DoubleLayerOperator::apply(const std::vector<double>& in, Execution exec) const {
    const std::size_t n = matrix_.rows;
    if (in.size() != n) {
        throw ArgumentError("DoubleLayerOperator::apply: size mismatch");
    }
    std::vector<double> out(n);
    const double* a = matrix_.data.data();
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
    for (std::size_t j = 0; j < n; ++j) {
        const double* row = a + j * n;
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            s += row[k] * in[k];
        }
        out[j] = s;
    }
    return out;
}

DensityField apply_A(const DoubleLayerOperator& op, const DensityField& delta) {
    return {delta.mesh, op.apply(delta.values)};
}

DensityField apply_A(const TriangulatedSurface& mesh, const DensityField& delta) {
    if (delta.values.size() != mesh.size()) {
        throw ArgumentError("apply_A: density lives on a different mesh");
    }
    const DoubleLayerOperator op(mesh, DoubleLayerOperator::NormalAt::target);
    return {&mesh, op.apply(delta.values)};
}

CapacitanceRun iterate_capacitance(const TriangulatedSurface& mesh, double epsilon0, int max_iter, double stop_tol,
                                   Execution exec) {
    if (max_iter < 0) {
        throw ArgumentError("iterate_capacitance: max_iter must be >= 0");
    }
    require_mesh(mesh);
    const std::size_t n = mesh.size();
    const double s_total = mesh.total_area;
    const double numerator = 4.0 * pi * epsilon0 * s_total * s_total;

    CapacitanceRun run;
    run.n_azimuth = mesh.n_azimuth;
    run.m_polar = mesh.m_polar;
    run.triangle_count = n;
    run.epsilon0 = epsilon0;
    run.surface_area = s_total;

    const std::vector<double> g = single_layer_column_weights(mesh, exec);
    DensityField delta = DensityField::constant(mesh, 1.0);

    auto record = [&](int index) {
        double energy = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            energy += g[k] * delta.values[k];
        }
        if (!(energy > 0.0) || !std::isfinite(energy)) {
            throw DivergenceError("capacitance iteration diverged at step " + std::to_string(index), run);
        }
        const auto [lo, hi] = std::minmax_element(delta.values.begin(), delta.values.end());
        run.iterates.push_back({index, numerator / energy, *lo, *hi, delta.integral()});
        run.capacitance = run.iterates.back().capacitance;
    };

    record(0);
    if (max_iter == 0) {
        run.converged = true;
        return run;
    }
    const DoubleLayerOperator a_op(mesh, DoubleLayerOperator::NormalAt::target, true, exec);
    for (int it = 1; it <= max_iter; ++it) {
        std::vector<double> next = a_op.apply(delta.values, exec);
        for (double& v : next) {
            v = -v;
        }
        delta.values = std::move(next);
        const double total = delta.integral();
        if (!(total > 0.0)) {
            throw DivergenceError("density lost positivity at step " + std::to_string(it), run);
        }
        const double scale = s_total / total;
        for (double& v : delta.values) {
            v *= scale;
        }
        record(it);
        const std::size_t last = run.iterates.size() - 1;
        const double diff = std::abs(run.iterates[last].capacitance - run.iterates[last - 1].capacitance);
        if (last >= 2) {
            const double prev = std::abs(run.iterates[last - 1].capacitance - run.iterates[last - 2].capacitance);
            if (prev > 0.0) {
                run.ratio_estimate = diff / prev;
            }
        }
        if (diff <= stop_tol * std::abs(run.iterates[last].capacitance)) {
            run.converged = true;
            break;
        }
    }
    return run;
}

double ellipsoid_capacitance(double a, double b, double c, double epsilon0) {
    if (!(a > 0.0 && b > 0.0 && c > 0.0)) {
        throw ArgumentError("ellipsoid_capacitance: semi-axes must be positive");
    }
    return 4.0 * pi * epsilon0 / boost::math::ellint_rf(a * a, b * b, c * c);
}

double oblate_spheroid_capacitance(double a, double c, double epsilon0) {
    if (!(a > c && c >= 0.0)) {
        throw ArgumentError("oblate_spheroid_capacitance: requires a > c >= 0");
    }
    return 4.0 * pi * epsilon0 * std::sqrt(a * a - c * c) / std::acos(c / a);
}

double disc_capacitance(double a, double epsilon0) { return 8.0 * a * epsilon0; }

} // namespace wscub
