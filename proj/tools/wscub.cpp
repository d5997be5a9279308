// Command-line front end: capacitance runs, gamma, convergence-rate studies
// and mesh utilities. Exit codes: 0 ok, 1 runtime failure, 2 usage error.

#include "wscub/analysis.hpp"
#include "wscub/capacitance.hpp"
#include "wscub/errors.hpp"
#include "wscub/execution.hpp"
#include "wscub/periodic_cubature.hpp"
#include "wscub/surface_mesh.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace wscub;
using Json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShapeSpec {
    enum class Kind { sphere, ellipsoid, mesh } kind = Kind::sphere;
    double a = 1.0, b = 1.0, c = 1.0;
    std::string path;
};

std::vector<double> parse_reals(const std::string& text, std::size_t count, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw UsageError(what + ": '" + item + "' is not a number");
        }
        if (used != item.size()) {
            throw UsageError(what + ": '" + item + "' is not a number");
        }
        out.push_back(v);
    }
    if (out.size() != count) {
        throw UsageError(what + ": expected " + std::to_string(count) + " comma-separated values");
    }
    return out;
}

ShapeSpec parse_shape(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw UsageError("--shape must be ellipsoid:a,b,c, sphere:a or mesh:PATH");
    }
    const std::string kind = text.substr(0, colon);
    const std::string rest = text.substr(colon + 1);
    ShapeSpec s;
    if (kind == "sphere") {
        s.kind = ShapeSpec::Kind::sphere;
        s.a = s.b = s.c = parse_reals(rest, 1, "sphere")[0];
    } else if (kind == "ellipsoid") {
        const auto v = parse_reals(rest, 3, "ellipsoid");
        s.kind = ShapeSpec::Kind::ellipsoid;
        s.a = v[0];
        s.b = v[1];
        s.c = v[2];
    } else if (kind == "mesh") {
        s.kind = ShapeSpec::Kind::mesh;
        s.path = rest;
        if (rest.empty()) {
            throw UsageError("mesh: missing path");
        }
        return s;
    } else {
        throw UsageError("unknown shape kind '" + kind + "'");
    }
    if (!(s.a > 0.0 && s.b > 0.0 && s.c > 0.0)) {
        throw UsageError("shape semi-axes must be positive");
    }
    return s;
}

void check_mesh_params(int n, int m) {
    if (n < 3 || m < 2 || m % 2 != 0) {
        throw UsageError("mesh needs --n >= 3 and even --m >= 2");
    }
}

TriangulatedSurface build_mesh(const ShapeSpec& shape, int n, int m) {
    if (shape.kind == ShapeSpec::Kind::mesh) {
        return mesh_io_read(shape.path);
    }
    check_mesh_params(n, m);
    const StarShape star = shape.kind == ShapeSpec::Kind::sphere ? StarShape::sphere(shape.a)
                                                                  : StarShape::ellipsoid(shape.a, shape.b, shape.c);
    return project_to_surface(triangulate_sphere(n, m), star);
}

struct Exact {
    double value;
    std::string formula;
};

std::optional<Exact> exact_capacitance(const ShapeSpec& s) {
    switch (s.kind) {
    case ShapeSpec::Kind::sphere:
        return Exact{4.0 * pi * s.a, "sphere"};
    case ShapeSpec::Kind::ellipsoid:
        if (s.a == s.b && s.b == s.c) {
            return Exact{4.0 * pi * s.a, "sphere"};
        }
        if (s.a == s.b && s.c < s.a) {
            return Exact{oblate_spheroid_capacitance(s.a, s.c), "oblate_spheroid"};
        }
        return Exact{ellipsoid_capacitance(s.a, s.b, s.c), "ellipsoid"};
    case ShapeSpec::Kind::mesh:
        return std::nullopt;
    }
    return std::nullopt;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + out_path + "'");
    }
    out << text;
}

struct Common {
    std::string format = "json";
    std::string out;
    int threads = 0;
    std::uint64_t seed = 1;
};

// --- capacitance -----------------------------------------------------------

struct CapacitanceArgs {
    std::string shape;
    int n = 40;
    int m = 30;
    int max_iter = 50;
    double stop_tol = 1e-7;
    bool timing = false;
};

int run_capacitance(const CapacitanceArgs& args, const Common& common) {
    const ShapeSpec shape = parse_shape(args.shape);
    if (shape.kind != ShapeSpec::Kind::mesh) {
        check_mesh_params(args.n, args.m);
    }
    if (args.max_iter < 0 || !(args.stop_tol >= 0.0)) {
        throw UsageError("--max-iter and --stop-tol must be non-negative");
    }
    const auto start = std::chrono::steady_clock::now();
    const TriangulatedSurface mesh = build_mesh(shape, args.n, args.m);
    const CapacitanceRun run = iterate_capacitance(mesh, 1.0, args.max_iter, args.stop_tol);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto exact = exact_capacitance(shape);
    if (!run.converged) {
        std::fprintf(stderr, "warning: not converged after %d iterations (last ratio %s)\n", args.max_iter,
                     run.ratio_estimate ? fmt17(*run.ratio_estimate).c_str() : "n/a");
    }
    std::fprintf(stderr, "time: %.3f s\n", seconds);

    std::optional<double> error, relative;
    if (exact) {
        error = run.capacitance - exact->value;
        relative = std::abs(*error) / exact->value;
    }
    if (common.format == "csv") {
        std::string text = "c,n,m,N,exact,error,relative_error,time_seconds\n";
        text += (shape.kind == ShapeSpec::Kind::mesh ? std::string() : fmt17(shape.c)) + ",";
        text += std::to_string(run.n_azimuth) + "," + std::to_string(run.m_polar) + "," +
                std::to_string(run.triangle_count) + ",";
        text += (exact ? fmt17(exact->value) : std::string()) + "," + (error ? fmt17(*error) : std::string()) + "," +
                (relative ? fmt17(*relative) : std::string()) + "," + fmt17(seconds) + "\n";
        emit(text, common.out);
        return 0;
    }
    Json j;
    j["command"] = "capacitance";
    j["shape"] = args.shape;
    j["n"] = run.n_azimuth;
    j["m"] = run.m_polar;
    j["N"] = run.triangle_count;
    j["epsilon0"] = run.epsilon0;
    j["surface_area"] = run.surface_area;
    j["capacitance"] = run.capacitance;
    j["converged"] = run.converged;
    j["ratio_estimate"] = run.ratio_estimate ? Json(*run.ratio_estimate) : Json(nullptr);
    if (exact) {
        j["exact"] = exact->value;
        j["exact_formula"] = exact->formula;
        j["error"] = *error;
        j["relative_error"] = *relative;
        if (shape.kind == ShapeSpec::Kind::ellipsoid && shape.a == shape.b) {
            j["disc_limit"] = disc_capacitance(shape.a);
        }
    } else {
        j["exact"] = nullptr;
    }
    Json iterates = Json::array();
    for (const IterationRecord& r : run.iterates) {
        iterates.push_back({{"k", r.index},
                            {"capacitance", r.capacitance},
                            {"density_min", r.density_min},
                            {"density_max", r.density_max},
                            {"density_integral", r.density_integral}});
    }
    j["iterates"] = iterates;
    if (args.timing) {
        j["time_seconds"] = seconds;
    }
    emit(j.dump(2) + "\n", common.out);
    return 0;
}

// --- gamma -----------------------------------------------------------------

int run_gamma(double lambda, double tol, const Common& common) {
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw UsageError("--lambda must lie in (0, 1)");
    }
    if (!(tol > 0.0)) {
        throw UsageError("--tol must be positive");
    }
    const double g = gamma_constant(SingularExponent(lambda), tol);
    if (common.format == "csv") {
        emit("lambda,tol,gamma\n" + fmt17(lambda) + "," + fmt17(tol) + "," + fmt17(g) + "\n", common.out);
        return 0;
    }
    Json j;
    j["command"] = "gamma";
    j["lambda"] = lambda;
    j["tol"] = tol;
    j["gamma"] = g;
    emit(j.dump(2) + "\n", common.out);
    return 0;
}

// --- rate ------------------------------------------------------------------

struct RateArgs {
    std::string domain = "periodic";
    std::string family;
    double alpha = 0.5;
    double lambda = 0.5;
    std::vector<int> sizes{8, 16, 32, 64};
    int oracle = 512;
    int targets = 20;
    int levels = 12;
    std::string mode = "per_cell";
};

int run_rate(const RateArgs& args, const Common& common) {
    if (!(args.alpha > 0.0 && args.alpha <= 1.0)) {
        throw UsageError("--alpha must lie in (0, 1]");
    }
    if (!(args.lambda > 0.0 && args.lambda < 1.0)) {
        throw UsageError("--lambda must lie in (0, 1)");
    }
    if (args.domain != "periodic" && args.domain != "planar") {
        throw UsageError("--domain must be periodic or planar");
    }
    if (args.targets < 1) {
        throw UsageError("--targets must be positive");
    }
    for (int n : args.sizes) {
        if (n < 2) {
            throw UsageError("--sizes entries must be >= 2");
        }
    }
    RuleFamily family;
    family.domain = args.domain == "periodic" ? Domain::periodic : Domain::planar;
    family.lambda = SingularExponent(args.lambda);
    family.alpha = args.alpha;
    if (args.mode == "merged") {
        family.planar_mode = PlanarMode::merged_near_field;
    } else if (args.mode != "per_cell") {
        throw UsageError("--mode must be per_cell or merged");
    }
    const std::string family_text =
        args.family.empty() ? (family.domain == Domain::periodic ? "periodic_cusp" : "planar_cusp") : args.family;
    HolderFamily hf;
    try {
        hf = parse_family(family_text);
    } catch (const ArgumentError& e) {
        throw UsageError(e.what());
    }
    HolderParams params;
    params.domain = family.domain;
    params.levels = args.levels;
    const HolderTestFunction f = make_holder(hf, args.alpha, params);
    const int coarse = *std::min_element(args.sizes.begin(), args.sizes.end());
    const auto targets = sample_targets(family.domain, static_cast<std::size_t>(args.targets), coarse, common.seed);
    const RateReport report = measure_rate(family, f, args.sizes, targets, args.oracle);

    auto opt = [](const std::optional<double>& v) { return v ? fmt17(*v) : std::string("nan"); };
    if (common.format == "csv") {
        std::string text = "n,sup_error\n";
        for (std::size_t g = 0; g < report.grid_sizes.size(); ++g) {
            text += std::to_string(report.grid_sizes[g]) + "," + fmt17(report.sup_errors[g]) + "\n";
        }
        text += "# fitted_order=" + opt(report.fitted_order) + "\n";
        text += "# fitted_constant=" + opt(report.fitted_constant) + "\n";
        text += "# fit_residual=" + opt(report.fit_residual) + "\n";
        text += "# theory_constant=" + opt(report.theory_constant) + "\n";
        text += "# oracle_resolution=" + std::to_string(report.oracle_resolution) + "\n";
        text += std::string("# non_monotone=") + (report.non_monotone ? "true" : "false") + "\n";
        emit(text, common.out);
        return 0;
    }
    auto jopt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
    Json j;
    j["command"] = "rate";
    j["domain"] = args.domain;
    j["family"] = family_text;
    j["alpha"] = args.alpha;
    j["lambda"] = args.lambda;
    j["seed"] = common.seed;
    j["grid_sizes"] = report.grid_sizes;
    j["sup_errors"] = report.sup_errors;
    j["oracle_resolution"] = report.oracle_resolution;
    j["target_count"] = report.target_count;
    j["fitted_order"] = jopt(report.fitted_order);
    j["fitted_constant"] = jopt(report.fitted_constant);
    j["fit_residual"] = jopt(report.fit_residual);
    j["fit_skipped"] = report.fit_skipped;
    j["non_monotone"] = report.non_monotone;
    j["theory_constant"] = jopt(report.theory_constant);
    emit(j.dump(2) + "\n", common.out);
    return 0;
}

// --- mesh ------------------------------------------------------------------

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string to_soup(const TriangulatedSurface& mesh) {
    std::string out;
    for (const TriangleIndices& t : mesh.triangles) {
        for (int c = 0; c < 3; ++c) {
            const Vec3 v = mesh.vertices[t[c]];
            out += fmt17(v.x) + " " + fmt17(v.y) + " " + fmt17(v.z) + (c == 2 ? "\n" : " ");
        }
    }
    return out;
}

int run_mesh_generate(const std::string& shape_text, int n, int m, const Common& common) {
    const ShapeSpec shape = parse_shape(shape_text);
    if (shape.kind == ShapeSpec::Kind::mesh) {
        throw UsageError("mesh generate needs a sphere or ellipsoid shape");
    }
    emit(mesh_to_string(build_mesh(shape, n, m)), common.out);
    return 0;
}

int run_mesh_inspect(const std::string& path, const Common& common) {
    const TriangulatedSurface mesh = mesh_io_read(path);
    const auto [lo, hi] = std::minmax_element(mesh.areas.begin(), mesh.areas.end());
    Json j;
    j["command"] = "mesh inspect";
    j["vertices"] = mesh.vertices.size();
    j["triangles"] = mesh.size();
    j["surface_area"] = mesh.total_area;
    j["min_area"] = *lo;
    j["max_area"] = *hi;
    j["closed_oriented"] = is_closed_oriented(mesh);
    if (common.format == "csv") {
        emit("vertices,triangles,surface_area,min_area,max_area,closed_oriented\n" +
                 std::to_string(mesh.vertices.size()) + "," + std::to_string(mesh.size()) + "," +
                 fmt17(mesh.total_area) + "," + fmt17(*lo) + "," + fmt17(*hi) + "," +
                 (is_closed_oriented(mesh) ? "true" : "false") + "\n",
             common.out);
        return 0;
    }
    emit(j.dump(2) + "\n", common.out);
    return 0;
}

int run_mesh_convert(const std::string& path, const std::string& from, const std::string& to, const Common& common) {
    if ((from != "soup" && from != "wsmesh") || (to != "soup" && to != "wsmesh")) {
        throw UsageError("--from/--to must be soup or wsmesh");
    }
    const TriangulatedSurface mesh = from == "soup" ? mesh_from_triangle_soup(read_text(path)) : mesh_io_read(path);
    emit(to == "soup" ? to_soup(mesh) : mesh_to_string(mesh), common.out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weakly singular cubature and conductor capacitance"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", common.out, "Write output to this path instead of stdout");
    app.add_option("--threads", common.threads, "Worker threads (default: machine parallelism)");
    app.add_option("--seed", common.seed, "Seed for random target sampling");

    CapacitanceArgs cap;
    auto* cap_cmd = app.add_subcommand("capacitance", "Capacitance of a star-shaped conductor");
    cap_cmd->add_option("--shape", cap.shape, "ellipsoid:a,b,c | sphere:a | mesh:PATH")->required();
    cap_cmd->add_option("--n", cap.n, "Azimuthal subdivisions");
    cap_cmd->add_option("--m", cap.m, "Polar subdivisions (even)");
    cap_cmd->add_option("--max-iter", cap.max_iter, "Maximum iterations");
    cap_cmd->add_option("--stop-tol", cap.stop_tol, "Relative change that stops the iteration");
    cap_cmd->add_flag("--timing", cap.timing, "Include wall-clock time in the JSON report");

    double g_lambda = 0.5, g_tol = 1e-6;
    auto* gamma_cmd = app.add_subcommand("gamma", "Integral of the periodic kernel over the period square");
    gamma_cmd->add_option("--lambda", g_lambda, "Singularity exponent in (0, 1)")->required();
    gamma_cmd->add_option("--tol", g_tol, "Relative tolerance");

    RateArgs rate;
    auto* rate_cmd = app.add_subcommand("rate", "Empirical convergence order of a cubature family");
    rate_cmd->add_option("--domain", rate.domain, "periodic | planar");
    rate_cmd->add_option("--family", rate.family, "periodic_cusp | planar_cusp | radial_cusp | dyadic_cusp");
    rate_cmd->add_option("--alpha", rate.alpha, "Hoelder exponent in (0, 1]");
    rate_cmd->add_option("--lambda", rate.lambda, "Singularity exponent in (0, 1)");
    rate_cmd->add_option("--sizes", rate.sizes, "Grid sizes")->delimiter(',');
    rate_cmd->add_option("--oracle", rate.oracle, "Reference grid size (>= 8x the largest size)");
    rate_cmd->add_option("--targets", rate.targets, "Number of kernel-singularity locations");
    rate_cmd->add_option("--levels", rate.levels, "Levels of the dyadic_cusp family");
    rate_cmd->add_option("--mode", rate.mode, "Planar near field: per_cell | merged");

    auto* mesh_cmd = app.add_subcommand("mesh", "Generate, inspect or convert mesh files");
    mesh_cmd->require_subcommand(1);
    std::string gen_shape;
    int gen_n = 40, gen_m = 30;
    auto* gen_cmd = mesh_cmd->add_subcommand("generate", "Projected sphere triangulation");
    gen_cmd->add_option("--shape", gen_shape, "ellipsoid:a,b,c | sphere:a")->required();
    gen_cmd->add_option("--n", gen_n, "Azimuthal subdivisions");
    gen_cmd->add_option("--m", gen_m, "Polar subdivisions (even)");
    std::string inspect_path;
    auto* inspect_cmd = mesh_cmd->add_subcommand("inspect", "Summary of a mesh file");
    inspect_cmd->add_option("path", inspect_path, "Mesh file")->required();
    std::string convert_path, conv_from = "soup", conv_to = "wsmesh";
    auto* convert_cmd = mesh_cmd->add_subcommand("convert", "Convert between triangle soup and wsmesh");
    convert_cmd->add_option("path", convert_path, "Input file")->required();
    convert_cmd->add_option("--from", conv_from, "soup | wsmesh");
    convert_cmd->add_option("--to", conv_to, "soup | wsmesh");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        set_thread_count(common.threads);
        if (cap_cmd->parsed()) {
            return run_capacitance(cap, common);
        }
        if (gamma_cmd->parsed()) {
            return run_gamma(g_lambda, g_tol, common);
        }
        if (rate_cmd->parsed()) {
            return run_rate(rate, common);
        }
        if (gen_cmd->parsed()) {
            return run_mesh_generate(gen_shape, gen_n, gen_m, common);
        }
        if (inspect_cmd->parsed()) {
            return run_mesh_inspect(inspect_path, common);
        }
        if (convert_cmd->parsed()) {
            return run_mesh_convert(convert_path, conv_from, conv_to, common);
        }
    } catch (const UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const ArgumentError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const ConvergenceError& e) {
        std::fprintf(stderr, "error: %s (best estimate %s, error estimate %s)\n", e.what(),
                     fmt17(e.best_estimate()).c_str(), fmt17(e.error_estimate()).c_str());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
