// Serial reference path vs OpenMP path for the assembly kernels.

#include "wscub/capacitance.hpp"
#include "wscub/execution.hpp"
#include "wscub/periodic_cubature.hpp"
#include "wscub/planar_cubature.hpp"
#include "wscub/surface_mesh.hpp"

#include <benchmark/benchmark.h>

using namespace wscub;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) == 0 ? Execution::serial : Execution::parallel; }

const TriangulatedSurface& spheroid() {
    static const TriangulatedSurface mesh = project_to_surface(triangulate_sphere(40, 30), StarShape::ellipsoid(1, 1, 0.5));
    return mesh;
}

void BM_PeriodicWeights(benchmark::State& state) {
    const PeriodicGrid grid(128);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_weights_exact(grid, SingularExponent(0.5), 10, 20, 0.5, std::nullopt, mode(state)));
    }
}

void BM_PlanarWeights(benchmark::State& state) {
    const PlanarGrid grid(128);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            build_planar_weights(grid, SingularExponent(0.5), {0.1, -0.2}, PlanarMode::per_cell, 0.5, mode(state)));
    }
}

void BM_SingleLayerWeights(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(single_layer_column_weights(spheroid(), mode(state)));
    }
}

void BM_DoubleLayerAssembly(benchmark::State& state) {
    for (auto _ : state) {
        DoubleLayerOperator op(spheroid(), DoubleLayerOperator::NormalAt::target, true, mode(state));
        benchmark::DoNotOptimize(op.entry(0, 1));
    }
}

void BM_CapacitanceIteration(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(iterate_capacitance(spheroid(), 1.0, 50, 1e-7, mode(state)));
    }
}

} // namespace

// Argument 0 = serial reference, 1 = OpenMP.
BENCHMARK(BM_PeriodicWeights)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PlanarWeights)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SingleLayerWeights)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DoubleLayerAssembly)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CapacitanceIteration)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->Iterations(1);

BENCHMARK_MAIN();
