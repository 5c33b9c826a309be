#include <benchmark/benchmark.h>

#include "steklov/assembly.hpp"
#include "steklov/bounds.hpp"
#include "steklov/eigensolve.hpp"

using namespace steklov;

static void BM_AssembleCR(benchmark::State& state) {
  const Mesh mesh = generate_uniform_square(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble(mesh, ElementKind::crouzeix_raviart));
  state.counters["dofs"] = static_cast<double>(mesh.num_edges());
}
BENCHMARK(BM_AssembleCR)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_SchurReduce(benchmark::State& state) {
  const Pencil p = make_pencil(
      assemble(generate_uniform_square(static_cast<int>(state.range(0))),
               ElementKind::crouzeix_raviart));
  for (auto _ : state) benchmark::DoNotOptimize(schur_reduce(p));
}
BENCHMARK(BM_SchurReduce)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_SolvePencil(benchmark::State& state) {
  const Pencil p = make_pencil(
      assemble(generate_uniform_square(static_cast<int>(state.range(0))),
               ElementKind::crouzeix_raviart));
  for (auto _ : state) benchmark::DoNotOptimize(solve_pencil_largest(p, 5));
}
BENCHMARK(BM_SolvePencil)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_BoundsSquare(benchmark::State& state) {
  const Mesh mesh = generate_uniform_square(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(compute_bounds(mesh, {5, true}));
}
BENCHMARK(BM_BoundsSquare)->Arg(8)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_BoundsLShape(benchmark::State& state) {
  const Mesh mesh = generate_graded_lshape_for_count(static_cast<std::size_t>(state.range(0)), 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(compute_bounds(mesh, {5, true}));
  state.counters["elements"] = static_cast<double>(mesh.num_triangles());
}
BENCHMARK(BM_BoundsLShape)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
