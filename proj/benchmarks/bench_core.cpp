#include <benchmark/benchmark.h>

#include <random>

#include "hmg/cycle.hpp"
#include "hmg/problems.hpp"
#include "hmg/transfer.hpp"

using namespace hmg;

namespace {

Field random_field(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Field f(n);
  for (auto& v : f) v = Complex(dist(rng), dist(rng));
  return f;
}

void BM_apply_2d(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ProblemInstance p = constant_k(40.0, n);
  const LevelOperator op(p.grid, p.k2, PerturbationScheme::csg(0.1));
  const Field u = random_field(op.size(), 7);
  Field out(op.size());
  for (auto _ : state) {
    op.apply(u, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(op.size()));
}
BENCHMARK(BM_apply_2d)->Arg(64)->Arg(128)->Arg(256);

void BM_apply_3d(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ProblemInstance p = wedge_3d(10.0, n, 2 * n, n);
  const LevelOperator op(p.grid, p.k2, PerturbationScheme::csg(0.1));
  const Field u = random_field(op.size(), 7);
  Field out(op.size());
  for (auto _ : state) {
    op.apply(u, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(op.size()));
}
BENCHMARK(BM_apply_3d)->Arg(32)->Arg(64);

void BM_transfer_roundtrip_2d(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ProblemInstance p = constant_k(40.0, n);
  const Grid coarse = coarsen_grid(*p.grid);
  const Field u = random_field(p.grid->unknown_count(), 3);
  for (auto _ : state) {
    Field c = restrict_full_weighting(u, *p.grid, coarse);
    Field f = interpolate_linear(c, coarse, *p.grid);
    benchmark::DoNotOptimize(f.data());
  }
}
BENCHMARK(BM_transfer_roundtrip_2d)->Arg(128)->Arg(256);

void BM_gmres3_smooth_2d(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ProblemInstance p = constant_k(40.0, n);
  const LevelOperator op(p.grid, p.k2, PerturbationScheme::unperturbed());
  const Field b = random_field(op.size(), 11);
  for (auto _ : state) {
    Field x(op.size(), Complex(0.0));
    Field r = b;
    relax(op, x, r, GmresSmoother{3});
    benchmark::DoNotOptimize(x.data());
  }
}
BENCHMARK(BM_gmres3_smooth_2d)->Arg(128)->Arg(256);

void BM_vcycle_2d(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ProblemInstance p = constant_k(40.0, n);
  const Hierarchy h = build_hierarchy(p, CycleConfig{});
  for (auto _ : state) {
    Field x = vcycle(h, 0, Field(p.rhs.size(), Complex(0.0)), p.rhs);
    benchmark::DoNotOptimize(x.data());
  }
}
BENCHMARK(BM_vcycle_2d)->Arg(128)->Arg(256);

void BM_full_solve_2d(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ProblemInstance p = constant_k(40.0, n);
  const Hierarchy h = build_hierarchy(p, CycleConfig{});
  for (auto _ : state) {
    auto [x, rep] = solve(h, p.rhs, 1e-7, 200);
    benchmark::DoNotOptimize(rep.iterations);
  }
}
BENCHMARK(BM_full_solve_2d)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
