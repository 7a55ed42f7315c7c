#include <benchmark/benchmark.h>

#include <cmath>

#include "lcap/flow.hpp"
#include "lcap/kernels.hpp"
#include "lcap/mesh.hpp"

using namespace lcap;
using kernels::Exec;

namespace {

SpacelikeGraph cap(int n) {
  return SpacelikeGraph::build(Domain::disc(1.0, n),
                               [](double x, double y) { return std::sqrt(1 + x * x + y * y) - std::sqrt(2.0); },
                               Pseudosphere{});
}

Exec exec_of(const benchmark::State& st) { return st.range(1) == 0 ? Exec::Serial : Exec::Parallel; }

void set_label(benchmark::State& st, std::size_t tris) {
  st.SetLabel(exec_of(st) == Exec::Serial ? "serial" : "parallel");
  st.SetItemsProcessed(static_cast<int64_t>(st.iterations() * tris));
}

void BM_AreaTerms(benchmark::State& st) {
  const auto g = cap(static_cast<int>(st.range(0)));
  std::vector<kernels::AreaTerm> out(g.triangles().size());
  for (auto _ : st) {
    kernels::area_terms(g.positions(), g.triangles(), out, exec_of(st));
    benchmark::DoNotOptimize(out.data());
  }
  set_label(st, out.size());
}

void BM_VolumeTerms(benchmark::State& st) {
  const auto g = cap(static_cast<int>(st.range(0)));
  std::vector<kernels::VolumeTerm> out(g.triangles().size());
  for (auto _ : st) {
    kernels::volume_terms(g.positions(), g.triangles(), out, exec_of(st));
    benchmark::DoNotOptimize(out.data());
  }
  set_label(st, out.size());
}

void BM_DualMasses(benchmark::State& st) {
  const auto g = cap(static_cast<int>(st.range(0)));
  std::vector<kernels::CornerMasses> out(g.triangles().size());
  for (auto _ : st) {
    kernels::dual_masses(g.positions(), g.triangles(), out, exec_of(st));
    benchmark::DoNotOptimize(out.data());
  }
  set_label(st, out.size());
}

void BM_Slopes(benchmark::State& st) {
  const auto g = cap(static_cast<int>(st.range(0)));
  std::vector<double> out(g.triangles().size());
  for (auto _ : st) {
    kernels::slopes(g.positions(), g.triangles(), out, exec_of(st));
    benchmark::DoNotOptimize(out.data());
  }
  set_label(st, out.size());
}

void BM_MeanCurvature(benchmark::State& st) {
  const auto g = cap(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(mean_curvature(g, exec_of(st)));
  set_label(st, g.triangles().size());
}

void BM_Solve(benchmark::State& st) {
  const auto init = perturb(cap(static_cast<int>(st.range(0))), 0.02, 1);
  SolveOptions o;
  o.lambda = 1.0;
  o.H_target = 1.0;
  o.exec = exec_of(st);
  for (auto _ : st) benchmark::DoNotOptimize(solve_stationary(Pseudosphere{}, o, init).iterations);
  set_label(st, init.triangles().size());
}

void kernel_sizes(benchmark::internal::Benchmark* b) {
  for (int n : {64, 256, 512})
    for (int e : {0, 1}) b->Args({n, e});
}

}  // namespace

BENCHMARK(BM_AreaTerms)->Apply(kernel_sizes);
BENCHMARK(BM_VolumeTerms)->Apply(kernel_sizes);
BENCHMARK(BM_DualMasses)->Apply(kernel_sizes);
BENCHMARK(BM_Slopes)->Apply(kernel_sizes);
BENCHMARK(BM_MeanCurvature)->Apply(kernel_sizes);
BENCHMARK(BM_Solve)->Args({32, 0})->Args({32, 1})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
