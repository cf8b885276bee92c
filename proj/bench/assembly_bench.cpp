// Serial vs OpenMP finite-element assembly kernels.
#include <benchmark/benchmark.h>

#include "malm/problems.hpp"

using namespace malm;

namespace {

Vector test_point(int n) { return Vector::LinSpaced(n, -0.5, 0.5); }

void bench_residual(benchmark::State& state, AssemblyMode mode) {
  Transcription trans(make_ocp_instance(), static_cast<int>(state.range(0)));
  auto problem = trans.assemble(mode);
  const Vector x = test_point(problem->dim());
  for (auto _ : state) {
    benchmark::DoNotOptimize(problem->residual(x));
  }
}

void bench_jacobian(benchmark::State& state, AssemblyMode mode) {
  Transcription trans(make_ocp_instance(), static_cast<int>(state.range(0)));
  auto problem = trans.assemble(mode);
  const Vector x = test_point(problem->dim());
  for (auto _ : state) {
    benchmark::DoNotOptimize(problem->residual_jacobian(x));
  }
}

void bench_weighted_hessian(benchmark::State& state, AssemblyMode mode) {
  Transcription trans(make_ocp_instance(), static_cast<int>(state.range(0)));
  auto problem = trans.assemble(mode);
  const Vector x = test_point(problem->dim());
  const Vector w = Vector::Ones(problem->residual_dim());
  for (auto _ : state) {
    benchmark::DoNotOptimize(problem->weighted_residual_hessian(x, w));
  }
}

}  // namespace

BENCHMARK_CAPTURE(bench_residual, serial, AssemblyMode::kSerial)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK_CAPTURE(bench_residual, openmp, AssemblyMode::kParallel)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK_CAPTURE(bench_jacobian, serial, AssemblyMode::kSerial)->Arg(256)->Arg(1024);
BENCHMARK_CAPTURE(bench_jacobian, openmp, AssemblyMode::kParallel)->Arg(256)->Arg(1024);
BENCHMARK_CAPTURE(bench_weighted_hessian, serial, AssemblyMode::kSerial)->Arg(256)->Arg(1024);
BENCHMARK_CAPTURE(bench_weighted_hessian, openmp, AssemblyMode::kParallel)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
