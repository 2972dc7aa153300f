#include <benchmark/benchmark.h>

#include <numbers>

#include "heis/distance.hpp"
#include "heis/geodesics.hpp"
#include "heis/mesh.hpp"

namespace {

void BM_ClosedForm(benchmark::State& state) {
  const heis::GeodesicSpec spec(0.37, 1.2);
  double s = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(heis::geodesic_from_origin(spec, s));
    s += 1e-3;
  }
}
BENCHMARK(BM_ClosedForm);

void BM_ClosedFormSmallGamma(benchmark::State& state) {
  const heis::GeodesicSpec spec(3e-5, 1.2);
  double s = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(heis::geodesic_from_origin(spec, s));
    s += 1e-3;
  }
}
BENCHMARK(BM_ClosedFormSmallGamma);

void BM_Rk4(benchmark::State& state) {
  const heis::GeodesicSpec spec(0.5, 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(heis::integrate_geodesic(spec, 10.0, static_cast<int>(state.range(0))));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Rk4)->Arg(1000)->Arg(10000);

void BM_RiemannianDistance(benchmark::State& state) {
  const heis::HeisPoint target{0.8, -1.1, 1.7};
  for (auto _ : state) benchmark::DoNotOptimize(heis::riemannian_distance({}, target));
}
BENCHMARK(BM_RiemannianDistance)->Unit(benchmark::kMillisecond);

void BM_RiemannianDistanceAxis(benchmark::State& state) {
  const heis::HeisPoint target{0.0, 0.0, 2.5 * std::numbers::pi};
  for (auto _ : state) benchmark::DoNotOptimize(heis::riemannian_distance({}, target));
}
BENCHMARK(BM_RiemannianDistanceAxis)->Unit(benchmark::kMillisecond);

void BM_BruteForceDistance(benchmark::State& state) {
  const heis::HeisPoint target{0.8, -1.1, 1.7};
  const double bound = heis::path_length_bound(target);
  for (auto _ : state) benchmark::DoNotOptimize(heis::brute_force_distance(target, {}, bound));
}
BENCHMARK(BM_BruteForceDistance)->Unit(benchmark::kMillisecond);

void BM_SphereMesh(benchmark::State& state) {
  const heis::SphereGrid grid{static_cast<int>(state.range(0)), static_cast<int>(state.range(0)) + 1, 5.0};
  for (auto _ : state) benchmark::DoNotOptimize(heis::sphere_exp_mesh(grid));
}
BENCHMARK(BM_SphereMesh)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_DetectSingularities(benchmark::State& state) {
  const heis::SphereGrid grid{64, 65, static_cast<double>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(heis::detect_singularities(grid));
}
BENCHMARK(BM_DetectSingularities)->Arg(1)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
