#include <benchmark/benchmark.h>

#include <Eigen/Dense>
#include <random>

#include "hfsr/dictionary.hpp"
#include "hfsr/image.hpp"
#include "hfsr/pipeline.hpp"
#include "hfsr/solver.hpp"

using namespace hfsr;

namespace {

Eigen::VectorXd random_patch(int m, uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Eigen::VectorXd p(m);
  for (int i = 0; i < m; ++i) p[i] = dist(rng);
  return p;
}

ImagePlane random_plane(int w, int h, uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(0.2, 0.8);
  ImagePlane plane(w, h);
  double v = dist(rng);
  for (size_t i = 0; i < plane.size(); ++i) {
    // correlated walk, closer to natural image statistics than iid noise
    v = std::clamp(v + 0.1 * (dist(rng) - 0.5), 0.0, 1.0);
    plane.data[i] = v;
  }
  return plane;
}

void bm_build_dictionary(benchmark::State &state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_dictionary(GridSpec{}, 6, 6));
}
BENCHMARK(bm_build_dictionary);

void bm_render_dictionary_hr(benchmark::State &state) {
  const Dictionary dict = build_dictionary(GridSpec{}, 6, 6);
  for (auto _ : state) benchmark::DoNotOptimize(render_dictionary_matrix(dict, 2.0));
}
BENCHMARK(bm_render_dictionary_hr);

void bm_lasso_patch(benchmark::State &state) {
  const Dictionary dict = build_dictionary(GridSpec{}, 6, 6);
  const LassoSolver solver(render_dictionary_matrix(dict, 1.0));
  const Eigen::VectorXd p = random_patch(36, 11);
  const SolverSettings settings{1e-4, 1000, 1e-7};
  for (auto _ : state) benchmark::DoNotOptimize(solver.solve(p, settings));
}
BENCHMARK(bm_lasso_patch);

void bm_process_patch(benchmark::State &state) {
  const Dictionary dict = build_dictionary(GridSpec{}, 6, 6);
  SRConfig config;
  config.threads = 1;
  const SRPipeline pipe(dict, config);
  const ImagePlane lr = random_plane(6, 6, 13);
  PatchView patch{0, 0, 6, 6, lr.data};
  for (auto _ : state) benchmark::DoNotOptimize(pipe.process_patch(patch));
}
BENCHMARK(bm_process_patch);

void bm_super_resolve_plane(benchmark::State &state) {
  const Dictionary dict = build_dictionary(GridSpec{}, 6, 6);
  SRConfig config;
  config.threads = static_cast<int>(state.range(0));
  const SRPipeline pipe(dict, config);
  const ImagePlane lr = random_plane(48, 48, 17);
  for (auto _ : state) benchmark::DoNotOptimize(pipe.super_resolve_plane(lr));
}
BENCHMARK(bm_super_resolve_plane)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void bm_downsample(benchmark::State &state) {
  const ImagePlane plane = random_plane(480, 480, 19);
  for (auto _ : state) benchmark::DoNotOptimize(downsample(plane, 240, 240));
}
BENCHMARK(bm_downsample);

void bm_bicubic_upscale(benchmark::State &state) {
  const ImagePlane plane = random_plane(240, 240, 23);
  for (auto _ : state) benchmark::DoNotOptimize(resize_bicubic(plane, 480, 480));
}
BENCHMARK(bm_bicubic_upscale);

}  // namespace

BENCHMARK_MAIN();
