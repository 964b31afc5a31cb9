#include <benchmark/benchmark.h>

#include "ycalc/drivers.hpp"
#include "ycalc/field.hpp"
#include "ycalc/flow.hpp"
#include "ycalc/functions.hpp"
#include "ycalc/grid.hpp"
#include "ycalc/integral.hpp"
#include "ycalc/parabolic.hpp"
#include "ycalc/yde.hpp"

using namespace ycalc;

namespace {

Vec scalar(double v) { return Vec::Constant(1, v); }

}  // namespace

static void BM_FbmCirculant(benchmark::State& state) {
  const Grid g = make_uniform_grid(0.0, 1.0, static_cast<std::size_t>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_fbm(0.75, g, 1, seed++));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FbmCirculant)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity(benchmark::oNLogN);

static void BM_NonlinearIntegral(benchmark::State& state) {
  const Grid g = make_uniform_grid(0.0, 1.0, 256);
  const FieldPtr a = product_field(fn::sin(1), sample_weierstrass(0.8, 10, 1.0, g));
  const Path x = sample_weierstrass(0.8, 10, 1.0, g, 1.0);
  const unsigned levels = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(nonlinear_young_integral(*a, x, g, levels));
}
BENCHMARK(BM_NonlinearIntegral)->DenseRange(4, 12, 4)->Unit(benchmark::kMillisecond);

static void BM_EulerSolve(benchmark::State& state) {
  const Grid g = make_uniform_grid(0.0, 1.0, static_cast<std::size_t>(state.range(0)));
  const FieldPtr a = product_field(fn::sin(1), sample_fbm(0.8, g, 1, 7));
  for (auto _ : state) benchmark::DoNotOptimize(euler_solve(*a, scalar(0.5), g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EulerSolve)->RangeMultiplier(4)->Range(1 << 8, 1 << 14)->Complexity(benchmark::oN);

static void BM_PicardSolve(benchmark::State& state) {
  const Grid g = make_uniform_grid(0.0, 1.0, static_cast<std::size_t>(state.range(0)));
  const FieldPtr a = product_field(fn::sin(1), sample_fbm(0.8, g, 1, 7));
  for (auto _ : state) benchmark::DoNotOptimize(picard_solve(*a, scalar(0.5), g));
}
BENCHMARK(BM_PicardSolve)->RangeMultiplier(4)->Range(1 << 8, 1 << 12)->Unit(benchmark::kMillisecond);

static void BM_JacobianDet(benchmark::State& state) {
  const Grid g = make_uniform_grid(0.0, 1.0, 512);
  const FieldPtr a = product_field(fn::swirl(), sample_weierstrass(0.8, 10, 1.0, g));
  Vec x(2);
  x << 0.4, -0.3;
  for (auto _ : state) benchmark::DoNotOptimize(jacobian_det_check(*a, x, g));
}
BENCHMARK(BM_JacobianDet)->Unit(benchmark::kMillisecond);

static void BM_MildConvolution(benchmark::State& state) {
  const Grid g = make_uniform_grid(0.0, 1.0, 1024);
  const auto modes = static_cast<std::size_t>(state.range(0));
  const SpectralSystem s = SpectralSystem::dirichlet(modes);
  const Path y = sample_fbm(0.75, g, modes, 3);
  for (auto _ : state) benchmark::DoNotOptimize(mild_convolution(s, y, 0.3));
}
BENCHMARK(BM_MildConvolution)->RangeMultiplier(4)->Range(4, 256)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
