// Serial reference vs parallel kernel timings. The reference
// implementations are the same ones the tests use as oracles.
#include <benchmark/benchmark.h>

#include <omp.h>

#include <random>

#include "dualfit/inpaint.hpp"
#include "dualfit/metrics.hpp"
#include "dualfit/morphology.hpp"
#include "dualfit/reference.hpp"
#include "dualfit/warp.hpp"

using namespace dualfit;

namespace {

std::mt19937 bench_rng(1234);

BinaryMask bench_mask(int w, int h) {
  BinaryMask mask(w, h);
  std::bernoulli_distribution dist(0.6);
  for (auto& b : mask.bits) b = dist(bench_rng) ? 1 : 0;
  return mask;
}

Image bench_image(int w, int h, int c) {
  Image img(w, h, c);
  std::uniform_real_distribution<float> dist(0.0f, 1.0f);
  for (float& v : img.data) v = dist(bench_rng);
  return img;
}

void erode_serial(benchmark::State& state) {
  const BinaryMask mask = bench_mask(768, 1024);
  const BandSpec spec{3, 5};
  for (auto _ : state) {
    BinaryMask out = ref::erode(mask, spec);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(erode_serial)->Unit(benchmark::kMillisecond);

void erode_parallel(benchmark::State& state) {
  const BinaryMask mask = bench_mask(768, 1024);
  const BandSpec spec{3, 5};
  for (auto _ : state) {
    BinaryMask out = erode(mask, spec);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(erode_parallel)->Unit(benchmark::kMillisecond);

void warp_serial(benchmark::State& state) {
  const Image img = bench_image(768, 1024, 3);
  const BinaryMask alpha(768, 1024, true);
  FlowField flow(768, 1024);
  std::uniform_real_distribution<float> dist(-6.0f, 6.0f);
  for (float& v : flow.vectors) v = dist(bench_rng);
  for (auto _ : state) {
    WarpedPart out = ref::apply_flow(img, alpha, flow, Label::TorsoGarment);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(warp_serial)->Unit(benchmark::kMillisecond);

void warp_parallel(benchmark::State& state) {
  const Image img = bench_image(768, 1024, 3);
  const BinaryMask alpha(768, 1024, true);
  FlowField flow(768, 1024);
  std::uniform_real_distribution<float> dist(-6.0f, 6.0f);
  for (float& v : flow.vectors) v = dist(bench_rng);
  for (auto _ : state) {
    WarpedPart out = apply_flow(img, alpha, flow, Label::TorsoGarment);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(warp_parallel)->Unit(benchmark::kMillisecond);

void upsample_serial(benchmark::State& state) {
  FlowField low(384, 512);
  std::uniform_real_distribution<float> dist(-6.0f, 6.0f);
  for (float& v : low.vectors) v = dist(bench_rng);
  for (auto _ : state) {
    FlowField out = ref::upsample_flow(low, 768, 1024);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(upsample_serial)->Unit(benchmark::kMillisecond);

void upsample_parallel(benchmark::State& state) {
  FlowField low(384, 512);
  std::uniform_real_distribution<float> dist(-6.0f, 6.0f);
  for (float& v : low.vectors) v = dist(bench_rng);
  for (auto _ : state) {
    FlowField out = upsample_flow(low, 768, 1024);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(upsample_parallel)->Unit(benchmark::kMillisecond);

void ssim_serial(benchmark::State& state) {
  const Image a = bench_image(192, 256, 3);
  const Image b = bench_image(192, 256, 3);
  for (auto _ : state) {
    double v = ref::ssim(a, b);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(ssim_serial)->Unit(benchmark::kMillisecond);

void ssim_parallel(benchmark::State& state) {
  const Image a = bench_image(192, 256, 3);
  const Image b = bench_image(192, 256, 3);
  for (auto _ : state) {
    double v = ssim(a, b);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(ssim_parallel)->Unit(benchmark::kMillisecond);

// Same solver; thread count is the only difference. The result is
// bit-identical either way.
void inpaint_threads(benchmark::State& state) {
  Image img(256, 256, 1);
  for (int y = 0; y < 256; ++y)
    for (int x = 0; x < 256; ++x) img.at(x, y, 0) = x / 255.0f;
  BinaryMask hole(256, 256);
  for (int y = 64; y < 192; ++y)
    for (int x = 64; x < 192; ++x) hole.set(x, y, true);

  const int threads = static_cast<int>(state.range(0));
  const int before = omp_get_max_threads();
  omp_set_num_threads(threads);
  for (auto _ : state) {
    auto out = harmonic_inpaint(img, hole, {1e-5, 10000});
    benchmark::DoNotOptimize(out);
  }
  omp_set_num_threads(before);
}
BENCHMARK(inpaint_threads)
    ->Apply([](benchmark::internal::Benchmark* b) {
      b->Arg(1);
      if (omp_get_max_threads() > 1) b->Arg(omp_get_max_threads());
    })
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
