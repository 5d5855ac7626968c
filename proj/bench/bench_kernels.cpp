// Serial reference vs streaming vs OpenMP band-parallel kernels.

#include <benchmark/benchmark.h>

#include <random>

#include "secvis/filter.hpp"
#include "secvis/rc4.hpp"
#include "secvis/threshold.hpp"
#include "secvis/transport.hpp"

namespace {

secvis::ImagePlane random_plane(int side) {
  std::mt19937 rng(1234);
  std::uniform_int_distribution<int> dist(0, 255);
  std::vector<std::uint8_t> px(static_cast<std::size_t>(side) * side);
  for (auto& p : px) p = static_cast<std::uint8_t>(dist(rng));
  return secvis::ImagePlane(side, side, std::move(px));
}

void BM_ConvolveDirect(benchmark::State& state) {
  const auto plane = random_plane(static_cast<int>(state.range(0)));
  const auto kernel = secvis::box_kernel_5x5();
  for (auto _ : state) benchmark::DoNotOptimize(secvis::convolve_direct(plane, kernel));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(plane.size()));
}

void BM_ConvolveStreaming(benchmark::State& state) {
  const auto plane = random_plane(static_cast<int>(state.range(0)));
  const auto kernel = secvis::box_kernel_5x5();
  for (auto _ : state) benchmark::DoNotOptimize(secvis::convolve_streaming(plane, kernel));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(plane.size()));
}

void BM_ConvolveStreamingParallel(benchmark::State& state) {
  const auto plane = random_plane(static_cast<int>(state.range(0)));
  const auto kernel = secvis::box_kernel_5x5();
  for (auto _ : state) benchmark::DoNotOptimize(secvis::convolve_streaming_parallel(plane, kernel));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(plane.size()));
}

void BM_Histogram(benchmark::State& state) {
  const auto plane = random_plane(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(secvis::histogram(plane));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(plane.size()));
}

void BM_HistogramParallel(benchmark::State& state) {
  const auto plane = random_plane(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(secvis::histogram_parallel(plane));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(plane.size()));
}

void BM_EncodeFrame(benchmark::State& state) {
  const secvis::Image img = random_plane(static_cast<int>(state.range(0)));
  const auto key = secvis::Key::from_string("benchmark key");
  for (auto _ : state) benchmark::DoNotOptimize(secvis::encode_frame(img, key));
  state.SetBytesProcessed(state.iterations() * static_cast<long>(secvis::image_bytes(img).size()));
}

}  // namespace

BENCHMARK(BM_ConvolveDirect)->Arg(256)->Arg(1024);
BENCHMARK(BM_ConvolveStreaming)->Arg(256)->Arg(1024);
BENCHMARK(BM_ConvolveStreamingParallel)->Arg(256)->Arg(1024);
BENCHMARK(BM_Histogram)->Arg(256)->Arg(1024);
BENCHMARK(BM_HistogramParallel)->Arg(256)->Arg(1024);
BENCHMARK(BM_EncodeFrame)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
