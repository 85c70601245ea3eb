#include <benchmark/benchmark.h>

#include "tsieve/gf.hpp"

namespace {

template <typename Word>
void BM_mul(benchmark::State& state) {
  Word a = tsieve::gf::draw_nonzero<Word>(1, tsieve::gf::Role::stream, 0, 0, 0);
  Word b = tsieve::gf::draw_nonzero<Word>(1, tsieve::gf::Role::stream, 1, 0, 0);
  for (auto _ : state) {
    a = tsieve::gf::mul(a, b);
    benchmark::DoNotOptimize(a);
  }
}

void BM_draw_nonzero(benchmark::State& state) {
  std::uint64_t i = 0;
  for (auto _ : state) {
    auto v = tsieve::gf::draw_nonzero<std::uint64_t>(
        1, tsieve::gf::Role::edge_y, i++, 3, 0);
    benchmark::DoNotOptimize(v);
  }
}

}  // namespace

BENCHMARK(BM_mul<std::uint8_t>);
BENCHMARK(BM_mul<std::uint16_t>);
BENCHMARK(BM_mul<std::uint32_t>);
BENCHMARK(BM_mul<std::uint64_t>);
BENCHMARK(BM_draw_nonzero);
BENCHMARK_MAIN();
