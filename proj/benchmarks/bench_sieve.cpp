#include <benchmark/benchmark.h>

#include "tsieve/generator.hpp"
#include "tsieve/solver.hpp"

namespace {

using namespace tsieve;

void BM_temporal_decide(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const int n = 500;
  GeneratorSpec spec;
  spec.family = GraphFamily::regular;
  spec.n = n;
  spec.d = 8;
  spec.t = 50;
  spec.colors = k;
  spec.seed = 42;
  GenResult base = gen_regular(spec);
  std::vector<Color> colors(k);
  for (int i = 0; i < k; ++i) colors[i] = i + 1;
  MotifQuery q = MotifQuery::from_multiset(colors);
  GenResult inst = plant_matches(base.graph, base.coloring, q, 3, 7);

  SolveRequest req;
  req.problem = Problem::colorful_path;
  req.query = q;
  req.preprocess = PreprocessLevel::none;
  for (auto _ : state) {
    SolveReport r = decide(inst.graph, inst.coloring, req);
    benchmark::DoNotOptimize(r.decision);
  }
}

void BM_junction_static(benchmark::State& state) {
  const int k = 5;
  GeneratorSpec spec;
  spec.family = GraphFamily::regular;
  spec.n = static_cast<int>(state.range(0));
  spec.d = 8;
  spec.t = 50;
  spec.colors = k;
  spec.seed = 9;
  GenResult inst = gen_regular(spec);
  std::vector<Color> colors(k);
  for (int i = 0; i < k; ++i) colors[i] = i + 1;
  MotifQuery q = MotifQuery::from_multiset(colors);
  SieveConfig cfg;
  ShadeAssignment shades = build_shades(q, inst.coloring, cfg);
  StaticProjection proj = StaticProjection::project(inst.graph);
  for (auto _ : state) {
    SieveOutcome out = eval_junction_sieve(proj, k, shades, cfg);
    benchmark::DoNotOptimize(out.global_nonzero);
  }
}

}  // namespace

BENCHMARK(BM_temporal_decide)->Arg(4)->Arg(6)->Arg(8);
BENCHMARK(BM_junction_static)->Arg(500)->Arg(2000);
BENCHMARK_MAIN();
