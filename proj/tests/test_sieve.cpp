#include <doctest.h>

#include <set>
#include <stdexcept>

#include "fixtures.hpp"
#include "tsieve/generator.hpp"
#include "tsieve/oracle.hpp"
#include "tsieve/sieve.hpp"
#include "tsieve/solver.hpp"

using namespace tsieve;
using namespace tsieve::testing;

namespace {

SieveConfig config64(std::uint64_t seed = 1) {
  SieveConfig cfg;
  cfg.seed = seed;
  return cfg;
}

std::set<Vertex> flagged_set(const SieveOutcome& out) {
  return {out.flagged.begin(), out.flagged.end()};
}

SieveOutcome run_temporal(const TemporalGraph& g, const VertexColoring& col,
                          const std::vector<Color>& motif, Timestamp max_ts,
                          const SieveConfig& cfg) {
  MotifQuery q = MotifQuery::from_multiset(motif);
  ShadeAssignment sh = build_shades(q, col, cfg);
  REQUIRE(sh.feasible);
  return eval_temporal_sieve(g, q.k, max_ts, sh, cfg);
}

}  // namespace

TEST_CASE("shade allocation is canonical and disjoint") {
  VertexColoring col({1, 1, 2}, 2);
  SieveConfig cfg = config64();
  SUBCASE("multiplicity split {1,1,2}") {
    MotifQuery q = MotifQuery::from_multiset({1, 1, 2});
    ShadeAssignment sh = build_shades(q, col, cfg);
    REQUIRE(sh.feasible);
    REQUIRE(sh.colors == std::vector<Color>{1, 2});
    CHECK(sh.shade_sets[0] == std::vector<int>{1, 2});
    CHECK(sh.shade_sets[1] == std::vector<int>{3});
    CHECK(std::vector<std::int32_t>(sh.shades_of(0).begin(),
                                    sh.shades_of(0).end()) ==
          std::vector<std::int32_t>{1, 2});
    CHECK(std::vector<std::int32_t>(sh.shades_of(2).begin(),
                                    sh.shades_of(2).end()) ==
          std::vector<std::int32_t>{3});
  }
  SUBCASE("all-distinct query gives singleton shade sets") {
    MotifQuery q = MotifQuery::from_multiset({1, 2});
    ShadeAssignment sh = build_shades(q, col, cfg);
    for (auto& s : sh.shade_sets) CHECK(s.size() == 1);
  }
  SUBCASE("single-color query gives one set of size k") {
    VertexColoring ones = VertexColoring::uniform(4);
    MotifQuery q = MotifQuery::from_multiset({1, 1, 1, 1});
    ShadeAssignment sh = build_shades(q, ones, cfg);
    REQUIRE(sh.shade_sets.size() == 1);
    CHECK(sh.shade_sets[0].size() == 4);
  }
  SUBCASE("missing color signals certain NO") {
    MotifQuery q = MotifQuery::from_multiset({1, 7});
    ShadeAssignment sh = build_shades(q, col, cfg);
    CHECK_FALSE(sh.feasible);
    CHECK(sh.missing_color == 7);
  }
}

TEST_CASE("temporal sieve decides the worked example") {
  auto [g, col] = worked_example();
  SieveOutcome out =
      run_temporal(g, col, {kRed, kRed, kGreen, kBlue}, g.t(), config64());
  CHECK(out.global_nonzero);
  // The only match u4-u5-u1-u2 ends at u2.
  CHECK(flagged_set(out) == std::set<Vertex>{U2});
}

TEST_CASE("temporal sieve on a single edge flags both endpoints") {
  TemporalGraph g = TemporalGraph::build(2, {{0, 1, 1}}, false);
  VertexColoring col({1, 2}, 2);
  SieveOutcome out = run_temporal(g, col, {1, 2}, 1, config64());
  CHECK(out.global_nonzero);
  CHECK(flagged_set(out) == std::set<Vertex>{0, 1});
}

TEST_CASE("decreasing timestamps admit no temporal path") {
  // Directed chain v0 -> v1 -> v2 whose arc timestamps decrease.
  TemporalGraph g = TemporalGraph::build(3, {{0, 1, 2}, {1, 2, 1}}, true);
  VertexColoring col({1, 2, 3}, 3);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SieveOutcome out = run_temporal(g, col, {1, 2, 3}, g.t(), config64(seed));
    CHECK_FALSE(out.global_nonzero);  // soundness holds for every seed
  }
  // The undirected reading admits the reversed traversal v2, v1, v0.
  TemporalGraph ug = TemporalGraph::build(3, {{0, 1, 2}, {1, 2, 1}}, false);
  SieveOutcome out = run_temporal(ug, col, {1, 2, 3}, ug.t(), config64());
  CHECK(out.global_nonzero);
}

TEST_CASE("two-pair demo graph flags both path ends at horizon 2") {
  auto [g, col] = chain_demo();
  SieveOutcome out = run_temporal(g, col, {1, 2, 3}, 2, config64());
  CHECK(out.global_nonzero);
  CHECK(flagged_set(out) == std::set<Vertex>{0, 2});
  // At horizon 1 no two edges can increase strictly.
  SieveOutcome early = run_temporal(g, col, {1, 2, 3}, 1, config64());
  CHECK_FALSE(early.global_nonzero);
}

TEST_CASE("static sieve flags end vertices") {
  TemporalGraph g = TemporalGraph::build(3, {{0, 1, 1}, {1, 2, 1}}, false);
  VertexColoring col({1, 2, 3}, 3);
  SieveConfig cfg = config64();
  MotifQuery q = MotifQuery::from_multiset({1, 2, 3});
  ShadeAssignment sh = build_shades(q, col, cfg);
  StaticProjection proj = StaticProjection::project(g);
  SieveOutcome out = eval_static_sieve(proj, 3, sh, cfg);
  CHECK(flagged_set(out) == std::set<Vertex>{0, 2});

  SUBCASE("k = 1 base case flags the matching vertex") {
    MotifQuery q1 = MotifQuery::from_multiset({2});
    ShadeAssignment sh1 = build_shades(q1, col, cfg);
    SieveOutcome o1 = eval_static_sieve(proj, 1, sh1, cfg);
    CHECK(flagged_set(o1) == std::set<Vertex>{1});
  }
  SUBCASE("triangle with colors {1,1,2}, k = 2") {
    TemporalGraph tri =
        TemporalGraph::build(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}, false);
    VertexColoring tcol({1, 1, 2}, 2);
    MotifQuery tq = MotifQuery::from_multiset({1, 2});
    ShadeAssignment tsh = build_shades(tq, tcol, cfg);
    SieveOutcome to =
        eval_static_sieve(StaticProjection::project(tri), 2, tsh, cfg);
    // By enumeration the bichromatic edges are (0,2) and (1,2), so every
    // vertex ends a properly colored 2-path.
    CHECK(flagged_set(to) == std::set<Vertex>{0, 1, 2});
  }
}

TEST_CASE("junction sieve flags interior vertices too") {
  SieveConfig cfg = config64();
  SUBCASE("chain of three") {
    TemporalGraph g = TemporalGraph::build(3, {{0, 1, 1}, {1, 2, 1}}, false);
    VertexColoring col({1, 2, 3}, 3);
    MotifQuery q = MotifQuery::from_multiset({1, 2, 3});
    ShadeAssignment sh = build_shades(q, col, cfg);
    SieveOutcome out =
        eval_junction_sieve(StaticProjection::project(g), 3, sh, cfg);
    CHECK(flagged_set(out) == std::set<Vertex>{0, 1, 2});
  }
  SUBCASE("star with a center and three leaves") {
    TemporalGraph g =
        TemporalGraph::build(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}}, false);
    VertexColoring col({1, 2, 3, 4}, 4);
    MotifQuery q = MotifQuery::from_multiset({1, 2, 3});
    ShadeAssignment sh = build_shades(q, col, cfg);
    SieveOutcome out =
        eval_junction_sieve(StaticProjection::project(g), 3, sh, cfg);
    // The only properly colored 3-path is 1-0-2; leaf 3 has color 4.
    CHECK(flagged_set(out) == std::set<Vertex>{0, 1, 2});
  }
  SUBCASE("no properly colored path flags nothing for any seed") {
    TemporalGraph two = TemporalGraph::build(3, {{0, 1, 1}}, false);
    VertexColoring ones = VertexColoring::uniform(3);
    MotifQuery q = MotifQuery::from_multiset({1, 1, 1});
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      SieveConfig c = config64(seed);
      ShadeAssignment sh = build_shades(q, ones, c);
      SieveOutcome out =
          eval_junction_sieve(StaticProjection::project(two), 3, sh, c);
      CHECK(flagged_set(out).empty());
    }
  }
}

TEST_CASE("edge-constrained sieve follows the prescribed timestamps") {
  auto [g, col] = worked_example();
  SieveConfig cfg = config64();
  MotifQuery q = MotifQuery::from_times({1, 2, 3}, {kRed, kRed, kGreen, kBlue});
  ShadeAssignment sh = build_shades(q, col, cfg);
  SieveOutcome out = eval_edge_constrained_sieve(g, {1, 2, 3}, sh, cfg);
  CHECK(out.global_nonzero);
  CHECK(flagged_set(out) == std::set<Vertex>{U2});

  SUBCASE("same query at times (3,4,5) has no properly colored path") {
    SieveOutcome miss = eval_edge_constrained_sieve(g, {3, 4, 5}, sh, cfg);
    CHECK_FALSE(miss.global_nonzero);
  }
  SUBCASE("non-increasing tuple is rejected") {
    CHECK_THROWS_AS(eval_edge_constrained_sieve(g, {1, 1, 2}, sh, cfg),
                    std::invalid_argument);
  }
  SUBCASE("timestamp with no edges is a certain NO fast path") {
    TemporalGraph sparse =
        TemporalGraph::build(3, {{0, 1, 1}, {1, 2, 3}}, false);
    VertexColoring c3 = VertexColoring::uniform(3);
    MotifQuery q2 = MotifQuery::from_times({1, 2}, {1, 1, 1});
    ShadeAssignment sh2 = build_shades(q2, c3, cfg);
    SieveOutcome miss = eval_edge_constrained_sieve(sparse, {1, 2}, sh2, cfg);
    CHECK_FALSE(miss.global_nonzero);
  }
}

TEST_CASE("vertex-ordered sieve respects the order") {
  auto [g, col] = worked_example();
  SieveConfig cfg = config64();
  SUBCASE("order red,green,red,blue matches u4-u5-u1-u2") {
    SieveOutcome out = eval_vertex_ordered_sieve(
        g, {kRed, kGreen, kRed, kBlue}, col, g.t(), cfg);
    CHECK(out.global_nonzero);
    CHECK(flagged_set(out) == std::set<Vertex>{U2});
  }
  SUBCASE("order blue,red,green,red has no match") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      SieveOutcome out = eval_vertex_ordered_sieve(
          g, {kBlue, kRed, kGreen, kRed}, col, g.t(), config64(seed));
      CHECK_FALSE(out.global_nonzero);
    }
  }
  SUBCASE("length-2 order on a single matching edge") {
    TemporalGraph two = TemporalGraph::build(2, {{0, 1, 1}}, false);
    VertexColoring c({1, 2}, 2);
    SieveOutcome out = eval_vertex_ordered_sieve(two, {1, 2}, c, 1, cfg);
    CHECK(out.global_nonzero);
    CHECK(flagged_set(out) == std::set<Vertex>{1});
  }
}

TEST_CASE("delay sieve arithmetic on the two-hop chain") {
  SieveConfig cfg = config64();
  cfg.edge_model = EdgeModel::delay_only;
  VertexColoring col({1, 2, 3}, 3);
  MotifQuery q = MotifQuery::from_multiset({1, 2, 3});

  TemporalGraph g = TemporalGraph::build(3, {{0, 1, 1}, {1, 2, 2}}, false);
  SUBCASE("delay 5 at the middle vertex blocks the path") {
    g.set_delays({0, 5, 0});
    ShadeAssignment sh = build_shades(q, col, cfg);
    SieveOutcome out = eval_delay_sieve(g, 3, g.t(), sh, cfg);
    CHECK_FALSE(out.global_nonzero);
  }
  SUBCASE("delay 0 at the middle vertex admits it") {
    g.set_delays({0, 0, 0});
    ShadeAssignment sh = build_shades(q, col, cfg);
    SieveOutcome out = eval_delay_sieve(g, 3, g.t(), sh, cfg);
    CHECK(out.global_nonzero);
  }
  SUBCASE("eval_delay_sieve refuses the instant model") {
    SieveConfig bad = config64();
    ShadeAssignment sh = build_shades(q, col, bad);
    CHECK_THROWS_AS(eval_delay_sieve(g, 3, g.t(), sh, bad),
                    std::invalid_argument);
  }
}

TEST_CASE("combined model with unit transitions and delays equals the plain sieve") {
  // Cross-check both engines on random small instances.
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    GeneratorSpec spec;
    spec.family = GraphFamily::regular;
    spec.n = 8;
    spec.d = 3;
    spec.t = 6;
    spec.colors = 3;
    spec.seed = seed;
    GenResult inst = gen_regular(spec);
    inst.graph.set_delays(std::vector<std::int32_t>(inst.graph.n(), 1));

    MotifQuery q = MotifQuery::from_multiset({1, 2, 3});
    SieveConfig plain = config64(seed * 31);
    ShadeAssignment sh = build_shades(q, inst.coloring, plain);
    if (!sh.feasible) continue;
    SieveOutcome a =
        eval_temporal_sieve(inst.graph, 3, inst.graph.t(), sh, plain);

    SieveConfig combined = plain;
    combined.edge_model = EdgeModel::transition_delay;
    SieveOutcome b =
        eval_temporal_sieve(inst.graph, 3, inst.graph.t(), sh, combined);
    REQUIRE(a.global_nonzero == b.global_nonzero);
    REQUIRE(a.accumulators == b.accumulators);
  }
}

TEST_CASE("outcomes are bit-identical across lane widths and thread counts") {
  auto [g, col] = worked_example();
  MotifQuery q = MotifQuery::from_multiset({kRed, kRed, kGreen, kBlue});
  std::vector<SieveOutcome> outs;
  for (int lanes : {1, 2, 8, 16}) {
    for (int threads : {1, 2, 4}) {
      SieveConfig cfg = config64(5);
      cfg.lane_width = lanes;
      cfg.threads = threads;
      ShadeAssignment sh = build_shades(q, col, cfg);
      outs.push_back(eval_temporal_sieve(g, 4, g.t(), sh, cfg));
    }
  }
  for (std::size_t i = 1; i < outs.size(); ++i) {
    CHECK(outs[i].accumulators == outs[0].accumulators);
    CHECK(outs[i].checksum == outs[0].checksum);
  }
}

TEST_CASE("sieve agrees with exhaustive search on random instances") {
  int yes_seen = 0, no_seen = 0;
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    GeneratorSpec spec;
    spec.family = GraphFamily::regular;
    spec.n = 10;
    spec.d = 3;
    spec.t = 6;
    spec.colors = 3;
    spec.seed = seed;
    GenResult inst = gen_regular(spec);
    std::vector<Color> motif{1, 2, 3, (seed % 2) ? Color{1} : Color{2}};

    SolveRequest req;
    req.problem = Problem::path_motif;
    req.query = MotifQuery::from_multiset(motif);
    req.config = config64(seed * 7 + 1);
    OracleReport truth = exhaustive_search(inst.graph, inst.coloring, req);
    REQUIRE_FALSE(truth.inconclusive);

    ShadeAssignment sh = build_shades(req.query, inst.coloring, req.config);
    if (!sh.feasible) {
      CHECK_FALSE(truth.decision);
      continue;
    }
    SieveOutcome out =
        eval_temporal_sieve(inst.graph, 4, inst.graph.t(), sh, req.config);
    CHECK(out.global_nonzero == truth.decision);
    (truth.decision ? yes_seen : no_seen)++;
  }
  // The instance mix must exercise both answers.
  CHECK(yes_seen > 10);
  CHECK(no_seen > 10);
}

TEST_CASE("working memory stays within the two-layer budget") {
  GeneratorSpec spec;
  spec.family = GraphFamily::regular;
  spec.n = 60;
  spec.d = 4;
  spec.t = 12;
  spec.colors = 3;
  spec.seed = 5;
  GenResult inst = gen_regular(spec);
  MotifQuery q = MotifQuery::from_multiset({1, 2, 3});
  for (int lanes : {1, 8}) {
    SieveConfig cfg = config64();
    cfg.lane_width = lanes;
    ShadeAssignment sh = build_shades(q, inst.coloring, cfg);
    SieveOutcome out =
        eval_temporal_sieve(inst.graph, 3, inst.graph.t(), sh, cfg);
    CHECK(out.peak_field_words <=
          4ull * spec.n * spec.t * static_cast<unsigned>(lanes));
  }
  SUBCASE("memory cap aborts oversized runs") {
    SieveConfig cfg = config64();
    cfg.memory_cap_words = 100;
    ShadeAssignment sh = build_shades(q, inst.coloring, cfg);
    CHECK_THROWS_AS(
        eval_temporal_sieve(inst.graph, 3, inst.graph.t(), sh, cfg),
        std::runtime_error);
  }
}

TEST_CASE("false-negative bound formula") {
  CHECK(false_negative_bound(4, 8) == doctest::Approx(7.0 / 256.0));
  CHECK(false_negative_bound(5, 64) ==
        doctest::Approx(9.0 / 18446744073709551616.0));
}
