#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "tsieve/generator.hpp"
#include "tsieve/solver.hpp"

using namespace tsieve;

TEST_CASE("regular generator produces exact degrees") {
  SUBCASE("n = 4, d = 2 forces m = 4") {
    GeneratorSpec spec;
    spec.n = 4;
    spec.d = 2;
    spec.t = 3;
    spec.seed = 1;
    GenResult r = gen_regular(spec);
    CHECK(r.dropped_pairs == 0);
    CHECK(r.graph.m() == 4);
  }
  SUBCASE("degree histogram is {d: n}") {
    GeneratorSpec spec;
    spec.n = 200;
    spec.d = 6;
    spec.t = 10;
    spec.colors = 4;
    spec.seed = 7;
    GenResult r = gen_regular(spec);
    REQUIRE(r.dropped_pairs == 0);
    std::vector<int> deg(spec.n, 0);
    for (const TemporalEdge& e : r.graph.edges()) {
      ++deg[e.u];
      ++deg[e.v];
    }
    for (int u = 0; u < spec.n; ++u) CHECK(deg[u] == spec.d);
  }
  SUBCASE("bench-scale row: n = 1000, d = 20 gives m = 10^4") {
    GeneratorSpec spec;
    spec.n = 1000;
    spec.d = 20;
    spec.t = 100;
    spec.colors = 5;
    spec.seed = 3;
    GenResult r = gen_regular(spec);
    CHECK(r.dropped_pairs == 0);
    CHECK(r.graph.m() == 10000);
    CHECK(r.graph.t() == 100);
  }
  SUBCASE("odd degree sum is rejected") {
    GeneratorSpec spec;
    spec.n = 3;
    spec.d = 1;
    spec.t = 1;
    CHECK_THROWS_AS(gen_regular(spec), std::invalid_argument);
  }
}

TEST_CASE("generation is deterministic per (spec, seed)") {
  GeneratorSpec spec;
  spec.n = 100;
  spec.d = 4;
  spec.t = 12;
  spec.colors = 3;
  spec.seed = 42;
  GenResult a = gen_regular(spec);
  GenResult b = gen_regular(spec);
  std::ostringstream ga, gb, ca, cb;
  save_graph(ga, a.graph);
  save_graph(gb, b.graph);
  save_colors(ca, a.coloring);
  save_colors(cb, b.coloring);
  CHECK(ga.str() == gb.str());
  CHECK(ca.str() == cb.str());

  spec.seed = 43;
  GenResult c = gen_regular(spec);
  std::ostringstream gc;
  save_graph(gc, c.graph);
  CHECK(ga.str() != gc.str());
}

TEST_CASE("timestamps and colors stay in their ranges") {
  GeneratorSpec spec;
  spec.n = 300;
  spec.d = 4;
  spec.t = 17;
  spec.colors = 6;
  spec.seed = 9;
  GenResult r = gen_regular(spec);
  for (const TemporalEdge& e : r.graph.edges()) {
    CHECK(e.ts >= 1);
    CHECK(e.ts <= 17);
  }
  for (Vertex u = 0; u < spec.n; ++u) {
    CHECK(r.coloring.primary(u) >= 1);
    CHECK(r.coloring.primary(u) <= 6);
  }
}

TEST_CASE("powerlaw generator hits the degree-sum target") {
  SUBCASE("alpha -0.5 lands within one of D*n") {
    GeneratorSpec spec;
    spec.family = GraphFamily::powerlaw;
    spec.n = 1000;
    spec.D = 20;
    spec.w = 100;
    spec.alpha = -0.5;
    spec.t = 50;
    spec.colors = 5;
    spec.seed = 11;
    GenResult r = gen_powerlaw(spec);
    std::int64_t sum = 2 * r.graph.m() + 2 * r.dropped_pairs;
    CHECK(std::llabs(sum - 20000) <= 1);
  }
  SUBCASE("w = 1 degenerates to a near-regular graph") {
    GeneratorSpec spec;
    spec.family = GraphFamily::powerlaw;
    spec.n = 200;
    spec.D = 6;
    spec.w = 1;
    spec.alpha = -1.0;
    spec.t = 10;
    spec.seed = 4;
    GenResult r = gen_powerlaw(spec);
    std::vector<int> deg(spec.n, 0);
    for (const TemporalEdge& e : r.graph.edges()) {
      ++deg[e.u];
      ++deg[e.v];
    }
    int lo = *std::min_element(deg.begin(), deg.end());
    int hi = *std::max_element(deg.begin(), deg.end());
    CHECK(lo >= spec.D - 2);
    CHECK(hi <= spec.D + 2);
  }
  SUBCASE("log-log frequency fit recovers alpha") {
    GeneratorSpec spec;
    spec.family = GraphFamily::powerlaw;
    spec.n = 100000;
    spec.D = 20;
    spec.w = 100;
    spec.alpha = -0.5;
    spec.t = 10;
    spec.seed = 13;
    GenResult r = gen_powerlaw(spec);
    std::vector<int> deg(spec.n, 0);
    for (const TemporalEdge& e : r.graph.edges()) {
      ++deg[e.u];
      ++deg[e.v];
    }
    std::map<int, int> freq;
    for (int u = 0; u < spec.n; ++u) ++freq[deg[u]];
    // Least-squares fit of log(freq) against log(degree).
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int pts = 0;
    for (auto [dv, f] : freq) {
      if (f < 5) continue;  // rounding noise in the sparse tail
      double x = std::log(static_cast<double>(dv));
      double y = std::log(static_cast<double>(f));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++pts;
    }
    REQUIRE(pts >= 10);
    double slope = (pts * sxy - sx * sy) / (pts * sxx - sx * sx);
    CHECK(slope == doctest::Approx(-0.5).epsilon(0.3));
    CHECK(std::abs(slope - (-0.5)) <= 0.15);
  }
}

TEST_CASE("plant_matches realizes the query on disjoint chains") {
  SUBCASE("planting into an empty graph builds exactly the chain") {
    TemporalGraph empty = TemporalGraph::build(3, {}, false, /*t=*/6);
    VertexColoring col = VertexColoring::uniform(3);
    MotifQuery q = MotifQuery::from_multiset({1, 2, 3});
    GenResult r = plant_matches(empty, col, q, 1, 5);
    CHECK(r.graph.m() == 2);
    REQUIRE(r.planted.size() == 1);
    CHECK(validate_path(r.graph, r.coloring, r.planted[0], q));
  }
  SUBCASE("planted instances always decide YES at the default width") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
      GeneratorSpec spec;
      spec.n = 60;
      spec.d = 4;
      spec.t = 12;
      spec.colors = 8;
      spec.seed = seed;
      GenResult base = gen_regular(spec);
      MotifQuery q = MotifQuery::from_multiset({1, 2, 3, 4});
      GenResult planted = plant_matches(base.graph, base.coloring, q, 3, seed);
      CHECK(planted.planted.size() == 3);
      for (const TemporalPath& w : planted.planted)
        CHECK(validate_path(planted.graph, planted.coloring, w, q));

      SolveRequest req;
      req.problem = Problem::path_motif;
      req.query = q;
      req.config.seed = seed * 17;
      CHECK(decide(planted.graph, planted.coloring, req).decision);
    }
  }
  SUBCASE("insufficient vertices are rejected") {
    TemporalGraph empty = TemporalGraph::build(5, {}, false);
    VertexColoring col = VertexColoring::uniform(5);
    MotifQuery q = MotifQuery::from_multiset({1, 1, 1});
    CHECK_THROWS_AS(plant_matches(empty, col, q, 2, 1), std::invalid_argument);
  }
}
