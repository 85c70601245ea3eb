// Synthetic instance generation: d-regular and power-law configuration-model
// temporal graphs with uniform timestamps and colors, plus planted-match
// instrumentation. Deterministic per (spec, seed) using fixed-width
// arithmetic only.

#pragma once

#include <cstdint>
#include <vector>

#include "tsieve/graph.hpp"
#include "tsieve/motif.hpp"

namespace tsieve {

enum class GraphFamily { regular, powerlaw };

struct GeneratorSpec {
  GraphFamily family = GraphFamily::regular;
  int n = 0;
  int d = 0;        // regular: exact degree
  int D = 0;        // powerlaw: average degree target (sum of degrees ~ D*n)
  int w = 0;        // powerlaw: support size (geometric spacing)
  double alpha = 0; // powerlaw: frequency exponent, < 0
  Timestamp t = 1;
  int colors = 1;   // colors drawn uniformly from [1..colors]
  std::uint64_t seed = 1;
  bool directed = false;
};

struct GenResult {
  TemporalGraph graph;
  VertexColoring coloring;
  std::vector<TemporalPath> planted;
  int dropped_pairs = 0;  // stub pairs discarded after bounded repair
};

GenResult gen_regular(const GeneratorSpec& spec);
GenResult gen_powerlaw(const GeneratorSpec& spec);

// Plants `count` vertex-disjoint matches of the query: recolors each chain to
// realize the query and adds (or retimes) edges along it with distinct
// uniform timestamps in ascending order. Witnesses are recorded for tests.
GenResult plant_matches(const TemporalGraph& g, const VertexColoring& coloring,
                        const MotifQuery& query, int count, std::uint64_t seed);

}  // namespace tsieve
