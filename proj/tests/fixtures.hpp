// Shared test instances.

#pragma once

#include "tsieve/graph.hpp"

namespace tsieve::testing {

// Color codes used by the worked-example instance.
inline constexpr Color kRed = 1, kGreen = 2, kBlue = 3, kYellow = 4;

// Dense ids of the worked-example vertices (u1..u5).
inline constexpr Vertex U1 = 0, U2 = 1, U3 = 2, U4 = 3, U5 = 4;

// The 5-vertex, 7-edge undirected instance: u1 red, u2 blue, u3 yellow,
// u4 red, u5 green; a red-red-green-blue path u4 -1- u5 -2- u1 -3- u2.
inline std::pair<TemporalGraph, VertexColoring> worked_example() {
  std::vector<TemporalEdge> edges{
      {U1, U2, 3}, {U2, U3, 1}, {U3, U4, 3}, {U4, U5, 1},
      {U5, U1, 2}, {U2, U5, 4}, {U3, U5, 5},
  };
  TemporalGraph g = TemporalGraph::build(5, std::move(edges), false);
  VertexColoring coloring({kRed, kBlue, kYellow, kRed, kGreen}, 4);
  return {std::move(g), std::move(coloring)};
}

// The two-pair demo graph: edges (v1,v2) and (v2,v3), each at ts 1 and 2.
inline std::pair<TemporalGraph, VertexColoring> chain_demo() {
  std::vector<TemporalEdge> edges{
      {0, 1, 1}, {0, 1, 2}, {1, 2, 1}, {1, 2, 2},
  };
  TemporalGraph g = TemporalGraph::build(3, std::move(edges), false);
  VertexColoring coloring({1, 2, 3}, 3);
  return {std::move(g), std::move(coloring)};
}

}  // namespace tsieve::testing
