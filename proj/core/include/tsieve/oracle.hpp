// Non-algebraic baselines: exhaustive temporal DFS and random temporal
// walks. The exhaustive search is exact and doubles as the ground-truth
// oracle for equivalence testing; the random walk is Monte-Carlo incomplete.

#pragma once

#include <cstdint>
#include <optional>

#include "tsieve/solver.hpp"

namespace tsieve {

struct OracleBudget {
  std::int64_t max_nodes_expanded = std::int64_t{1} << 62;
  std::int64_t max_walk_iterations = 1'000'000;
  double wall_clock_s = 1e18;
};

struct OracleReport {
  bool decision = false;
  bool inconclusive = false;  // budget ran out before exhausting the space
  Timestamp optimum_ts = -1;
  std::optional<TemporalPath> witness;
  std::int64_t nodes_expanded = 0;
  std::int64_t iterations_used = 0;
};

// Depth-k temporal DFS from every start vertex; every depth-k leaf is checked
// against the query. Exact when it completes within budget. Color-filter
// preprocessing is applied up front. Tracks the minimum-max-timestamp witness.
OracleReport exhaustive_search(const TemporalGraph& g,
                               const VertexColoring& coloring,
                               const SolveRequest& req,
                               const OracleBudget& budget = {});

// Uniform random start, then a random temporal walk choosing uniformly among
// the time-valid extensions; accepted only if it is a path matching the
// query. NO means "not found within budget".
OracleReport random_walk_search(const TemporalGraph& g,
                                const VertexColoring& coloring,
                                const SolveRequest& req,
                                const OracleBudget& budget = {});

}  // namespace tsieve
