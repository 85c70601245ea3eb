// The algebraic engines: shade assignment for the constrained multilinear
// sieve and lane-parallel evaluation of the walk-generating recurrences over
// GF(2^b).
//
// All engines share the same decision scheme: for each of the 2^k label
// subsets A (processed W lanes at a time), the recurrence is evaluated with
// vertex variables substituted by z_u^A, and the final per-vertex values are
// accumulated. A nonzero accumulator at u certifies (whp) a properly colored
// match ending at u; a zero accumulator is correct with probability at least
// 1 - (2k-1)/2^b per vertex, and exactly when no match exists at all.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tsieve/graph.hpp"
#include "tsieve/motif.hpp"

namespace tsieve {

struct SieveConfig {
  std::uint64_t seed = 1;
  int field_bits = 64;  // one of 8, 16, 32, 64
  int lane_width = 8;   // W: subsets evaluated per block; power of two
  int threads = 1;
  bool localize = true;  // per-vertex accumulators (decision reads their OR)
  EdgeModel edge_model = EdgeModel::instant;
  std::uint64_t memory_cap_words = std::uint64_t{1} << 31;
};

// Disjoint shade sets realizing the constrained sieve substitution
//   z_{u,j} = sum_{d in S} v_{u,d} * w_{d,j},
// where S unions the shade sets of u's colors that occur in the query.
// The v/w values themselves are not stored; they are position-addressed
// draws from the seed.
struct ShadeAssignment {
  int k = 0;
  std::uint64_t seed = 0;
  bool feasible = true;          // false: query names a color the graph lacks
  Color missing_color = 0;

  std::vector<Color> colors;                   // ascending query support
  std::vector<std::vector<int>> shade_sets;    // shades of colors[i], 1-based

  // CSR: shades enabled per vertex (empty for vertices off the support).
  std::vector<std::int32_t> vertex_off;
  std::vector<std::int32_t> vertex_shades;

  std::span<const std::int32_t> shades_of(Vertex u) const {
    return {vertex_shades.data() + vertex_off[u],
            vertex_shades.data() + vertex_off[u + 1]};
  }
};

// Allocates shades canonically: ascending shade ids to ascending colors,
// mu(s) shades per color s. Infeasible queries (a color with no matching
// vertex and no wildcard) yield feasible = false, a certain NO.
ShadeAssignment build_shades(const MotifQuery& query,
                             const VertexColoring& coloring,
                             const SieveConfig& config);

struct SieveOutcome {
  bool global_nonzero = false;
  std::vector<std::uint64_t> accumulators;  // per vertex, zero-extended
  std::vector<Vertex> flagged;              // ascending vertex ids
  double fn_bound = 0.0;                    // per-vertex (2k-1)/2^b
  std::uint64_t peak_field_words = 0;
  std::uint64_t checksum = 0;               // order-fixed fold of accumulators
};

// Anchors for the (s,d) variant: restrict the base case to `source` and read
// only the accumulator of `sink`. Negative values disable the anchor.
struct AnchorSpec {
  Vertex source = -1;
  Vertex sink = -1;
};

// Temporal-walk recurrence (per-timestamp adjacency, stay term, genf-2
// two-layer memory). Honors config.edge_model using the graph's transition
// times and vertex delays.
SieveOutcome eval_temporal_sieve(const TemporalGraph& g, int k, Timestamp max_ts,
                                 const ShadeAssignment& shades,
                                 const SieveConfig& config,
                                 const AnchorSpec& anchor = {});

// Alias surface for the delay edge models; requires a non-instant model.
SieveOutcome eval_delay_sieve(const TemporalGraph& g, int k, Timestamp max_ts,
                              const ShadeAssignment& shades,
                              const SieveConfig& config);

// Timestamp-free recurrence on a static projection: flags end vertices of
// properly colored static paths.
SieveOutcome eval_static_sieve(const StaticProjection& gs, int k,
                               const ShadeAssignment& shades,
                               const SieveConfig& config);

// Junction variant: flags every vertex lying on at least one properly
// colored static k-vertex path, by sieving the product of a walks-ending
// family and an independent walks-starting family joined at the vertex.
SieveOutcome eval_junction_sieve(const StaticProjection& gs, int k,
                                 const ShadeAssignment& shades,
                                 const SieveConfig& config);

// Edge-constrained recurrence: step l may only use edges at the prescribed
// timestamp times[l-1]; O(n)-per-lane working state.
SieveOutcome eval_edge_constrained_sieve(const TemporalGraph& g,
                                         const std::vector<Timestamp>& times,
                                         const ShadeAssignment& shades,
                                         const SieveConfig& config);

// Vertex-ordered recurrence: position l is restricted to vertices of color
// order[l-1]; plain multilinear sieve with per-position labels.
SieveOutcome eval_vertex_ordered_sieve(const TemporalGraph& g,
                                       const std::vector<Color>& order,
                                       const VertexColoring& coloring,
                                       Timestamp max_ts,
                                       const SieveConfig& config);

double false_negative_bound(int k, int field_bits);

}  // namespace tsieve
