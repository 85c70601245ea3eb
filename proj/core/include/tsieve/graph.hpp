// Temporal-graph data model: construction, file ingestion with vertex and
// timestamp normalization, vertex coloring, static projection, induced
// restriction, and witness validation.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsieve/motif.hpp"

namespace tsieve {

// A temporal edge (u, v, ts). eps is the transition time used by the delay
// edge models; the instant model ignores it.
struct TemporalEdge {
  Vertex u = 0;
  Vertex v = 0;
  Timestamp ts = 0;
  std::int32_t eps = 1;
};

// One walk extension step: the walk ending at `tail` extends along `edge`
// to end at the run's head vertex.
struct Arc {
  Vertex tail = 0;
  EdgeId edge = 0;
};

// All arcs with a common head vertex at one timestamp.
struct ArcRun {
  Vertex head = 0;
  std::int32_t begin = 0;
  std::int32_t end = 0;
};

// Arc incident to a vertex, for DFS-style traversal.
struct Incidence {
  Vertex other = 0;
  Timestamp ts = 0;
  EdgeId edge = 0;
};

class TemporalGraph {
 public:
  TemporalGraph() = default;

  // Canonical constructor: edges are deduplicated ((u,v,ts); unordered pair
  // for undirected graphs), self-loops dropped, then sorted by (ts, u, v).
  // Timestamps must already lie in [1..t]; pass t = 0 to take the max.
  static TemporalGraph build(int n, std::vector<TemporalEdge> edges,
                             bool directed, Timestamp t = 0);

  int n() const { return n_; }
  Timestamp t() const { return t_; }
  std::int64_t m() const { return static_cast<std::int64_t>(edges_.size()); }
  bool directed() const { return directed_; }

  const std::vector<TemporalEdge>& edges() const { return edges_; }
  const TemporalEdge& edge(EdgeId e) const { return edges_[e]; }

  // Engine traversal: head-grouped arc runs at one timestamp.
  std::span<const ArcRun> runs_at(Timestamp i) const;
  const Arc& arc(std::int32_t idx) const { return arcs_[idx]; }

  // Walks-ending-at traversal: arcs whose head is u (for directed graphs,
  // edges pointing into u), sorted by (ts, other).
  std::span<const Incidence> in_arcs(Vertex u) const;
  // Walks-starting-at traversal: arcs leaving u.
  std::span<const Incidence> out_arcs(Vertex u) const;

  // Per-vertex minimum stay before departing (delay edge models). Empty
  // means no delays were supplied.
  const std::vector<std::int32_t>& delays() const { return delays_; }
  void set_delays(std::vector<std::int32_t> d);
  std::int32_t delay(Vertex u) const {
    return delays_.empty() ? 0 : delays_[u];
  }
  bool has_transition_times() const { return has_eps_; }

  std::int64_t dropped_self_loops() const { return dropped_self_loops_; }
  std::int64_t dropped_duplicates() const { return dropped_duplicates_; }

 private:
  int n_ = 0;
  Timestamp t_ = 0;
  bool directed_ = false;
  bool has_eps_ = false;
  std::int64_t dropped_self_loops_ = 0;
  std::int64_t dropped_duplicates_ = 0;

  std::vector<TemporalEdge> edges_;

  // Arcs sorted by (ts, head, tail); runs grouped per timestamp.
  std::vector<Arc> arcs_;
  std::vector<ArcRun> runs_;
  std::vector<std::int32_t> runs_off_;  // size t+2, indexed by timestamp

  // CSR incidence, sorted by (ts, other) within a vertex.
  std::vector<Incidence> in_inc_;
  std::vector<std::int32_t> in_off_;
  std::vector<Incidence> out_inc_;
  std::vector<std::int32_t> out_off_;

  std::vector<std::int32_t> delays_;
};

// Vertex colors in [1..q]. With the wildcard extension active every vertex
// additionally carries the reserved color q+1.
class VertexColoring {
 public:
  VertexColoring() = default;
  VertexColoring(std::vector<Color> primary, Color q);

  int n() const { return static_cast<int>(primary_.size()); }
  Color q() const { return q_; }
  Color primary(Vertex u) const { return primary_[u]; }
  const std::vector<Color>& primaries() const { return primary_; }

  bool wildcard_active() const { return wildcard_; }
  Color wildcard_color() const { return q_ + 1; }
  VertexColoring with_wildcard() const;

  // The one- or two-element color set of u.
  bool has_color(Vertex u, Color c) const {
    return primary_[u] == c || (wildcard_ && c == wildcard_color());
  }

  static VertexColoring uniform(int n, Color c = 1);

 private:
  std::vector<Color> primary_;
  Color q_ = 1;
  bool wildcard_ = false;
};

// Timestamp-free projection of a temporal graph: deduplicated edges plus a
// back-map from each static edge to the temporal edges it summarizes.
class StaticProjection {
 public:
  static StaticProjection project(const TemporalGraph& g);

  int n() const { return n_; }
  bool directed() const { return directed_; }
  std::int64_t m() const { return static_cast<std::int64_t>(edges_.size()); }
  const std::vector<std::pair<Vertex, Vertex>>& edges() const {
    return edges_;
  }
  std::span<const EdgeId> temporal_edges_of(std::int32_t static_edge) const;

  std::span<const ArcRun> in_runs() const { return in_runs_; }
  std::span<const ArcRun> out_runs() const { return out_runs_; }
  const Arc& in_arc(std::int32_t idx) const { return in_arcs_[idx]; }
  const Arc& out_arc(std::int32_t idx) const { return out_arcs_[idx]; }

 private:
  int n_ = 0;
  bool directed_ = false;
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::vector<EdgeId> back_;
  std::vector<std::int32_t> back_off_;
  // Arc in a static projection: edge field indexes edges_.
  std::vector<Arc> in_arcs_, out_arcs_;
  std::vector<ArcRun> in_runs_, out_runs_;
};

struct TemporalPath {
  std::vector<Vertex> vertices;
  std::vector<TemporalEdge> edges;  // edge i connects vertices[i], vertices[i+1]

  int k() const { return static_cast<int>(vertices.size()); }
  Timestamp max_ts() const;
};

enum class EdgeModel { instant, transition_only, delay_only, transition_delay };

enum class PathVerdictCode {
  ok,
  empty,
  length_mismatch,
  vertex_out_of_range,
  repeated_vertex,
  edge_missing,
  time_violation,
  color_mismatch,
  order_mismatch,
  times_mismatch,
  endpoint_mismatch,
};

struct PathVerdict {
  PathVerdictCode code = PathVerdictCode::ok;
  std::string detail;
  explicit operator bool() const { return code == PathVerdictCode::ok; }
};

// Minimum feasible timestamp gap between consecutive edges meeting at the
// shared vertex `via`, under the given edge model. The instant model yields 1
// (strictly increasing timestamps).
std::int32_t min_time_gap(const TemporalGraph& g, const TemporalEdge& prev,
                          Vertex via, EdgeModel model);

// Checks p against the TemporalPath invariants and the query. source/dest,
// when nonnegative, pin the endpoints ((s,d) variants).
PathVerdict validate_path(const TemporalGraph& g, const VertexColoring& coloring,
                          const TemporalPath& p, const MotifQuery& query,
                          EdgeModel model = EdgeModel::instant,
                          Vertex source = -1, Vertex dest = -1);

// --- File ingestion ---------------------------------------------------------

struct LoadStats {
  std::int64_t raw_records = 0;
  std::int64_t self_loops_dropped = 0;
  std::int64_t duplicates_dropped = 0;
};

struct LoadResult {
  TemporalGraph graph;
  VertexColoring coloring;
  LoadStats stats;
  std::vector<std::string> vertex_names;  // dense id -> original token
};

// Edge stream: one "u v ts" record per line, optional fourth column is the
// transition time; '#' starts a comment. Vertex tokens may be arbitrary
// strings; they are mapped to dense ids in first-appearance order. Raw
// timestamps are replaced by their dense rank 1..t (ties collapse).
// Color stream: "u c" records; vertices absent from it get color 1.
LoadResult load_graph(std::istream& edge_stream, std::istream* color_stream,
                      bool directed);

// Vertex delay stream: "u d" records, same vertex tokens as the edge file.
std::vector<std::int32_t> load_delays(std::istream& delay_stream,
                                      const LoadResult& loaded);

void save_graph(std::ostream& os, const TemporalGraph& g);
void save_colors(std::ostream& os, const VertexColoring& coloring);

// Induced temporal subgraph: kept vertices and edges with ts <= max_ts.
// Vertex ids are preserved, not recompacted.
TemporalGraph restrict_to(const TemporalGraph& g,
                          const std::vector<bool>& keep_vertex,
                          Timestamp max_ts);

}  // namespace tsieve
