#include "tsieve/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace tsieve {

TemporalGraph TemporalGraph::build(int n, std::vector<TemporalEdge> edges,
                                   bool directed, Timestamp t) {
  TemporalGraph g;
  g.n_ = n;
  g.directed_ = directed;

  std::vector<TemporalEdge> kept;
  kept.reserve(edges.size());
  for (TemporalEdge e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (e.ts < 1) throw std::invalid_argument("timestamp below 1");
    if (e.u == e.v) {
      ++g.dropped_self_loops_;
      continue;
    }
    if (!directed && e.u > e.v) std::swap(e.u, e.v);
    kept.push_back(e);
    if (e.eps != 1) g.has_eps_ = true;
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    return std::tie(a.ts, a.u, a.v) < std::tie(b.ts, b.u, b.v);
  });
  auto last = std::unique(kept.begin(), kept.end(),
                          [](const auto& a, const auto& b) {
                            return a.ts == b.ts && a.u == b.u && a.v == b.v;
                          });
  g.dropped_duplicates_ = kept.end() - last;
  kept.erase(last, kept.end());
  g.edges_ = std::move(kept);

  Timestamp max_ts = 0;
  for (const TemporalEdge& e : g.edges_) max_ts = std::max(max_ts, e.ts);
  g.t_ = t > 0 ? t : std::max<Timestamp>(max_ts, 1);
  if (max_ts > g.t_) throw std::invalid_argument("timestamp exceeds t");

  // Head-grouped arc runs per timestamp.
  struct RawArc {
    Timestamp ts;
    Vertex head, tail;
    EdgeId edge;
  };
  std::vector<RawArc> raw;
  raw.reserve(g.edges_.size() * (directed ? 1 : 2));
  for (EdgeId i = 0; i < static_cast<EdgeId>(g.edges_.size()); ++i) {
    const TemporalEdge& e = g.edges_[i];
    raw.push_back({e.ts, e.v, e.u, i});
    if (!directed) raw.push_back({e.ts, e.u, e.v, i});
  }
  std::sort(raw.begin(), raw.end(), [](const RawArc& a, const RawArc& b) {
    return std::tie(a.ts, a.head, a.tail) < std::tie(b.ts, b.head, b.tail);
  });
  g.arcs_.reserve(raw.size());
  g.runs_off_.assign(static_cast<size_t>(g.t_) + 2, 0);
  for (size_t i = 0; i < raw.size();) {
    size_t j = i;
    while (j < raw.size() && raw[j].ts == raw[i].ts && raw[j].head == raw[i].head)
      ++j;
    g.runs_.push_back({raw[i].head, static_cast<std::int32_t>(i),
                       static_cast<std::int32_t>(j)});
    g.runs_off_[raw[i].ts + 1] = static_cast<std::int32_t>(g.runs_.size());
    i = j;
  }
  for (size_t i = 1; i < g.runs_off_.size(); ++i)
    g.runs_off_[i] = std::max(g.runs_off_[i], g.runs_off_[i - 1]);
  for (const RawArc& a : raw) g.arcs_.push_back({a.tail, a.edge});

  // Per-vertex incidence, both directions.
  auto build_csr = [&](bool incoming, std::vector<Incidence>& inc,
                       std::vector<std::int32_t>& off) {
    off.assign(static_cast<size_t>(n) + 1, 0);
    for (const TemporalEdge& e : g.edges_) {
      Vertex at = incoming ? e.v : e.u;
      ++off[at + 1];
      if (!directed) ++off[(incoming ? e.u : e.v) + 1];
    }
    for (size_t i = 1; i < off.size(); ++i) off[i] += off[i - 1];
    inc.resize(off.back());
    std::vector<std::int32_t> cur(off.begin(), off.end() - 1);
    for (EdgeId i = 0; i < static_cast<EdgeId>(g.edges_.size()); ++i) {
      const TemporalEdge& e = g.edges_[i];
      Vertex at = incoming ? e.v : e.u;
      Vertex other = incoming ? e.u : e.v;
      inc[cur[at]++] = {other, e.ts, i};
      if (!directed) inc[cur[other]++] = {at, e.ts, i};
    }
    for (Vertex u = 0; u < n; ++u)
      std::sort(inc.begin() + off[u], inc.begin() + off[u + 1],
                [](const Incidence& a, const Incidence& b) {
                  return std::tie(a.ts, a.other) < std::tie(b.ts, b.other);
                });
  };
  build_csr(true, g.in_inc_, g.in_off_);
  build_csr(false, g.out_inc_, g.out_off_);
  return g;
}

std::span<const ArcRun> TemporalGraph::runs_at(Timestamp i) const {
  if (i < 1 || i > t_) return {};
  return {runs_.data() + runs_off_[i], runs_.data() + runs_off_[i + 1]};
}

std::span<const Incidence> TemporalGraph::in_arcs(Vertex u) const {
  return {in_inc_.data() + in_off_[u], in_inc_.data() + in_off_[u + 1]};
}

std::span<const Incidence> TemporalGraph::out_arcs(Vertex u) const {
  return {out_inc_.data() + out_off_[u], out_inc_.data() + out_off_[u + 1]};
}

void TemporalGraph::set_delays(std::vector<std::int32_t> d) {
  if (!d.empty() && static_cast<int>(d.size()) != n_)
    throw std::invalid_argument("delay vector size mismatch");
  for (std::int32_t x : d)
    if (x < 0) throw std::invalid_argument("negative vertex delay");
  delays_ = std::move(d);
}

VertexColoring::VertexColoring(std::vector<Color> primary, Color q)
    : primary_(std::move(primary)), q_(q) {
  for (Color c : primary_)
    if (c < 1 || c > q_) throw std::invalid_argument("vertex color outside [1..q]");
}

VertexColoring VertexColoring::with_wildcard() const {
  VertexColoring c = *this;
  c.wildcard_ = true;
  return c;
}

VertexColoring VertexColoring::uniform(int n, Color c) {
  return VertexColoring(std::vector<Color>(n, c), c);
}

StaticProjection StaticProjection::project(const TemporalGraph& g) {
  StaticProjection s;
  s.n_ = g.n();
  s.directed_ = g.directed();

  std::map<std::pair<Vertex, Vertex>, std::vector<EdgeId>> groups;
  for (EdgeId i = 0; i < static_cast<EdgeId>(g.edges().size()); ++i) {
    const TemporalEdge& e = g.edge(i);
    Vertex a = e.u, b = e.v;
    if (!s.directed_ && a > b) std::swap(a, b);
    groups[{a, b}].push_back(i);
  }
  s.back_off_.push_back(0);
  for (auto& [uv, ids] : groups) {
    s.edges_.push_back(uv);
    s.back_.insert(s.back_.end(), ids.begin(), ids.end());
    s.back_off_.push_back(static_cast<std::int32_t>(s.back_.size()));
  }

  auto build = [&](bool incoming, std::vector<Arc>& arcs,
                   std::vector<ArcRun>& runs) {
    struct RawArc {
      Vertex head, tail;
      EdgeId edge;
    };
    std::vector<RawArc> raw;
    for (EdgeId i = 0; i < static_cast<EdgeId>(s.edges_.size()); ++i) {
      auto [u, v] = s.edges_[i];
      if (incoming) {
        raw.push_back({v, u, i});
        if (!s.directed_) raw.push_back({u, v, i});
      } else {
        raw.push_back({u, v, i});
        if (!s.directed_) raw.push_back({v, u, i});
      }
    }
    std::sort(raw.begin(), raw.end(), [](const RawArc& a, const RawArc& b) {
      return std::tie(a.head, a.tail) < std::tie(b.head, b.tail);
    });
    for (size_t i = 0; i < raw.size();) {
      size_t j = i;
      while (j < raw.size() && raw[j].head == raw[i].head) ++j;
      runs.push_back({raw[i].head, static_cast<std::int32_t>(i),
                      static_cast<std::int32_t>(j)});
      i = j;
    }
    for (const RawArc& a : raw) arcs.push_back({a.tail, a.edge});
  };
  build(true, s.in_arcs_, s.in_runs_);
  build(false, s.out_arcs_, s.out_runs_);
  return s;
}

std::span<const EdgeId> StaticProjection::temporal_edges_of(
    std::int32_t static_edge) const {
  return {back_.data() + back_off_[static_edge],
          back_.data() + back_off_[static_edge + 1]};
}

Timestamp TemporalPath::max_ts() const {
  Timestamp m = 0;
  for (const TemporalEdge& e : edges) m = std::max(m, e.ts);
  return m;
}

std::int32_t min_time_gap(const TemporalGraph& g, const TemporalEdge& prev,
                          Vertex via, EdgeModel model) {
  std::int32_t eps = 1, delta = 1;
  if (model == EdgeModel::transition_only || model == EdgeModel::transition_delay)
    eps = prev.eps;
  if (model == EdgeModel::delay_only || model == EdgeModel::transition_delay)
    delta = g.delay(via);
  return eps + delta - 1;
}

namespace {

bool edge_exists(const TemporalGraph& g, Vertex u, Vertex v, Timestamp ts,
                 TemporalEdge& out) {
  for (const Incidence& inc : g.out_arcs(u)) {
    if (inc.ts == ts && inc.other == v) {
      out = g.edge(inc.edge);
      return true;
    }
  }
  return false;
}

}  // namespace

PathVerdict validate_path(const TemporalGraph& g, const VertexColoring& coloring,
                          const TemporalPath& p, const MotifQuery& query,
                          EdgeModel model, Vertex source, Vertex dest) {
  if (p.vertices.empty()) return {PathVerdictCode::empty, "empty path"};
  if (p.edges.size() + 1 != p.vertices.size())
    return {PathVerdictCode::length_mismatch, "edge/vertex count mismatch"};
  if (query.k > 0 && p.k() != query.k)
    return {PathVerdictCode::length_mismatch,
            "path has " + std::to_string(p.k()) + " vertices, query wants " +
                std::to_string(query.k)};

  for (Vertex u : p.vertices)
    if (u < 0 || u >= g.n())
      return {PathVerdictCode::vertex_out_of_range, std::to_string(u)};

  std::vector<Vertex> sorted = p.vertices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    return {PathVerdictCode::repeated_vertex, "vertex repeats"};

  for (size_t i = 0; i < p.edges.size(); ++i) {
    const TemporalEdge& e = p.edges[i];
    bool matches = (e.u == p.vertices[i] && e.v == p.vertices[i + 1]) ||
                   (!g.directed() && e.v == p.vertices[i] && e.u == p.vertices[i + 1]);
    TemporalEdge found;
    if (!matches || !edge_exists(g, p.vertices[i], p.vertices[i + 1], e.ts, found))
      return {PathVerdictCode::edge_missing,
              "no edge " + std::to_string(p.vertices[i]) + "-" +
                  std::to_string(p.vertices[i + 1]) + " at ts " +
                  std::to_string(e.ts)};
  }

  for (size_t i = 1; i < p.edges.size(); ++i) {
    TemporalEdge prev;
    edge_exists(g, p.vertices[i - 1], p.vertices[i], p.edges[i - 1].ts, prev);
    std::int32_t gap = min_time_gap(g, prev, p.vertices[i], model);
    if (p.edges[i].ts - p.edges[i - 1].ts < gap)
      return {PathVerdictCode::time_violation,
              "timestamp gap " + std::to_string(p.edges[i].ts - p.edges[i - 1].ts) +
                  " below required " + std::to_string(gap) + " at step " +
                  std::to_string(i)};
  }

  if (source >= 0 && p.vertices.front() != source)
    return {PathVerdictCode::endpoint_mismatch, "wrong start vertex"};
  if (dest >= 0 && p.vertices.back() != dest)
    return {PathVerdictCode::endpoint_mismatch, "wrong end vertex"};

  if (query.has_times()) {
    for (size_t i = 0; i < p.edges.size(); ++i)
      if (p.edges[i].ts != query.times[i])
        return {PathVerdictCode::times_mismatch,
                "edge " + std::to_string(i) + " at ts " +
                    std::to_string(p.edges[i].ts) + ", prescribed " +
                    std::to_string(query.times[i])};
  }

  if (query.kind == QueryKind::ordered_colors) {
    for (int i = 0; i < query.k; ++i)
      if (!coloring.has_color(p.vertices[i], query.order[i]))
        return {PathVerdictCode::order_mismatch,
                "position " + std::to_string(i) + " needs color " +
                    std::to_string(query.order[i])};
  } else if (query.has_multiset()) {
    // One chosen color per vertex must realize the multiset exactly. With at
    // most two colors per vertex a greedy check suffices: consume primaries
    // first, then cover the remainder with wildcards.
    std::map<Color, int> need = query.multiset;
    int wildcards_available = 0;
    for (Vertex u : p.vertices) {
      Color c = coloring.primary(u);
      auto it = need.find(c);
      if (it != need.end() && it->second > 0) {
        if (--it->second == 0) need.erase(it);
      } else if (coloring.wildcard_active()) {
        ++wildcards_available;
      } else {
        return {PathVerdictCode::color_mismatch,
                "vertex " + std::to_string(u) + " color " + std::to_string(c) +
                    " not required by query"};
      }
    }
    int missing = 0;
    Color wc = coloring.wildcard_color();
    for (auto& [c, cnt] : need) {
      if (c == wc) continue;
      missing += cnt;
    }
    if (missing > 0)
      return {PathVerdictCode::color_mismatch, "query colors left uncovered"};
    int wildcard_need = need.count(wc) ? need.at(wc) : 0;
    if (wildcard_need != wildcards_available)
      return {PathVerdictCode::color_mismatch, "wildcard count mismatch"};
  }
  return {};
}

// --- File ingestion ---------------------------------------------------------

namespace {

struct TokenReader {
  std::istream& is;
  std::int64_t line = 0;

  // Returns tokens of the next non-comment, non-empty line.
  bool next(std::vector<std::string>& tokens) {
    std::string raw;
    while (std::getline(is, raw)) {
      ++line;
      if (auto pos = raw.find('#'); pos != std::string::npos) raw.resize(pos);
      tokens.clear();
      std::istringstream ss(raw);
      std::string tok;
      while (ss >> tok) tokens.push_back(tok);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::runtime_error("line " + std::to_string(line) + ": " + what);
  }
};

std::int64_t parse_int(const std::string& tok, const TokenReader& r) {
  try {
    size_t used = 0;
    std::int64_t v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    r.fail("malformed integer '" + tok + "'");
  }
}

}  // namespace

LoadResult load_graph(std::istream& edge_stream, std::istream* color_stream,
                      bool directed) {
  LoadResult out;
  std::unordered_map<std::string, Vertex> ids;
  auto intern = [&](const std::string& tok) -> Vertex {
    auto [it, fresh] = ids.emplace(tok, static_cast<Vertex>(ids.size()));
    if (fresh) out.vertex_names.push_back(tok);
    return it->second;
  };

  struct RawEdge {
    Vertex u, v;
    std::int64_t ts;
    std::int32_t eps;
  };
  std::vector<RawEdge> raw;
  std::vector<std::int64_t> stamps;

  TokenReader reader{edge_stream};
  std::vector<std::string> tok;
  while (reader.next(tok)) {
    if (tok.size() != 3 && tok.size() != 4)
      reader.fail("expected 'u v ts' (optionally 'u v ts eps')");
    ++out.stats.raw_records;
    Vertex u = intern(tok[0]);
    Vertex v = intern(tok[1]);
    std::int64_t ts = parse_int(tok[2], reader);
    if (ts < 0) reader.fail("negative timestamp");
    std::int32_t eps = 1;
    if (tok.size() == 4) {
      std::int64_t e = parse_int(tok[3], reader);
      if (e < 1) reader.fail("transition time below 1");
      eps = static_cast<std::int32_t>(e);
    }
    raw.push_back({u, v, ts, eps});
    stamps.push_back(ts);
  }

  std::sort(stamps.begin(), stamps.end());
  stamps.erase(std::unique(stamps.begin(), stamps.end()), stamps.end());
  auto rank_of = [&](std::int64_t ts) -> Timestamp {
    auto it = std::lower_bound(stamps.begin(), stamps.end(), ts);
    return static_cast<Timestamp>(it - stamps.begin() + 1);
  };

  int n = static_cast<int>(ids.size());
  std::vector<TemporalEdge> edges;
  edges.reserve(raw.size());
  for (const RawEdge& e : raw)
    edges.push_back({e.u, e.v, rank_of(e.ts), e.eps});

  out.graph = TemporalGraph::build(n, std::move(edges), directed,
                                   static_cast<Timestamp>(stamps.size()));
  out.stats.self_loops_dropped = out.graph.dropped_self_loops();
  out.stats.duplicates_dropped = out.graph.dropped_duplicates();

  std::vector<Color> colors(n, 1);
  Color q = 1;
  if (color_stream) {
    TokenReader creader{*color_stream};
    while (creader.next(tok)) {
      if (tok.size() != 2) creader.fail("expected 'u c'");
      auto it = ids.find(tok[0]);
      if (it == ids.end()) continue;  // color for a vertex without edges
      std::int64_t c = parse_int(tok[1], creader);
      if (c < 1) creader.fail("color below 1");
      colors[it->second] = static_cast<Color>(c);
      q = std::max(q, static_cast<Color>(c));
    }
  }
  out.coloring = VertexColoring(std::move(colors), q);
  return out;
}

std::vector<std::int32_t> load_delays(std::istream& delay_stream,
                                      const LoadResult& loaded) {
  std::unordered_map<std::string, Vertex> ids;
  for (Vertex u = 0; u < static_cast<Vertex>(loaded.vertex_names.size()); ++u)
    ids.emplace(loaded.vertex_names[u], u);

  std::vector<std::int32_t> delays(loaded.graph.n(), 0);
  TokenReader reader{delay_stream};
  std::vector<std::string> tok;
  while (reader.next(tok)) {
    if (tok.size() != 2) reader.fail("expected 'u d'");
    auto it = ids.find(tok[0]);
    if (it == ids.end()) continue;
    std::int64_t d = parse_int(tok[1], reader);
    if (d < 0) reader.fail("negative delay");
    delays[it->second] = static_cast<std::int32_t>(d);
  }
  return delays;
}

void save_graph(std::ostream& os, const TemporalGraph& g) {
  for (const TemporalEdge& e : g.edges()) {
    os << e.u << ' ' << e.v << ' ' << e.ts;
    if (g.has_transition_times()) os << ' ' << e.eps;
    os << '\n';
  }
}

void save_colors(std::ostream& os, const VertexColoring& coloring) {
  for (Vertex u = 0; u < coloring.n(); ++u)
    os << u << ' ' << coloring.primary(u) << '\n';
}

TemporalGraph restrict_to(const TemporalGraph& g,
                          const std::vector<bool>& keep_vertex,
                          Timestamp max_ts) {
  std::vector<TemporalEdge> edges;
  for (const TemporalEdge& e : g.edges())
    if (e.ts <= max_ts && keep_vertex[e.u] && keep_vertex[e.v])
      edges.push_back(e);
  TemporalGraph r = TemporalGraph::build(g.n(), std::move(edges), g.directed(),
                                         std::min(max_ts, g.t()));
  if (!g.delays().empty()) r.set_delays(g.delays());
  return r;
}

}  // namespace tsieve
