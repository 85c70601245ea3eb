#include "tsieve/solver.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <map>
#include <stdexcept>

namespace tsieve {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Prepared {
  Problem problem = Problem::path_motif;
  SieveConfig cfg;
  MotifQuery query;          // effective query
  VertexColoring coloring;   // effective coloring
  TemporalGraph graph;       // after preprocessing
  AnchorSpec anchor;
  ShadeAssignment shades;
  int k = 0;
  bool infeasible = false;   // certain NO established before any evaluation
  std::string infeasible_note;
  int kept_count = 0;
  double preprocess_s = 0;
  std::uint64_t peak_words = 0;
};

bool uses_shades(Problem p) {
  return p != Problem::vc_path_motif && p != Problem::vc_colorful_path;
}

// Maps the raw request onto the effective instance the engines consume:
// size-only queries become the all-one-colored multiset construction, the
// (s,d) variant is recolored with the two fresh endpoint colors.
void make_effective(const TemporalGraph& g, const VertexColoring& coloring,
                    const SolveRequest& req, Prepared& prep) {
  prep.problem = req.problem;
  prep.cfg = req.config;
  prep.anchor = {};

  switch (req.problem) {
    case Problem::k_temp_path: {
      if (req.query.kind != QueryKind::size_only)
        throw std::invalid_argument("k-TempPath takes a size-only query");
      std::vector<Color> ones(req.query.k, 1);
      prep.query = MotifQuery::from_multiset(ones);
      prep.coloring = VertexColoring::uniform(g.n());
      break;
    }
    case Problem::ec_temp_path: {
      if (req.query.kind != QueryKind::ordered_times_only)
        throw std::invalid_argument("EC-TempPath takes a timestamp tuple");
      std::vector<Color> ones(req.query.k, 1);
      prep.query = MotifQuery::from_times(req.query.times, ones);
      prep.coloring = VertexColoring::uniform(g.n());
      break;
    }
    case Problem::ec_path_motif:
      if (req.query.kind != QueryKind::ordered_times_multiset)
        throw std::invalid_argument(
            "EC-PathMotif takes a timestamp tuple plus a color multiset");
      prep.query = req.query;
      prep.coloring = coloring;
      break;
    case Problem::path_motif:
    case Problem::colorful_path:
      if (req.query.kind != QueryKind::multiset)
        throw std::invalid_argument("expected a color-multiset query");
      prep.query = req.query;
      prep.coloring = coloring;
      break;
    case Problem::sd_colorful_path: {
      if (req.query.kind != QueryKind::size_only)
        throw std::invalid_argument("(s,d)-ColorfulPath takes --k (interior size)");
      if (req.source < 0 || req.source >= g.n() || req.dest < 0 ||
          req.dest >= g.n() || req.source == req.dest)
        throw std::invalid_argument("invalid source/dest");
      int k = req.query.k;
      // Interior colors [1..k]; off-range vertices get the sentinel k+3.
      std::vector<Color> recolored(g.n());
      for (Vertex u = 0; u < g.n(); ++u) {
        Color c = coloring.primary(u);
        recolored[u] = (c >= 1 && c <= k) ? c : k + 3;
      }
      recolored[req.source] = k + 1;
      recolored[req.dest] = k + 2;
      prep.coloring = VertexColoring(std::move(recolored), k + 3);
      std::vector<Color> m;
      for (Color c = 1; c <= k + 2; ++c) m.push_back(c);
      prep.query = MotifQuery::from_multiset(m);
      prep.anchor = {req.source, req.dest};
      break;
    }
    case Problem::vc_path_motif:
    case Problem::vc_colorful_path:
      if (req.query.kind != QueryKind::ordered_colors)
        throw std::invalid_argument("VC variants take an ordered color tuple");
      if (req.problem == Problem::vc_colorful_path) {
        std::vector<Color> sorted = req.query.order;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
          throw std::invalid_argument("VC-ColorfulPath needs distinct colors");
      }
      prep.query = req.query;
      prep.coloring = coloring;
      break;
    case Problem::rainbow_path:
      throw std::logic_error("rainbow handled by its own driver");
  }
  prep.k = prep.query.k;
  if (prep.k < 1) throw std::invalid_argument("k must be positive");

  if (prep.query.has_times()) {
    const auto& ts = prep.query.times;
    for (std::size_t i = 1; i < ts.size(); ++i)
      if (ts[i] <= ts[i - 1])
        throw std::invalid_argument("prescribed timestamps must strictly increase");
  }
}

std::vector<Color> query_support(const MotifQuery& q) {
  std::vector<Color> support;
  if (!q.multiset.empty()) {
    for (auto& [c, mu] : q.multiset) support.push_back(c);
  } else {
    support = q.order;
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
  }
  return support;
}

struct ProbeResult {
  SieveOutcome out;
  bool exact = false;  // result holds for every seed
};

// VC-ColorfulPath indicator DP. I[u][j] == 1 iff a path realizing the order
// prefix ends at u with its last edge strictly before timestamp j.
ProbeResult dp_probe(const TemporalGraph& g, const VertexColoring& coloring,
                     const std::vector<Color>& order, Timestamp max_ts) {
  const int n = g.n();
  const int k = static_cast<int>(order.size());
  const std::size_t width = static_cast<std::size_t>(max_ts) + 2;

  std::vector<char> prev(static_cast<std::size_t>(n) * width, 0);
  std::vector<char> cur(prev.size(), 0);

  for (Vertex u = 0; u < n; ++u)
    if (coloring.has_color(u, order[0]))
      std::fill_n(prev.begin() + static_cast<std::size_t>(u) * width, width, 1);

  for (int ell = 2; ell <= k; ++ell) {
    std::fill(cur.begin(), cur.end(), 0);
    auto relax = [&](Vertex head, Vertex tail, Timestamp i) {
      if (!coloring.has_color(head, order[ell - 1])) return;
      if (!coloring.has_color(tail, order[ell - 2])) return;
      if (!prev[static_cast<std::size_t>(tail) * width + i]) return;
      cur[static_cast<std::size_t>(head) * width + i + 1] = 1;
    };
    for (const TemporalEdge& e : g.edges()) {
      if (e.ts > max_ts) break;  // edges are sorted by timestamp
      relax(e.v, e.u, e.ts);
      if (!g.directed()) relax(e.u, e.v, e.ts);
    }
    for (Vertex u = 0; u < n; ++u) {
      char* row = cur.data() + static_cast<std::size_t>(u) * width;
      for (std::size_t j = 1; j < width; ++j) row[j] |= row[j - 1];
    }
    std::swap(prev, cur);
  }

  ProbeResult pr;
  pr.exact = true;
  pr.out.accumulators.assign(n, 0);
  for (Vertex u = 0; u < n; ++u)
    if (prev[static_cast<std::size_t>(u) * width + width - 1]) {
      pr.out.accumulators[u] = 1;
      pr.out.flagged.push_back(u);
    }
  pr.out.global_nonzero = !pr.out.flagged.empty();
  pr.out.fn_bound = 0.0;
  std::uint64_t h = 1469598103934665603ull;
  for (Vertex u : pr.out.flagged) {
    h ^= static_cast<std::uint64_t>(u);
    h *= 1099511628211ull;
  }
  pr.out.checksum = h;
  return pr;
}

ProbeResult probe(const Prepared& prep, Timestamp max_ts) {
  ProbeResult pr;
  switch (prep.problem) {
    case Problem::k_temp_path:
    case Problem::path_motif:
    case Problem::colorful_path:
    case Problem::sd_colorful_path:
      pr.out = eval_temporal_sieve(prep.graph, prep.k, max_ts, prep.shades,
                                   prep.cfg, prep.anchor);
      break;
    case Problem::ec_temp_path:
    case Problem::ec_path_motif:
      if (prep.query.times.back() > max_ts) {
        pr.out.accumulators.assign(prep.graph.n(), 0);
        pr.exact = true;
      } else {
        pr.out = eval_edge_constrained_sieve(prep.graph, prep.query.times,
                                             prep.shades, prep.cfg);
      }
      break;
    case Problem::vc_path_motif:
      pr.out = eval_vertex_ordered_sieve(prep.graph, prep.query.order,
                                         prep.coloring, max_ts, prep.cfg);
      break;
    case Problem::vc_colorful_path:
      pr = dp_probe(prep.graph, prep.coloring, prep.query.order, max_ts);
      break;
    case Problem::rainbow_path:
      throw std::logic_error("rainbow handled by its own driver");
  }
  return pr;
}

// --- Witness extraction -----------------------------------------------------

// Shared constraint state for the extraction DFS, backward and forward.
struct DfsCtx {
  const TemporalGraph& g;
  const VertexColoring& coloring;
  const MotifQuery& query;
  AnchorSpec anchor;
  EdgeModel model;
  Timestamp horizon;

  std::map<Color, int> remaining;  // multiset kinds only
  std::vector<char> used;
  std::vector<Vertex> chain;        // backward: v_k, v_{k-1}, ...
  std::vector<TemporalEdge> chain_edges;

  DfsCtx(const TemporalGraph& g_, const VertexColoring& c_,
         const MotifQuery& q_, AnchorSpec a_, EdgeModel m_, Timestamp h_)
      : g(g_), coloring(c_), query(q_), anchor(a_), model(m_), horizon(h_) {
    if (q_.has_multiset() || q_.kind == QueryKind::size_only)
      remaining = q_.multiset;
    used.assign(g_.n(), 0);
  }

  bool ordered() const { return query.kind == QueryKind::ordered_colors; }

  // Color feasibility of placing v at 1-based position pos; calls fn with the
  // consumption applied (both choices tried for wildcard-colored queries).
  template <typename Fn>
  bool with_color(Vertex v, int pos, Fn&& fn) {
    if (ordered()) {
      if (!coloring.has_color(v, query.order[pos - 1])) return false;
      return fn();
    }
    Color c = coloring.primary(v);
    auto it = remaining.find(c);
    if (it != remaining.end() && it->second > 0) {
      --it->second;
      bool hit = fn();
      ++it->second;
      if (hit) return true;
    }
    if (coloring.wildcard_active()) {
      auto wit = remaining.find(coloring.wildcard_color());
      if (wit != remaining.end() && wit->second > 0) {
        --wit->second;
        bool hit = fn();
        ++wit->second;
        if (hit) return true;
      }
    }
    return false;
  }

  bool position_allows(Vertex v, int pos) const {
    if (anchor.source >= 0) {
      if (v == anchor.source && pos != 1) return false;
      if (pos == 1 && v != anchor.source) return false;
    }
    if (anchor.sink >= 0) {
      if (v == anchor.sink && pos != query.k) return false;
      if (pos == query.k && v != anchor.sink) return false;
    }
    return true;
  }

  std::int32_t eps_eff(const TemporalEdge& e) const {
    return (model == EdgeModel::transition_only ||
            model == EdgeModel::transition_delay)
               ? e.eps
               : 1;
  }
  std::int32_t delta_eff(Vertex v) const {
    return (model == EdgeModel::delay_only ||
            model == EdgeModel::transition_delay)
               ? g.delay(v)
               : 1;
  }
};

// Visits arcs in descending-timestamp, ascending-id order (the reverse
// temporal DFS exploration order), capped at ts_hi.
template <typename F>
bool scan_desc(std::span<const Incidence> arcs, Timestamp ts_hi, F&& f) {
  auto end = std::upper_bound(
      arcs.begin(), arcs.end(), ts_hi,
      [](Timestamp t, const Incidence& a) { return t < a.ts; });
  auto i = end;
  while (i != arcs.begin()) {
    Timestamp ts = std::prev(i)->ts;
    auto run_begin = i;
    while (run_begin != arcs.begin() && std::prev(run_begin)->ts == ts)
      --run_begin;
    for (auto it = run_begin; it != i; ++it)
      if (f(*it)) return true;
    i = run_begin;
  }
  return false;
}

// Reverse temporal DFS: grows the path backward from its end vertex with
// decreasing timestamps. pos is the position being filled next.
bool backward_dfs(DfsCtx& ctx, int pos) {
  if (pos == 0) return true;
  Vertex x = ctx.chain.back();  // at position pos+1
  const bool last_step = ctx.chain_edges.empty();
  Timestamp ts_hi;
  if (last_step) {
    ts_hi = ctx.horizon;
  } else {
    ts_hi = ctx.chain_edges.back().ts - ctx.delta_eff(x);
    if (ctx.model == EdgeModel::instant) ts_hi = ctx.chain_edges.back().ts - 1;
  }
  if (ctx.query.has_times()) ts_hi = std::min(ts_hi, ctx.query.times[pos - 1]);

  return scan_desc(ctx.g.in_arcs(x), ts_hi, [&](const Incidence& inc) {
    Vertex v = inc.other;
    if (ctx.used[v]) return false;
    const TemporalEdge& e = ctx.g.edge(inc.edge);
    if (ctx.query.has_times() && inc.ts != ctx.query.times[pos - 1])
      return false;
    if (last_step) {
      if (inc.ts + ctx.eps_eff(e) - 1 > ctx.horizon) return false;
    } else {
      if (ctx.chain_edges.back().ts - inc.ts <
          ctx.eps_eff(e) + ctx.delta_eff(x) - 1)
        return false;
    }
    if (!ctx.position_allows(v, pos)) return false;
    return ctx.with_color(v, pos, [&] {
      ctx.used[v] = 1;
      ctx.chain.push_back(v);
      ctx.chain_edges.push_back(e);
      if (backward_dfs(ctx, pos - 1)) return true;
      ctx.chain_edges.pop_back();
      ctx.chain.pop_back();
      ctx.used[v] = 0;
      return false;
    });
  });
}

std::optional<TemporalPath> extract_backward(const Prepared& prep, Vertex end,
                                             Timestamp horizon) {
  DfsCtx ctx(prep.graph, prep.coloring, prep.query, prep.anchor,
             prep.cfg.edge_model, horizon);
  const int k = prep.query.k;
  if (!ctx.position_allows(end, k)) return std::nullopt;
  bool found = ctx.with_color(end, k, [&] {
    ctx.used[end] = 1;
    ctx.chain.push_back(end);
    if (backward_dfs(ctx, k - 1)) return true;
    ctx.chain.pop_back();
    ctx.used[end] = 0;
    return false;
  });
  if (!found) return std::nullopt;

  TemporalPath p;
  p.vertices.assign(ctx.chain.rbegin(), ctx.chain.rend());
  p.edges.assign(ctx.chain_edges.rbegin(), ctx.chain_edges.rend());
  return p;
}

// Forward temporal DFS (ascending timestamps, ascending neighbor id) used by
// the self-reducibility strategy on the shrunken core.
bool forward_dfs(DfsCtx& ctx, int pos) {
  const int k = ctx.query.k;
  if (pos > k) return true;
  Vertex x = ctx.chain.back();  // at position pos-1
  Timestamp ts_lo = 1;
  if (!ctx.chain_edges.empty())
    ts_lo = ctx.chain_edges.back().ts +
            std::max<std::int32_t>(
                0, ctx.eps_eff(ctx.chain_edges.back()) + ctx.delta_eff(x) - 1);
  auto arcs = ctx.g.out_arcs(x);
  auto it = std::lower_bound(
      arcs.begin(), arcs.end(), ts_lo,
      [](const Incidence& a, Timestamp t) { return a.ts < t; });
  for (; it != arcs.end(); ++it) {
    Vertex v = it->other;
    if (ctx.used[v]) continue;
    const TemporalEdge& e = ctx.g.edge(it->edge);
    if (ctx.query.has_times() && it->ts != ctx.query.times[pos - 2]) continue;
    if (it->ts + ctx.eps_eff(e) - 1 > ctx.horizon) continue;
    if (!ctx.position_allows(v, pos)) continue;
    bool hit = ctx.with_color(v, pos, [&] {
      ctx.used[v] = 1;
      ctx.chain.push_back(v);
      ctx.chain_edges.push_back(e);
      if (forward_dfs(ctx, pos + 1)) return true;
      ctx.chain_edges.pop_back();
      ctx.chain.pop_back();
      ctx.used[v] = 0;
      return false;
    });
    if (hit) return true;
  }
  return false;
}

std::optional<TemporalPath> extract_forward(const Prepared& prep,
                                            const TemporalGraph& core,
                                            Vertex start, Timestamp horizon) {
  DfsCtx ctx(core, prep.coloring, prep.query, prep.anchor,
             prep.cfg.edge_model, horizon);
  if (!ctx.position_allows(start, 1)) return std::nullopt;
  bool found = ctx.with_color(start, 1, [&] {
    ctx.used[start] = 1;
    ctx.chain.push_back(start);
    if (forward_dfs(ctx, 2)) return true;
    ctx.chain.pop_back();
    ctx.used[start] = 0;
    return false;
  });
  if (!found) return std::nullopt;
  TemporalPath p;
  p.vertices = ctx.chain;
  p.edges = ctx.chain_edges;
  return p;
}

// --- Preparation ------------------------------------------------------------

// Kept mask for one preprocessing level over the effective instance. Vertex
// ids are preserved throughout.
std::vector<bool> preprocess_mask(const TemporalGraph& g, const Prepared& prep,
                                  PreprocessLevel level,
                                  std::uint64_t& peak_words) {
  std::vector<bool> keep(g.n(), true);
  if (level == PreprocessLevel::color_filter || level == PreprocessLevel::both) {
    std::vector<Color> support = query_support(prep.query);
    for (Vertex u = 0; u < g.n(); ++u) {
      bool match = false;
      for (Color c : support)
        if (prep.coloring.has_color(u, c)) {
          match = true;
          break;
        }
      keep[u] = match;
    }
  }
  if ((level == PreprocessLevel::static_sieve || level == PreprocessLevel::both) &&
      !prep.query.multiset.empty()) {
    // The junction sieve keeps exactly the vertices lying on some properly
    // colored static k-path; ordered and edge-constrained variants relax to
    // their color multiset here, which is sound for a kept-vertex filter.
    MotifQuery relaxed;
    relaxed.kind = QueryKind::multiset;
    relaxed.k = prep.k;
    relaxed.multiset = prep.query.multiset;
    ShadeAssignment shades = build_shades(relaxed, prep.coloring, prep.cfg);
    if (!shades.feasible) {
      std::fill(keep.begin(), keep.end(), false);
      return keep;
    }
    TemporalGraph filtered = restrict_to(g, keep, g.t());
    StaticProjection proj = StaticProjection::project(filtered);
    SieveOutcome jo = eval_junction_sieve(proj, prep.k, shades, prep.cfg);
    peak_words = std::max(peak_words, jo.peak_field_words);
    std::vector<bool> flagged(g.n(), false);
    for (Vertex u : jo.flagged) flagged[u] = true;
    for (Vertex u = 0; u < g.n(); ++u) keep[u] = keep[u] && flagged[u];
  }
  return keep;
}

Prepared prepare(const TemporalGraph& g, const VertexColoring& coloring,
                 const SolveRequest& req) {
  Prepared prep;
  make_effective(g, coloring, req, prep);
  auto t0 = Clock::now();

  if (prep.k > g.n()) {
    prep.infeasible = true;
    prep.infeasible_note = "k exceeds vertex count";
    prep.graph = g;
    return prep;
  }
  if (prep.query.has_times() &&
      (prep.query.times.front() < 1 || prep.query.times.back() > g.t())) {
    prep.infeasible = true;
    prep.infeasible_note = "prescribed timestamp outside [1..t]";
    prep.graph = g;
    return prep;
  }

  if (uses_shades(prep.problem)) {
    prep.shades = build_shades(prep.query, prep.coloring, prep.cfg);
    if (!prep.shades.feasible) {
      prep.infeasible = true;
      prep.infeasible_note = "query color " +
                             std::to_string(prep.shades.missing_color) +
                             " absent from the graph";
      prep.graph = g;
      return prep;
    }
  }

  PreprocessLevel level = req.preprocess;
  // The exact DP must stay exact: only the lossless filter applies to it.
  if (prep.problem == Problem::vc_colorful_path &&
      (level == PreprocessLevel::static_sieve || level == PreprocessLevel::both))
    level = PreprocessLevel::color_filter;

  std::vector<bool> keep = preprocess_mask(g, prep, level, prep.peak_words);
  prep.graph = restrict_to(g, keep, g.t());
  prep.kept_count = static_cast<int>(std::count(keep.begin(), keep.end(), true));
  if (prep.kept_count < prep.k) {
    prep.infeasible = true;
    prep.infeasible_note = "fewer than k vertices remain after preprocessing";
  }
  prep.preprocess_s = seconds_since(t0);
  return prep;
}

void fill_report_from(const Prepared& prep, SolveReport& r) {
  r.preprocessed_n = prep.kept_count;
  r.preprocessed_m = prep.graph.m();
  r.timings.preprocess_s = prep.preprocess_s;
  r.peak_field_words = std::max(r.peak_field_words, prep.peak_words);
}

// Phase 1 of the self-reducibility strategy: shrink to exactly k vertices
// with deletion queries. Counts the probes it spends.
std::vector<bool> shrink_to_core(const Prepared& prep, Timestamp horizon,
                                 int& calls, std::uint64_t& peak) {
  std::vector<bool> keep(prep.graph.n(), false);
  std::vector<Vertex> candidates;
  for (const TemporalEdge& e : prep.graph.edges()) {
    keep[e.u] = true;
    keep[e.v] = true;
  }
  for (Vertex u = 0; u < prep.graph.n(); ++u)
    if (keep[u]) candidates.push_back(u);

  auto yes_without = [&](const std::vector<Vertex>& block) {
    std::vector<bool> mask = keep;
    for (Vertex v : block) mask[v] = false;
    TemporalGraph sub = restrict_to(prep.graph, mask, horizon);
    Prepared probe_prep = prep;
    probe_prep.graph = std::move(sub);
    ProbeResult pr = probe(probe_prep, horizon);
    ++calls;
    peak = std::max(peak, pr.out.peak_field_words);
    return pr.out.global_nonzero;
  };

  // Recursive halving: discard whole blocks whose removal keeps the answer.
  std::deque<std::vector<Vertex>> queue;
  queue.push_back(candidates);
  std::vector<Vertex> survivors;
  while (!queue.empty()) {
    std::vector<Vertex> block = std::move(queue.front());
    queue.pop_front();
    if (block.empty()) continue;
    if (yes_without(block)) {
      for (Vertex v : block) keep[v] = false;
      continue;
    }
    if (block.size() == 1) {
      survivors.push_back(block[0]);
      continue;
    }
    std::size_t half = block.size() / 2;
    queue.emplace_back(block.begin(), block.begin() + half);
    queue.emplace_back(block.begin() + half, block.end());
  }

  // Linear cleanup over survivors: later deletions can expose new ones.
  for (Vertex v : survivors) {
    if (!keep[v]) continue;
    if (yes_without({v})) keep[v] = false;
  }
  return keep;
}

SolveReport solve_single(const TemporalGraph& g, const VertexColoring& coloring,
                         const SolveRequest& req, SolveMode mode) {
  SolveReport r;
  Prepared prep = prepare(g, coloring, req);
  fill_report_from(prep, r);
  if (prep.infeasible) {
    r.decision = false;
    r.certain = true;
    r.note = prep.infeasible_note;
    return r;
  }

  auto t0 = Clock::now();
  const Timestamp full = prep.graph.t();
  ProbeResult full_probe = probe(prep, full);
  r.oracle_calls = 1;
  r.decision = full_probe.out.global_nonzero;
  // A nonzero accumulator certifies a match (no false positives), so YES
  // answers are exact; NO answers are exact only for the deterministic paths.
  r.certain = full_probe.exact || r.decision;
  r.flagged = full_probe.out.flagged;
  r.checksum = full_probe.out.checksum;
  r.peak_field_words = std::max(r.peak_field_words, full_probe.out.peak_field_words);
  r.timings.sieve_s = seconds_since(t0);

  if (!r.decision || mode == SolveMode::decide) {
    r.fn_bound = full_probe.out.fn_bound * r.oracle_calls;
    return r;
  }

  Timestamp horizon = full;
  SieveOutcome at_horizon = full_probe.out;
  const bool optimize =
      mode == SolveMode::optimum || mode == SolveMode::extract_optimum;
  if (optimize) {
    auto ts0 = Clock::now();
    Timestamp lo = 1, hi = full;
    while (lo < hi) {
      Timestamp mid = lo + (hi - lo) / 2;
      ProbeResult pr = probe(prep, mid);
      ++r.oracle_calls;
      r.peak_field_words = std::max(r.peak_field_words, pr.out.peak_field_words);
      if (pr.out.global_nonzero) {
        hi = mid;
        at_horizon = pr.out;
      } else {
        lo = mid + 1;
      }
    }
    horizon = lo;
    r.optimum_ts = horizon;
    if (horizon == full) at_horizon = full_probe.out;
    r.timings.sieve_s += seconds_since(ts0);
  }

  if (mode == SolveMode::extract || mode == SolveMode::extract_optimum) {
    auto te = Clock::now();
    if (req.extraction == ExtractionStrategy::localized) {
      for (Vertex u : at_horizon.flagged) {
        auto witness = extract_backward(prep, u, horizon);
        if (witness) {
          auto verdict = validate_path(prep.graph, prep.coloring, *witness,
                                       prep.query, prep.cfg.edge_model,
                                       prep.anchor.source, prep.anchor.sink);
          if (verdict) {
            r.witness = std::move(*witness);
            break;
          }
        }
      }
      if (!r.witness) r.extraction_failed = true;
    } else {
      int calls = 0;
      std::vector<bool> core =
          shrink_to_core(prep, horizon, calls, r.peak_field_words);
      r.oracle_calls += calls;
      TemporalGraph core_graph = restrict_to(prep.graph, core, horizon);
      for (Vertex u = 0; u < core_graph.n() && !r.witness; ++u) {
        if (!core[u]) continue;
        auto witness = extract_forward(prep, core_graph, u, horizon);
        if (witness) {
          auto verdict = validate_path(prep.graph, prep.coloring, *witness,
                                       prep.query, prep.cfg.edge_model,
                                       prep.anchor.source, prep.anchor.sink);
          if (verdict) r.witness = std::move(*witness);
        }
      }
      if (!r.witness) r.extraction_failed = true;
    }
    r.timings.extract_s = seconds_since(te);
  }

  r.fn_bound = full_probe.out.fn_bound * r.oracle_calls;
  return r;
}

SolveReport rainbow_driver(const TemporalGraph& g,
                           const VertexColoring& coloring,
                           const SolveRequest& req, SolveMode mode) {
  if (req.query.kind != QueryKind::size_only)
    throw std::invalid_argument("RainbowPath takes --k");
  const int k = req.query.k;
  const Color q = coloring.q();
  if (k >= q) throw std::invalid_argument("RainbowPath requires k < q");

  SolveRequest sub = req;
  sub.problem = Problem::colorful_path;
  if (sub.preprocess == PreprocessLevel::none)
    sub.preprocess = PreprocessLevel::color_filter;

  SolveReport total;
  total.certain = false;
  std::vector<Color> subset(k);
  for (int i = 0; i < k; ++i) subset[i] = i + 1;
  int tried = 0;
  while (true) {
    ++tried;
    sub.query = MotifQuery::from_multiset(subset);
    SolveReport r = solve_single(g, coloring, sub, mode);
    total.oracle_calls += r.oracle_calls;
    total.fn_bound += r.fn_bound;
    total.peak_field_words = std::max(total.peak_field_words, r.peak_field_words);
    total.timings.preprocess_s += r.timings.preprocess_s;
    total.timings.sieve_s += r.timings.sieve_s;
    total.timings.extract_s += r.timings.extract_s;
    if (r.decision) {
      r.oracle_calls = total.oracle_calls;
      r.fn_bound = total.fn_bound;
      r.peak_field_words = total.peak_field_words;
      r.timings = total.timings;
      r.note = "subset";
      for (Color c : subset) r.note += " " + std::to_string(c);
      r.note += " (" + std::to_string(tried) + " of C(q,k) tried)";
      return r;
    }
    // Next k-combination of [1..q] in lexicographic order.
    int i = k - 1;
    while (i >= 0 && subset[i] == q - (k - 1 - i)) --i;
    if (i < 0) break;
    ++subset[i];
    for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
  total.decision = false;
  total.note = "all " + std::to_string(tried) + " color subsets exhausted";
  return total;
}

SolveReport wildcard_driver(const TemporalGraph& g,
                            const VertexColoring& coloring,
                            const SolveRequest& req, SolveMode mode) {
  if (!req.query.has_multiset() || req.query.kind != QueryKind::multiset)
    throw std::invalid_argument("wildcards apply to color-multiset queries");
  if (req.wildcard_max < req.query.k)
    throw std::invalid_argument("--wildcards-max below k");

  VertexColoring wc = coloring.with_wildcard();
  SolveRequest sub = req;
  sub.wildcard_max = 0;
  SolveReport total;
  for (int kk = req.query.k; kk <= req.wildcard_max; ++kk) {
    SolveReport r = solve_single(g, wc, sub, mode);
    total.oracle_calls += r.oracle_calls;
    total.fn_bound += r.fn_bound;
    if (r.decision) {
      r.oracle_calls = total.oracle_calls;
      r.fn_bound = total.fn_bound;
      r.wildcards_used = kk - req.query.k;
      return r;
    }
    sub.query.multiset[wc.wildcard_color()] += 1;
    sub.query.k += 1;
  }
  total.decision = false;
  total.note = "no match up to k' = " + std::to_string(req.wildcard_max);
  return total;
}

}  // namespace

const char* problem_name(Problem p) {
  switch (p) {
    case Problem::k_temp_path: return "ktemppath";
    case Problem::path_motif: return "pathmotif";
    case Problem::colorful_path: return "colorfulpath";
    case Problem::sd_colorful_path: return "sdcolorful";
    case Problem::rainbow_path: return "rainbow";
    case Problem::ec_temp_path: return "ectemppath";
    case Problem::ec_path_motif: return "ecpathmotif";
    case Problem::vc_path_motif: return "vcpathmotif";
    case Problem::vc_colorful_path: return "vccolorfulpath";
  }
  return "?";
}

std::optional<Problem> problem_from_name(const std::string& name) {
  for (Problem p :
       {Problem::k_temp_path, Problem::path_motif, Problem::colorful_path,
        Problem::sd_colorful_path, Problem::rainbow_path, Problem::ec_temp_path,
        Problem::ec_path_motif, Problem::vc_path_motif,
        Problem::vc_colorful_path})
    if (name == problem_name(p)) return p;
  return std::nullopt;
}

EffectiveInstance effective_instance(const TemporalGraph& g,
                                     const VertexColoring& coloring,
                                     const SolveRequest& req) {
  Prepared prep;
  make_effective(g, coloring, req, prep);
  return {std::move(prep.query), std::move(prep.coloring), prep.anchor, prep.k};
}

SolveReport solve(const TemporalGraph& g, const VertexColoring& coloring,
                  const SolveRequest& req, SolveMode mode) {
  if (req.wildcard_max > 0) return wildcard_driver(g, coloring, req, mode);
  if (req.problem == Problem::rainbow_path)
    return rainbow_driver(g, coloring, req, mode);
  return solve_single(g, coloring, req, mode);
}

SolveReport decide(const TemporalGraph& g, const VertexColoring& coloring,
                   const SolveRequest& req) {
  return solve(g, coloring, req, SolveMode::decide);
}

SolveReport find_optimum_timestamp(const TemporalGraph& g,
                                   const VertexColoring& coloring,
                                   const SolveRequest& req) {
  return solve(g, coloring, req, SolveMode::optimum);
}

SolveReport extract_localized(const TemporalGraph& g,
                              const VertexColoring& coloring,
                              const SolveRequest& req, bool optimize) {
  SolveRequest r = req;
  r.extraction = ExtractionStrategy::localized;
  return solve(g, coloring, r,
               optimize ? SolveMode::extract_optimum : SolveMode::extract);
}

SolveReport extract_self_reducible(const TemporalGraph& g,
                                   const VertexColoring& coloring,
                                   const SolveRequest& req, bool optimize) {
  SolveRequest r = req;
  r.extraction = ExtractionStrategy::self_reducible;
  return solve(g, coloring, r,
               optimize ? SolveMode::extract_optimum : SolveMode::extract);
}

SolveReport decide_sd_colorful(const TemporalGraph& g,
                               const VertexColoring& coloring, Vertex source,
                               Vertex dest, int k, const SieveConfig& config) {
  SolveRequest req;
  req.problem = Problem::sd_colorful_path;
  req.query = MotifQuery::size_only(k);
  req.source = source;
  req.dest = dest;
  req.config = config;
  return decide(g, coloring, req);
}

SolveReport decide_rainbow(const TemporalGraph& g,
                           const VertexColoring& coloring, int k,
                           const SieveConfig& config) {
  SolveRequest req;
  req.problem = Problem::rainbow_path;
  req.query = MotifQuery::size_only(k);
  req.config = config;
  return decide(g, coloring, req);
}

SolveReport vc_colorful_dp(const TemporalGraph& g,
                           const VertexColoring& coloring,
                           const std::vector<Color>& order, Timestamp max_ts) {
  SolveRequest req;
  req.problem = Problem::vc_colorful_path;
  req.query = MotifQuery::from_order(order);
  req.preprocess = PreprocessLevel::none;
  if (max_ts <= 0 || max_ts > g.t()) max_ts = g.t();
  SolveReport r;
  Prepared prep;
  make_effective(g, coloring, req, prep);
  if (prep.k > g.n()) {
    r.certain = true;
    r.note = "k exceeds vertex count";
    return r;
  }
  prep.graph = g;
  ProbeResult pr = dp_probe(g, coloring, order, max_ts);
  r.decision = pr.out.global_nonzero;
  r.certain = true;
  r.flagged = pr.out.flagged;
  r.checksum = pr.out.checksum;
  r.oracle_calls = 1;
  return r;
}

SolveReport solve_with_wildcards(const TemporalGraph& g,
                                 const VertexColoring& coloring,
                                 const SolveRequest& req, int k_max) {
  SolveRequest r = req;
  r.wildcard_max = k_max;
  return solve(g, coloring, r, SolveMode::decide);
}

PreprocessResult preprocess(const TemporalGraph& g,
                            const VertexColoring& coloring,
                            const SolveRequest& req, PreprocessLevel level) {
  SolveRequest sub = req;
  sub.preprocess = level;
  Prepared prep;
  make_effective(g, coloring, sub, prep);

  PreprocessResult out;
  out.kept = preprocess_mask(g, prep, level, out.peak_field_words);
  out.graph = restrict_to(g, out.kept, g.t());
  out.kept_count =
      static_cast<int>(std::count(out.kept.begin(), out.kept.end(), true));
  return out;
}

}  // namespace tsieve
