#include "tsieve/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>

#include "tsieve/gf.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tsieve {

namespace {

using Clock = std::chrono::steady_clock;

std::int32_t eps_eff(const TemporalEdge& e, EdgeModel m) {
  return (m == EdgeModel::transition_only || m == EdgeModel::transition_delay)
             ? e.eps
             : 1;
}
std::int32_t delta_eff(const TemporalGraph& g, Vertex v, EdgeModel m) {
  return (m == EdgeModel::delay_only || m == EdgeModel::transition_delay)
             ? g.delay(v)
             : 1;
}

struct LeafCheck {
  const VertexColoring* coloring = nullptr;
  const MotifQuery* query = nullptr;
  Vertex source = -1, dest = -1;
  bool rainbow = false;  // all colors pairwise distinct instead of a multiset

  bool accepts(const std::vector<Vertex>& path) const {
    if (source >= 0 && path.front() != source) return false;
    if (dest >= 0 && path.back() != dest) return false;
    if (rainbow) {
      std::vector<Color> cs;
      cs.reserve(path.size());
      for (Vertex v : path) cs.push_back(coloring->primary(v));
      std::sort(cs.begin(), cs.end());
      return std::adjacent_find(cs.begin(), cs.end()) == cs.end();
    }
    if (query->kind == QueryKind::ordered_colors) {
      for (std::size_t i = 0; i < path.size(); ++i)
        if (!coloring->has_color(path[i], query->order[i])) return false;
      return true;
    }
    // Multiset: consume primaries first, the remainder must be covered by
    // exactly the queried number of wildcards.
    std::map<Color, int> need = query->multiset;
    int spare = 0;
    for (Vertex v : path) {
      Color c = coloring->primary(v);
      auto it = need.find(c);
      if (it != need.end() && it->second > 0) {
        if (--it->second == 0) need.erase(it);
      } else if (coloring->wildcard_active()) {
        ++spare;
      } else {
        return false;
      }
    }
    Color wc = coloring->wildcard_color();
    for (auto& [c, cnt] : need)
      if (c != wc && cnt > 0) return false;
    int wild_need = need.count(wc) ? need.at(wc) : 0;
    return wild_need == spare;
  }
};

struct StartResult {
  Timestamp best_ts = -1;
  TemporalPath witness;
};

struct DfsDriver {
  const TemporalGraph& g;
  const LeafCheck& check;
  const MotifQuery& query;
  EdgeModel model;
  int k;
  std::int64_t node_budget;
  Clock::time_point deadline;

  std::vector<char> used;
  std::vector<Vertex> path;
  std::vector<TemporalEdge> path_edges;
  std::int64_t expanded = 0;
  bool out_of_budget = false;
  StartResult best;

  DfsDriver(const TemporalGraph& g_, const LeafCheck& c_, const MotifQuery& q_,
            EdgeModel m_, int k_, std::int64_t budget, Clock::time_point dl)
      : g(g_), check(c_), query(q_), model(m_), k(k_), node_budget(budget),
        deadline(dl) {
    used.assign(g.n(), 0);
  }

  void run_from(Vertex start) {
    used[start] = 1;
    path.push_back(start);
    descend(2);
    path.pop_back();
    used[start] = 0;
  }

  void descend(int pos) {
    if (out_of_budget) return;
    if (++expanded > node_budget ||
        (expanded % 1024 == 0 && Clock::now() > deadline)) {
      out_of_budget = true;
      return;
    }
    if (pos > k) {
      if (!check.accepts(path)) return;
      Timestamp m = 0;
      for (const TemporalEdge& e : path_edges) m = std::max(m, e.ts);
      if (best.best_ts < 0 || m < best.best_ts) {
        best.best_ts = m;
        best.witness.vertices = path;
        best.witness.edges = path_edges;
      }
      return;
    }
    Vertex x = path.back();
    Timestamp ts_lo = 1;
    if (!path_edges.empty())
      ts_lo = path_edges.back().ts + eps_eff(path_edges.back(), model) +
              delta_eff(g, x, model) - 1;
    auto arcs = g.out_arcs(x);
    auto it = std::lower_bound(
        arcs.begin(), arcs.end(), ts_lo,
        [](const Incidence& a, Timestamp t) { return a.ts < t; });
    for (; it != arcs.end() && !out_of_budget; ++it) {
      if (used[it->other]) continue;
      const TemporalEdge& e = g.edge(it->edge);
      if (query.has_times() && it->ts != query.times[pos - 2]) continue;
      if (it->ts + eps_eff(e, model) - 1 > g.t()) continue;
      used[it->other] = 1;
      path.push_back(it->other);
      path_edges.push_back(e);
      descend(pos + 1);
      path_edges.pop_back();
      path.pop_back();
      used[it->other] = 0;
    }
  }
};

}  // namespace

OracleReport exhaustive_search(const TemporalGraph& g,
                               const VertexColoring& coloring,
                               const SolveRequest& req,
                               const OracleBudget& budget) {
  OracleReport rep;
  const bool rainbow = req.problem == Problem::rainbow_path;

  MotifQuery query;
  VertexColoring eff_coloring = coloring;
  AnchorSpec anchor;
  TemporalGraph filtered;
  const TemporalGraph* work = &g;
  int k = 0;

  if (rainbow) {
    query = MotifQuery::size_only(req.query.k);
    k = req.query.k;
  } else {
    EffectiveInstance eff = effective_instance(g, coloring, req);
    query = std::move(eff.query);
    eff_coloring = std::move(eff.coloring);
    anchor = eff.anchor;
    k = eff.k;
    if (!query.multiset.empty()) {
      // Remove vertices that cannot contribute any queried color.
      std::vector<bool> keep(g.n(), false);
      for (Vertex u = 0; u < g.n(); ++u)
        for (auto& [c, mu] : query.multiset)
          if (eff_coloring.has_color(u, c)) {
            keep[u] = true;
            break;
          }
      filtered = restrict_to(g, keep, g.t());
      work = &filtered;
    }
  }
  if (k > g.n() || k < 1) return rep;

  LeafCheck check{&eff_coloring, &query, anchor.source, anchor.sink, rainbow};
  auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(
                                         budget.wall_clock_s));

  std::vector<Vertex> starts;
  if (anchor.source >= 0) {
    starts.push_back(anchor.source);
  } else {
    for (Vertex u = 0; u < work->n(); ++u) starts.push_back(u);
  }

  std::vector<StartResult> results(starts.size());
  std::atomic<std::int64_t> nodes{0};
  std::atomic<bool> over{false};
  const int threads = std::max(1, req.config.threads);

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::size_t s = 0; s < starts.size(); ++s) {
    if (over.load(std::memory_order_relaxed)) continue;
    std::int64_t remaining =
        budget.max_nodes_expanded - nodes.load(std::memory_order_relaxed);
    if (remaining <= 0) {
      over.store(true, std::memory_order_relaxed);
      continue;
    }
    DfsDriver drv(*work, check, query, req.config.edge_model, k, remaining,
                  deadline);
    drv.run_from(starts[s]);
    nodes.fetch_add(drv.expanded, std::memory_order_relaxed);
    if (drv.out_of_budget) over.store(true, std::memory_order_relaxed);
    results[s] = std::move(drv.best);
  }

  rep.nodes_expanded = nodes.load();
  rep.inconclusive = over.load();
  for (const StartResult& sr : results) {
    if (sr.best_ts < 0) continue;
    if (rep.optimum_ts < 0 || sr.best_ts < rep.optimum_ts) {
      rep.optimum_ts = sr.best_ts;
      rep.witness = sr.witness;
    }
  }
  rep.decision = rep.optimum_ts >= 0;
  if (rep.decision) rep.inconclusive = false;
  return rep;
}

OracleReport random_walk_search(const TemporalGraph& g,
                                const VertexColoring& coloring,
                                const SolveRequest& req,
                                const OracleBudget& budget) {
  OracleReport rep;
  const bool rainbow = req.problem == Problem::rainbow_path;
  MotifQuery query;
  VertexColoring eff_coloring = coloring;
  AnchorSpec anchor;
  int k;
  if (rainbow) {
    query = MotifQuery::size_only(req.query.k);
    k = req.query.k;
  } else {
    EffectiveInstance eff = effective_instance(g, coloring, req);
    query = std::move(eff.query);
    eff_coloring = std::move(eff.coloring);
    anchor = eff.anchor;
    k = eff.k;
  }
  if (g.n() == 0 || k < 1 || k > g.n()) return rep;

  LeafCheck check{&eff_coloring, &query, anchor.source, anchor.sink, rainbow};
  const EdgeModel model = req.config.edge_model;
  auto bounded = [](std::uint64_t r, std::uint64_t range) -> std::uint64_t {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(r) * range) >> 64);
  };

  for (std::int64_t iter = 0; iter < budget.max_walk_iterations; ++iter) {
    ++rep.iterations_used;
    Vertex at = static_cast<Vertex>(
        bounded(gf::draw64(req.config.seed, gf::Role::walk,
                           static_cast<std::uint64_t>(iter), 0, 0),
                g.n()));
    std::vector<Vertex> path{at};
    std::vector<TemporalEdge> edges;
    bool dead = false;
    for (int step = 1; step < k; ++step) {
      Timestamp ts_lo = 1;
      if (!edges.empty())
        ts_lo = edges.back().ts + eps_eff(edges.back(), model) +
                delta_eff(g, at, model) - 1;
      auto arcs = g.out_arcs(at);
      auto it = std::lower_bound(
          arcs.begin(), arcs.end(), ts_lo,
          [](const Incidence& a, Timestamp t) { return a.ts < t; });
      std::size_t options = static_cast<std::size_t>(arcs.end() - it);
      if (options == 0) {
        dead = true;
        break;
      }
      std::size_t pick = bounded(
          gf::draw64(req.config.seed, gf::Role::walk,
                     static_cast<std::uint64_t>(iter),
                     static_cast<std::uint64_t>(step), 1),
          options);
      const Incidence& inc = *(it + pick);
      edges.push_back(g.edge(inc.edge));
      at = inc.other;
      path.push_back(at);
    }
    if (dead) continue;

    std::vector<Vertex> sorted = path;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      continue;  // a walk, not a path
    if (!check.accepts(path)) continue;

    Timestamp m = 0;
    for (const TemporalEdge& e : edges) m = std::max(m, e.ts);
    if (rep.optimum_ts < 0 || m < rep.optimum_ts) {
      rep.optimum_ts = m;
      TemporalPath w;
      w.vertices = path;
      w.edges = edges;
      // Accept only validated witnesses.
      if (validate_path(g, eff_coloring, w, query, model, anchor.source,
                        anchor.sink)) {
        rep.witness = std::move(w);
        rep.decision = true;
      }
    }
  }
  if (!rep.decision) rep.inconclusive = true;
  return rep;
}

}  // namespace tsieve
