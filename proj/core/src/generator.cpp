#include "tsieve/generator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "tsieve/gf.hpp"

namespace tsieve {

namespace {

// Sequential deterministic RNG (splitmix64 walk); fixed-width ops only so
// output is identical on every platform.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // Uniform in [0, range); multiply-shift, no modulo bias to speak of.
  std::uint64_t bounded(std::uint64_t range) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * range) >> 64);
  }
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[bounded(i)]);
  }
};

std::uint64_t pair_key(Vertex a, Vertex b, bool directed) {
  if (!directed && a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

// Configuration model: shuffle the stub multiset, pair consecutively, then
// repair self-loops and duplicate pairs by re-pairing the bad stubs for a
// bounded number of rounds. Residual bad pairs are dropped and reported.
std::vector<std::pair<Vertex, Vertex>> pair_stubs(
    const std::vector<Vertex>& degrees, bool directed, Rng& rng,
    int& dropped_pairs) {
  std::vector<Vertex> stubs;
  for (Vertex u = 0; u < static_cast<Vertex>(degrees.size()); ++u)
    stubs.insert(stubs.end(), degrees[u], u);
  if (stubs.size() % 2 != 0)
    throw std::invalid_argument("degree sum must be even");
  rng.shuffle(stubs);

  std::vector<std::pair<Vertex, Vertex>> good;
  std::set<std::uint64_t> seen;
  std::vector<Vertex> bad = std::move(stubs);
  const int max_rounds = 200;
  for (int round = 0; round < max_rounds && bad.size() >= 2; ++round) {
    if (round > 0) rng.shuffle(bad);
    std::vector<Vertex> next_bad;
    for (std::size_t i = 0; i + 1 < bad.size(); i += 2) {
      Vertex a = bad[i], b = bad[i + 1];
      if (a == b || !seen.insert(pair_key(a, b, directed)).second) {
        next_bad.push_back(a);
        next_bad.push_back(b);
        continue;
      }
      good.emplace_back(a, b);
    }
    bad = std::move(next_bad);
  }
  dropped_pairs = static_cast<int>(bad.size() / 2);
  return good;
}

GenResult assemble(const std::vector<Vertex>& degrees,
                   const GeneratorSpec& spec) {
  Rng rng(spec.seed);
  GenResult out;
  auto pairs = pair_stubs(degrees, spec.directed, rng, out.dropped_pairs);

  std::vector<TemporalEdge> edges;
  edges.reserve(pairs.size());
  for (auto [u, v] : pairs) {
    Timestamp ts = static_cast<Timestamp>(
        1 + rng.bounded(static_cast<std::uint64_t>(spec.t)));
    edges.push_back({u, v, ts, 1});
  }
  out.graph = TemporalGraph::build(spec.n, std::move(edges), spec.directed,
                                   spec.t);

  std::vector<Color> colors(spec.n);
  for (Vertex u = 0; u < spec.n; ++u)
    colors[u] = static_cast<Color>(
        1 + rng.bounded(static_cast<std::uint64_t>(spec.colors)));
  out.coloring = VertexColoring(std::move(colors), spec.colors);
  return out;
}

}  // namespace

GenResult gen_regular(const GeneratorSpec& spec) {
  if (spec.n < 2 || spec.d < 1 || spec.d >= spec.n)
    throw std::invalid_argument("regular family needs 1 <= d < n");
  if ((static_cast<std::int64_t>(spec.n) * spec.d) % 2 != 0)
    throw std::invalid_argument("d*n must be even");
  if (spec.t < 1 || spec.colors < 1)
    throw std::invalid_argument("t and colors must be positive");
  std::vector<Vertex> degrees(spec.n, spec.d);
  return assemble(degrees, spec);
}

GenResult gen_powerlaw(const GeneratorSpec& spec) {
  if (spec.n < 2 || spec.D < 1 || spec.w < 1 || spec.alpha >= 0)
    throw std::invalid_argument("powerlaw family needs D >= 1, w >= 1, alpha < 0");
  if (spec.t < 1 || spec.colors < 1)
    throw std::invalid_argument("t and colors must be positive");

  const std::int64_t target = static_cast<std::int64_t>(spec.D) * spec.n;

  // Support of w geometrically spaced degrees in [d_min .. d_max] with
  // frequencies ~ d^alpha scaled to n vertices. The bounds are searched so
  // the degree sum lands near D*n; a final repair pass makes the sum exact
  // up to parity.
  auto build_counts = [&](double d_min, double d_max,
                          std::vector<Vertex>& support,
                          std::vector<std::int64_t>& counts) -> std::int64_t {
    support.clear();
    counts.clear();
    std::vector<Vertex> ladder;
    for (int j = 0; j < spec.w; ++j) {
      double frac = spec.w == 1 ? 0.0 : static_cast<double>(j) / (spec.w - 1);
      double dj = d_min * std::pow(d_max / d_min, frac);
      Vertex v = static_cast<Vertex>(std::llround(dj));
      v = std::clamp<Vertex>(v, 1, spec.n - 1);
      if (ladder.empty() || ladder.back() != v) ladder.push_back(v);
    }
    double z = 0;
    for (Vertex dv : ladder) z += std::pow(static_cast<double>(dv), spec.alpha);
    std::int64_t assigned = 0, sum = 0;
    std::vector<double> remainders(ladder.size());
    std::vector<std::int64_t> cnt(ladder.size());
    for (std::size_t i = 0; i < ladder.size(); ++i) {
      double ideal =
          spec.n * std::pow(static_cast<double>(ladder[i]), spec.alpha) / z;
      cnt[i] = static_cast<std::int64_t>(ideal);
      remainders[i] = ideal - static_cast<double>(cnt[i]);
      assigned += cnt[i];
    }
    std::vector<std::size_t> order(ladder.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (remainders[a] != remainders[b]) return remainders[a] > remainders[b];
      return a < b;
    });
    for (std::size_t i = 0; assigned < spec.n && i < order.size(); ++i, ++assigned)
      ++cnt[order[i % order.size()]];
    while (assigned > spec.n) {
      for (std::size_t i = 0; i < cnt.size() && assigned > spec.n; ++i)
        if (cnt[i] > 0) {
          --cnt[i];
          --assigned;
        }
    }
    for (std::size_t i = 0; i < ladder.size(); ++i) {
      support.push_back(ladder[i]);
      counts.push_back(cnt[i]);
      sum += cnt[i] * ladder[i];
    }
    return sum;
  };

  // Outer search on d_max (d_min = 1), inner fallback raising d_min when the
  // target is unreachable with unit minimum degree.
  std::vector<Vertex> support;
  std::vector<std::int64_t> counts;
  double best_dmin = 1, best_dmax = 2;
  {
    double lo = 1.001, hi = static_cast<double>(spec.n - 1);
    for (int it = 0; it < 60; ++it) {
      double mid = std::sqrt(lo * hi);
      std::int64_t s = build_counts(1.0, mid, support, counts);
      if (s < target)
        lo = mid;
      else
        hi = mid;
    }
    best_dmax = hi;
    if (build_counts(1.0, best_dmax, support, counts) < target) {
      double lo2 = 1.0, hi2 = static_cast<double>(spec.n - 1);
      for (int it = 0; it < 60; ++it) {
        double mid = std::sqrt(lo2 * hi2);
        std::int64_t s =
            build_counts(mid, static_cast<double>(spec.n - 1), support, counts);
        if (s < target)
          lo2 = mid;
        else
          hi2 = mid;
      }
      best_dmin = hi2;
      best_dmax = static_cast<double>(spec.n - 1);
    } else {
      best_dmin = 1.0;
    }
  }
  build_counts(best_dmin, best_dmax, support, counts);

  std::vector<Vertex> degrees;
  degrees.reserve(spec.n);
  for (std::size_t i = 0; i < support.size(); ++i)
    degrees.insert(degrees.end(), counts[i], support[i]);
  while (static_cast<int>(degrees.size()) < spec.n) degrees.push_back(1);
  degrees.resize(spec.n);

  // Exact-sum repair: nudge individual degrees until the sum hits the target
  // (down to parity), keeping every degree in [1, n-1].
  std::int64_t sum = 0;
  for (Vertex dv : degrees) sum += dv;
  std::int64_t want = target;
  if ((want - sum) % 2 != 0) want -= 1;
  Rng rng(spec.seed ^ 0x5eedu);
  int guard = 0;
  while (sum != want && guard++ < spec.n * 64) {
    std::size_t i = rng.bounded(degrees.size());
    if (sum < want && degrees[i] < spec.n - 1) {
      ++degrees[i];
      ++sum;
    } else if (sum > want && degrees[i] > 1) {
      --degrees[i];
      --sum;
    }
  }
  if (sum % 2 != 0) {
    for (auto& dv : degrees)
      if (dv > 1) {
        --dv;
        --sum;
        break;
      }
  }
  return assemble(degrees, spec);
}

GenResult plant_matches(const TemporalGraph& g, const VertexColoring& coloring,
                        const MotifQuery& query, int count,
                        std::uint64_t seed) {
  const int k = query.k;
  if (k < 1) throw std::invalid_argument("query size must be positive");
  if (static_cast<std::int64_t>(count) * k > g.n())
    throw std::invalid_argument("not enough vertices for disjoint plants");
  if (g.t() < k - 1)
    throw std::invalid_argument("t too small for a strictly increasing chain");

  Rng rng(seed);
  std::vector<Vertex> perm(g.n());
  for (Vertex u = 0; u < g.n(); ++u) perm[u] = u;
  rng.shuffle(perm);

  // A fixed realization of the query along a chain: ordered tuples use their
  // order, multisets are laid out in ascending color order.
  std::vector<Color> chain_colors;
  if (query.kind == QueryKind::ordered_colors) {
    chain_colors = query.order;
  } else {
    for (auto& [c, mu] : query.multiset)
      chain_colors.insert(chain_colors.end(), mu, c);
  }
  if (static_cast<int>(chain_colors.size()) != k)
    throw std::invalid_argument("query does not span k colors");

  std::vector<Color> colors = coloring.primaries();
  std::vector<TemporalEdge> edges = g.edges();
  std::map<std::uint64_t, std::size_t> by_pair;
  for (std::size_t i = 0; i < edges.size(); ++i)
    by_pair[pair_key(edges[i].u, edges[i].v, g.directed())] = i;

  GenResult out;
  for (int c = 0; c < count; ++c) {
    std::vector<Vertex> chain(perm.begin() + c * k, perm.begin() + (c + 1) * k);
    // k-1 distinct timestamps, drawn uniformly then sorted.
    std::set<Timestamp> stamps;
    while (static_cast<int>(stamps.size()) < k - 1)
      stamps.insert(static_cast<Timestamp>(
          1 + rng.bounded(static_cast<std::uint64_t>(g.t()))));
    std::vector<Timestamp> ts(stamps.begin(), stamps.end());

    TemporalPath witness;
    witness.vertices = chain;
    for (int i = 0; i < k; ++i) colors[chain[i]] = chain_colors[i];
    if (query.has_times()) ts = query.times;
    for (int i = 0; i + 1 < k; ++i) {
      TemporalEdge e{chain[i], chain[i + 1], ts[i], 1};
      auto it = by_pair.find(pair_key(e.u, e.v, g.directed()));
      if (it != by_pair.end()) {
        edges[it->second].ts = ts[i];  // retime the existing pair
        witness.edges.push_back(edges[it->second]);
      } else {
        by_pair[pair_key(e.u, e.v, g.directed())] = edges.size();
        edges.push_back(e);
        witness.edges.push_back(e);
      }
    }
    out.planted.push_back(std::move(witness));
  }

  Color q = coloring.q();
  for (Color c : chain_colors) q = std::max(q, c);
  out.graph = TemporalGraph::build(g.n(), std::move(edges), g.directed(), g.t());
  out.coloring = VertexColoring(std::move(colors), q);
  return out;
}

}  // namespace tsieve
