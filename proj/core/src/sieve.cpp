#include "tsieve/sieve.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "tsieve/gf.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tsieve {

namespace {

using gf::Role;

constexpr int kMaxK = 30;
constexpr int kMaxLanes = 256;

void validate_config(const SieveConfig& cfg) {
  if (cfg.field_bits != 8 && cfg.field_bits != 16 && cfg.field_bits != 32 &&
      cfg.field_bits != 64)
    throw std::invalid_argument("field_bits must be 8, 16, 32 or 64");
  if (cfg.lane_width < 1 || cfg.lane_width > kMaxLanes ||
      !std::has_single_bit(static_cast<unsigned>(cfg.lane_width)))
    throw std::invalid_argument("lane_width must be a power of two in [1,256]");
  if (cfg.threads < 1) throw std::invalid_argument("threads must be >= 1");
}

std::uint64_t fold_checksum(const std::vector<std::uint64_t>& acc) {
  std::uint64_t h = 1469598103934665603ull;
  auto eat = [&](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  for (std::size_t u = 0; u < acc.size(); ++u)
    if (acc[u]) {
      eat(u);
      eat(acc[u]);
    }
  return h;
}

// Evaluation state shared by the engine variants: the cached z_{u,j} values
// and the per-block z^A table.
template <gf::FieldWord Word>
struct LaneState {
  int n = 0;
  int k = 0;
  int W = 0;               // lanes per block (clamped to 2^k)
  std::uint64_t lanes = 0;  // 2^k
  std::uint64_t blocks = 0;
  std::uint64_t seed = 0;

  std::vector<Word> zj;  // n x k: z_{u,j}
  std::vector<Word> z;   // n x W: z_u^A for the current block

  std::uint64_t words() const {
    return static_cast<std::uint64_t>(zj.size()) + z.size();
  }

  void init(int n_, int k_, const SieveConfig& cfg) {
    n = n_;
    k = k_;
    if (k < 1 || k > kMaxK) throw std::invalid_argument("k out of range [1,30]");
    seed = cfg.seed;
    lanes = std::uint64_t{1} << k;
    W = static_cast<int>(
        std::min<std::uint64_t>(lanes, static_cast<std::uint64_t>(cfg.lane_width)));
    blocks = lanes / W;
    zj.assign(static_cast<std::size_t>(n) * k, 0);
    z.assign(static_cast<std::size_t>(n) * W, 0);
  }

  // Constrained substitution: z_{u,j} = sum_{d in S(u)} v_{u,d} w_{d,j}.
  void build_zj_constrained(const ShadeAssignment& sh, int threads) {
    std::vector<Word> wtab(static_cast<std::size_t>(k) * k);
    for (int d = 1; d <= k; ++d)
      for (int j = 1; j <= k; ++j)
        wtab[(d - 1) * k + (j - 1)] = gf::draw_nonzero<Word>(
            seed, Role::shade_w, static_cast<std::uint64_t>(d),
            static_cast<std::uint64_t>(j), 0);
#pragma omp parallel for schedule(static) num_threads(threads)
    for (int u = 0; u < n; ++u) {
      Word* row = zj.data() + static_cast<std::size_t>(u) * k;
      for (std::int32_t d : sh.shades_of(u)) {
        Word v = gf::draw_nonzero<Word>(seed, Role::shade_v,
                                        static_cast<std::uint64_t>(u),
                                        static_cast<std::uint64_t>(d), 0);
        const Word* wrow = wtab.data() + static_cast<std::size_t>(d - 1) * k;
        for (int j = 0; j < k; ++j) row[j] ^= gf::mul(v, wrow[j]);
      }
    }
  }

  // Plain substitution with per-position labels: z_{u,j} drawn directly.
  void build_zj_positional(int threads) {
#pragma omp parallel for schedule(static) num_threads(threads)
    for (int u = 0; u < n; ++u) {
      Word* row = zj.data() + static_cast<std::size_t>(u) * k;
      for (int j = 0; j < k; ++j)
        row[j] = gf::draw_nonzero<Word>(seed, Role::label_z,
                                        static_cast<std::uint64_t>(u),
                                        static_cast<std::uint64_t>(j + 1), 0);
    }
  }

  // z_u^A = sum_{j in A} z_{u,j} for the W subsets of one block.
  void fill_block(std::uint64_t block, int threads) {
    std::uint64_t base = block * W;
#pragma omp parallel for schedule(static) num_threads(threads)
    for (int u = 0; u < n; ++u) {
      const Word* row = zj.data() + static_cast<std::size_t>(u) * k;
      Word* out = z.data() + static_cast<std::size_t>(u) * W;
      for (int w = 0; w < W; ++w) {
        std::uint64_t subset = base + w;
        Word acc = 0;
        while (subset) {
          int j = std::countr_zero(subset);
          subset &= subset - 1;
          acc ^= row[j];
        }
        out[w] = acc;
      }
    }
  }
};

template <gf::FieldWord Word>
SieveOutcome finalize(const std::vector<Word>& acc, int k,
                      const SieveConfig& cfg, std::uint64_t peak_words,
                      Vertex sink = -1) {
  SieveOutcome out;
  out.fn_bound = false_negative_bound(k, cfg.field_bits);
  out.peak_field_words = peak_words;
  out.accumulators.assign(acc.size(), 0);
  for (std::size_t u = 0; u < acc.size(); ++u) {
    if (sink >= 0 && static_cast<Vertex>(u) != sink) continue;
    out.accumulators[u] = static_cast<std::uint64_t>(acc[u]);
    if (acc[u]) out.flagged.push_back(static_cast<Vertex>(u));
  }
  if (cfg.localize) {
    out.global_nonzero = !out.flagged.empty();
  } else {
    Word total = 0;
    for (std::size_t u = 0; u < acc.size(); ++u)
      if (sink < 0 || static_cast<Vertex>(u) == sink) total ^= acc[u];
    out.global_nonzero = total != 0;
  }
  out.checksum = fold_checksum(out.accumulators);
  return out;
}

void check_memory(std::uint64_t words, const SieveConfig& cfg) {
  if (words > cfg.memory_cap_words)
    throw std::runtime_error("sieve memory cap exceeded: needs " +
                             std::to_string(words) + " field words, cap " +
                             std::to_string(cfg.memory_cap_words));
}

// --- Temporal engine --------------------------------------------------------

template <gf::FieldWord Word>
SieveOutcome temporal_impl(const TemporalGraph& g, int k, Timestamp max_ts,
                           const ShadeAssignment& shades,
                           const SieveConfig& cfg, const AnchorSpec& anchor) {
  const int n = g.n();
  const int T = cfg.threads;
  LaneState<Word> st;
  st.init(n, k, cfg);
  const int W = st.W;

  const bool use_eps =
      cfg.edge_model == EdgeModel::transition_only ||
      cfg.edge_model == EdgeModel::transition_delay;
  const bool use_delay =
      cfg.edge_model == EdgeModel::delay_only ||
      cfg.edge_model == EdgeModel::transition_delay;
  const bool instant = !use_eps && !use_delay;

  const std::size_t row_words = static_cast<std::size_t>(n) * W;
  const std::size_t layer_words = row_words * (static_cast<std::size_t>(max_ts) + 1);
  const std::uint64_t total_words =
      2 * layer_words + st.words() + static_cast<std::uint64_t>(n);
  check_memory(total_words, cfg);

  st.build_zj_constrained(shades, T);

  std::vector<Word> prev(layer_words), cur(layer_words);
  std::vector<Word> acc(n, 0);

  for (std::uint64_t block = 0; block < st.blocks; ++block) {
    st.fill_block(block, T);
    const Word* z = st.z.data();

    if (k == 1) {
      // P_{u,1,i} = x_u; the subset sum over the block is the readout.
#pragma omp parallel for schedule(static) num_threads(T)
      for (int u = 0; u < n; ++u) {
        if (anchor.source >= 0 && u != anchor.source) continue;
        Word s = 0;
        for (int w = 0; w < W; ++w) s ^= z[static_cast<std::size_t>(u) * W + w];
        acc[u] ^= s;
      }
      continue;
    }

    for (int ell = 2; ell <= k; ++ell) {
      std::fill(cur.begin(), cur.end(), Word{0});
      const bool from_base = (ell == 2);
      const Word* prv = prev.data();

#pragma omp parallel num_threads(T)
      {
        std::array<Word, kMaxLanes> tmp;
        for (Timestamp i = 1; i <= max_ts; ++i) {
          Word* row_i = cur.data() + static_cast<std::size_t>(i) * row_words;
          const Word* row_p =
              cur.data() + static_cast<std::size_t>(i - 1) * row_words;
          // Stay term: inherit everything that ended by time i-1. Deposits
          // from earlier timestamps already sit in row i and are preserved.
#pragma omp for schedule(static)
          for (std::size_t x = 0; x < row_words; ++x) row_i[x] ^= row_p[x];

          auto runs = g.runs_at(i);
          if (instant) {
#pragma omp for schedule(static)
            for (std::size_t r = 0; r < runs.size(); ++r) {
              const ArcRun& run = runs[r];
              const Vertex u = run.head;
              for (int w = 0; w < W; ++w) tmp[w] = 0;
              for (std::int32_t a = run.begin; a < run.end; ++a) {
                const Arc& arc = g.arc(a);
                if (from_base && anchor.source >= 0 && arc.tail != anchor.source)
                  continue;
                const Word y = gf::draw_nonzero<Word>(
                    st.seed, Role::edge_y, static_cast<std::uint64_t>(arc.edge),
                    static_cast<std::uint64_t>(ell - 1), 0);
                const Word* src =
                    from_base
                        ? z + static_cast<std::size_t>(arc.tail) * W
                        : prv + static_cast<std::size_t>(i - 1) * row_words +
                              static_cast<std::size_t>(arc.tail) * W;
                for (int w = 0; w < W; ++w) tmp[w] ^= gf::mul(y, src[w]);
              }
              const Word* zu = z + static_cast<std::size_t>(u) * W;
              Word* out = row_i + static_cast<std::size_t>(u) * W;
              for (int w = 0; w < W; ++w) out[w] ^= gf::mul(zu[w], tmp[w]);
            }
          } else {
            // Delay/transition models: an arc departing at i reads the
            // neighbor at i - delta(tail) and lands at slot i + eps - 1.
#pragma omp for schedule(static)
            for (std::size_t r = 0; r < runs.size(); ++r) {
              const ArcRun& run = runs[r];
              const Vertex u = run.head;
              const Word* zu = z + static_cast<std::size_t>(u) * W;
              for (std::int32_t a = run.begin; a < run.end; ++a) {
                const Arc& arc = g.arc(a);
                if (from_base && anchor.source >= 0 && arc.tail != anchor.source)
                  continue;
                const TemporalEdge& e = g.edge(arc.edge);
                const Timestamp slot = i + (use_eps ? e.eps : 1) - 1;
                if (slot > max_ts) continue;
                const Timestamp back = i - (use_delay ? g.delay(arc.tail) : 1);
                const Word* src = nullptr;
                if (from_base) {
                  if (back < 0) continue;
                  src = z + static_cast<std::size_t>(arc.tail) * W;
                } else {
                  if (back < 1) continue;
                  src = prv + static_cast<std::size_t>(back) * row_words +
                        static_cast<std::size_t>(arc.tail) * W;
                }
                const Word y = gf::draw_nonzero<Word>(
                    st.seed, Role::edge_y, static_cast<std::uint64_t>(arc.edge),
                    static_cast<std::uint64_t>(ell - 1), 0);
                Word* out = cur.data() + static_cast<std::size_t>(slot) * row_words +
                            static_cast<std::size_t>(u) * W;
                for (int w = 0; w < W; ++w)
                  out[w] ^= gf::mul(zu[w], gf::mul(y, src[w]));
              }
            }
          }
        }
      }
      std::swap(prev, cur);
    }

    const Word* last = prev.data() + static_cast<std::size_t>(max_ts) * row_words;
#pragma omp parallel for schedule(static) num_threads(T)
    for (int u = 0; u < n; ++u) {
      Word s = 0;
      for (int w = 0; w < W; ++w) s ^= last[static_cast<std::size_t>(u) * W + w];
      acc[u] ^= s;
    }
  }

  return finalize(acc, k, cfg, total_words, anchor.sink);
}

// --- Static engine ----------------------------------------------------------

template <gf::FieldWord Word>
SieveOutcome static_impl(const StaticProjection& gs, int k,
                         const ShadeAssignment& shades, const SieveConfig& cfg) {
  const int n = gs.n();
  const int T = cfg.threads;
  LaneState<Word> st;
  st.init(n, k, cfg);
  const int W = st.W;

  const std::size_t row_words = static_cast<std::size_t>(n) * W;
  const std::uint64_t total_words =
      2 * row_words + st.words() + static_cast<std::uint64_t>(n);
  check_memory(total_words, cfg);

  st.build_zj_constrained(shades, T);

  std::vector<Word> prev(row_words), cur(row_words);
  std::vector<Word> acc(n, 0);
  auto runs = gs.in_runs();

  for (std::uint64_t block = 0; block < st.blocks; ++block) {
    st.fill_block(block, T);
    const Word* z = st.z.data();

    std::copy(z, z + row_words, prev.begin());
    for (int ell = 2; ell <= k; ++ell) {
      std::fill(cur.begin(), cur.end(), Word{0});
#pragma omp parallel num_threads(T)
      {
        std::array<Word, kMaxLanes> tmp;
#pragma omp for schedule(static)
        for (std::size_t r = 0; r < runs.size(); ++r) {
          const ArcRun& run = runs[r];
          for (int w = 0; w < W; ++w) tmp[w] = 0;
          for (std::int32_t a = run.begin; a < run.end; ++a) {
            const Arc& arc = gs.in_arc(a);
            const Word y = gf::draw_nonzero<Word>(
                st.seed, Role::edge_y, static_cast<std::uint64_t>(arc.edge),
                static_cast<std::uint64_t>(ell - 1), 0);
            const Word* src = prev.data() + static_cast<std::size_t>(arc.tail) * W;
            for (int w = 0; w < W; ++w) tmp[w] ^= gf::mul(y, src[w]);
          }
          const Word* zu = z + static_cast<std::size_t>(run.head) * W;
          Word* out = cur.data() + static_cast<std::size_t>(run.head) * W;
          for (int w = 0; w < W; ++w) out[w] = gf::mul(zu[w], tmp[w]);
        }
      }
      std::swap(prev, cur);
    }

#pragma omp parallel for schedule(static) num_threads(T)
    for (int u = 0; u < n; ++u) {
      Word s = 0;
      for (int w = 0; w < W; ++w) s ^= prev[static_cast<std::size_t>(u) * W + w];
      acc[u] ^= s;
    }
  }
  return finalize(acc, k, cfg, total_words);
}

// --- Junction engine --------------------------------------------------------

// R_u = sum_{a+b=k+1} P_{u,a} P'_{u,b}: P is the walks-ending family, P' an
// independent walks-starting family whose base case omits x_u, so a product
// monomial that is x-multilinear spells out a k-vertex path through u.
template <gf::FieldWord Word>
SieveOutcome junction_impl(const StaticProjection& gs, int k,
                           const ShadeAssignment& shades,
                           const SieveConfig& cfg) {
  const int n = gs.n();
  const int T = cfg.threads;
  LaneState<Word> st;
  st.init(n, k, cfg);
  const int W = st.W;

  const std::size_t row_words = static_cast<std::size_t>(n) * W;
  const std::uint64_t total_words =
      (static_cast<std::uint64_t>(k) + 2) * row_words + st.words() +
      static_cast<std::uint64_t>(n);
  check_memory(total_words, cfg);

  st.build_zj_constrained(shades, T);

  std::vector<std::vector<Word>> ending(k + 1);
  for (int a = 1; a <= k; ++a) ending[a].resize(row_words);
  std::vector<Word> sprev(row_words), scur(row_words);
  std::vector<Word> acc(n, 0);

  auto in_runs = gs.in_runs();
  auto out_runs = gs.out_runs();

  for (std::uint64_t block = 0; block < st.blocks; ++block) {
    st.fill_block(block, T);
    const Word* z = st.z.data();

    std::copy(z, z + row_words, ending[1].begin());
    for (int ell = 2; ell <= k; ++ell) {
      std::fill(ending[ell].begin(), ending[ell].end(), Word{0});
#pragma omp parallel num_threads(T)
      {
        std::array<Word, kMaxLanes> tmp;
#pragma omp for schedule(static)
        for (std::size_t r = 0; r < in_runs.size(); ++r) {
          const ArcRun& run = in_runs[r];
          for (int w = 0; w < W; ++w) tmp[w] = 0;
          for (std::int32_t a = run.begin; a < run.end; ++a) {
            const Arc& arc = gs.in_arc(a);
            const Word y = gf::draw_nonzero<Word>(
                st.seed, Role::edge_y, static_cast<std::uint64_t>(arc.edge),
                static_cast<std::uint64_t>(ell - 1), 0);
            const Word* src =
                ending[ell - 1].data() + static_cast<std::size_t>(arc.tail) * W;
            for (int w = 0; w < W; ++w) tmp[w] ^= gf::mul(y, src[w]);
          }
          const Word* zu = z + static_cast<std::size_t>(run.head) * W;
          Word* out = ending[ell].data() + static_cast<std::size_t>(run.head) * W;
          for (int w = 0; w < W; ++w) out[w] = gf::mul(zu[w], tmp[w]);
        }
      }
    }

    // Walks-starting family, evaluated two-layer with the product folded in.
    std::fill(sprev.begin(), sprev.end(), Word{1});
    for (int b = 1; b <= k; ++b) {
      if (b > 1) {
        std::fill(scur.begin(), scur.end(), Word{0});
#pragma omp parallel num_threads(T)
        {
          std::array<Word, kMaxLanes> tmp;
#pragma omp for schedule(static)
          for (std::size_t r = 0; r < out_runs.size(); ++r) {
            const ArcRun& run = out_runs[r];
            for (int w = 0; w < W; ++w) tmp[w] = 0;
            for (std::int32_t a = run.begin; a < run.end; ++a) {
              const Arc& arc = gs.out_arc(a);
              const Word y = gf::draw_nonzero<Word>(
                  st.seed, Role::edge_y2, static_cast<std::uint64_t>(arc.edge),
                  static_cast<std::uint64_t>(b - 1), 0);
              const Word* zv = z + static_cast<std::size_t>(arc.tail) * W;
              const Word* src =
                  sprev.data() + static_cast<std::size_t>(arc.tail) * W;
              for (int w = 0; w < W; ++w)
                tmp[w] ^= gf::mul(y, gf::mul(zv[w], src[w]));
            }
            Word* out = scur.data() + static_cast<std::size_t>(run.head) * W;
            for (int w = 0; w < W; ++w) out[w] = tmp[w];
          }
        }
        std::swap(sprev, scur);
      }
      const std::vector<Word>& end_layer = ending[k + 1 - b];
#pragma omp parallel for schedule(static) num_threads(T)
      for (int u = 0; u < n; ++u) {
        Word s = 0;
        for (int w = 0; w < W; ++w)
          s ^= gf::mul(end_layer[static_cast<std::size_t>(u) * W + w],
                       sprev[static_cast<std::size_t>(u) * W + w]);
        acc[u] ^= s;
      }
    }
  }
  return finalize(acc, k, cfg, total_words);
}

// --- Edge-constrained engine -------------------------------------------------

template <gf::FieldWord Word>
SieveOutcome ec_impl(const TemporalGraph& g, const std::vector<Timestamp>& times,
                     const ShadeAssignment& shades, const SieveConfig& cfg) {
  const int n = g.n();
  const int k = static_cast<int>(times.size()) + 1;
  const int T = cfg.threads;
  LaneState<Word> st;
  st.init(n, k, cfg);
  const int W = st.W;

  const std::size_t row_words = static_cast<std::size_t>(n) * W;
  const std::uint64_t total_words =
      2 * row_words + st.words() + static_cast<std::uint64_t>(n);
  check_memory(total_words, cfg);

  st.build_zj_constrained(shades, T);

  std::vector<Word> prev(row_words), cur(row_words);
  std::vector<Word> acc(n, 0);

  for (std::uint64_t block = 0; block < st.blocks; ++block) {
    st.fill_block(block, T);
    const Word* z = st.z.data();

    std::copy(z, z + row_words, prev.begin());
    for (int ell = 2; ell <= k; ++ell) {
      std::fill(cur.begin(), cur.end(), Word{0});
      auto runs = g.runs_at(times[ell - 2]);
#pragma omp parallel num_threads(T)
      {
        std::array<Word, kMaxLanes> tmp;
#pragma omp for schedule(static)
        for (std::size_t r = 0; r < runs.size(); ++r) {
          const ArcRun& run = runs[r];
          for (int w = 0; w < W; ++w) tmp[w] = 0;
          for (std::int32_t a = run.begin; a < run.end; ++a) {
            const Arc& arc = g.arc(a);
            const Word y = gf::draw_nonzero<Word>(
                st.seed, Role::edge_y, static_cast<std::uint64_t>(arc.edge),
                static_cast<std::uint64_t>(ell - 1), 0);
            const Word* src = prev.data() + static_cast<std::size_t>(arc.tail) * W;
            for (int w = 0; w < W; ++w) tmp[w] ^= gf::mul(y, src[w]);
          }
          const Word* zu = z + static_cast<std::size_t>(run.head) * W;
          Word* out = cur.data() + static_cast<std::size_t>(run.head) * W;
          for (int w = 0; w < W; ++w) out[w] = gf::mul(zu[w], tmp[w]);
        }
      }
      std::swap(prev, cur);
    }

#pragma omp parallel for schedule(static) num_threads(T)
    for (int u = 0; u < n; ++u) {
      Word s = 0;
      for (int w = 0; w < W; ++w) s ^= prev[static_cast<std::size_t>(u) * W + w];
      acc[u] ^= s;
    }
  }
  return finalize(acc, k, cfg, total_words);
}

// --- Vertex-ordered engine ----------------------------------------------------

template <gf::FieldWord Word>
SieveOutcome vc_impl(const TemporalGraph& g, const std::vector<Color>& order,
                     const VertexColoring& coloring, Timestamp max_ts,
                     const SieveConfig& cfg) {
  const int n = g.n();
  const int k = static_cast<int>(order.size());
  const int T = cfg.threads;
  LaneState<Word> st;
  st.init(n, k, cfg);
  const int W = st.W;

  const std::size_t row_words = static_cast<std::size_t>(n) * W;
  const std::size_t layer_words = row_words * (static_cast<std::size_t>(max_ts) + 1);
  const std::uint64_t total_words =
      2 * layer_words + st.words() + static_cast<std::uint64_t>(n);
  check_memory(total_words, cfg);

  st.build_zj_positional(T);

  std::vector<Word> prev(layer_words), cur(layer_words);
  std::vector<Word> acc(n, 0);

  for (std::uint64_t block = 0; block < st.blocks; ++block) {
    st.fill_block(block, T);
    const Word* z = st.z.data();

    if (k == 1) {
#pragma omp parallel for schedule(static) num_threads(T)
      for (int u = 0; u < n; ++u) {
        if (!coloring.has_color(u, order[0])) continue;
        Word s = 0;
        for (int w = 0; w < W; ++w) s ^= z[static_cast<std::size_t>(u) * W + w];
        acc[u] ^= s;
      }
      continue;
    }

    for (int ell = 2; ell <= k; ++ell) {
      std::fill(cur.begin(), cur.end(), Word{0});
      const bool from_base = (ell == 2);
      const Color head_color = order[ell - 1];
      const Color tail_color = order[ell - 2];
      const Word* prv = prev.data();

#pragma omp parallel num_threads(T)
      {
        std::array<Word, kMaxLanes> tmp;
        for (Timestamp i = 1; i <= max_ts; ++i) {
          Word* row_i = cur.data() + static_cast<std::size_t>(i) * row_words;
          const Word* row_p =
              cur.data() + static_cast<std::size_t>(i - 1) * row_words;
#pragma omp for schedule(static)
          for (std::size_t x = 0; x < row_words; ++x) row_i[x] ^= row_p[x];

          auto runs = g.runs_at(i);
#pragma omp for schedule(static)
          for (std::size_t r = 0; r < runs.size(); ++r) {
            const ArcRun& run = runs[r];
            const Vertex u = run.head;
            if (!coloring.has_color(u, head_color)) continue;
            for (int w = 0; w < W; ++w) tmp[w] = 0;
            bool any = false;
            for (std::int32_t a = run.begin; a < run.end; ++a) {
              const Arc& arc = g.arc(a);
              if (!coloring.has_color(arc.tail, tail_color)) continue;
              any = true;
              const Word y = gf::draw_nonzero<Word>(
                  st.seed, Role::edge_y, static_cast<std::uint64_t>(arc.edge),
                  static_cast<std::uint64_t>(ell - 1), 0);
              const Word* src =
                  from_base
                      ? z + static_cast<std::size_t>(arc.tail) * W
                      : prv + static_cast<std::size_t>(i - 1) * row_words +
                            static_cast<std::size_t>(arc.tail) * W;
              for (int w = 0; w < W; ++w) tmp[w] ^= gf::mul(y, src[w]);
            }
            if (!any) continue;
            const Word* zu = z + static_cast<std::size_t>(u) * W;
            Word* out = row_i + static_cast<std::size_t>(u) * W;
            for (int w = 0; w < W; ++w) out[w] ^= gf::mul(zu[w], tmp[w]);
          }
        }
      }
      std::swap(prev, cur);
    }

    const Word* last = prev.data() + static_cast<std::size_t>(max_ts) * row_words;
#pragma omp parallel for schedule(static) num_threads(T)
    for (int u = 0; u < n; ++u) {
      Word s = 0;
      for (int w = 0; w < W; ++w) s ^= last[static_cast<std::size_t>(u) * W + w];
      acc[u] ^= s;
    }
  }
  return finalize(acc, k, cfg, total_words);
}

template <typename Fn>
SieveOutcome dispatch(int field_bits, Fn&& fn) {
  switch (field_bits) {
    case 8:
      return fn(std::uint8_t{});
    case 16:
      return fn(std::uint16_t{});
    case 32:
      return fn(std::uint32_t{});
    default:
      return fn(std::uint64_t{});
  }
}

}  // namespace

double false_negative_bound(int k, int field_bits) {
  double denom = std::pow(2.0, field_bits);
  return (2.0 * k - 1.0) / denom;
}

ShadeAssignment build_shades(const MotifQuery& query,
                             const VertexColoring& coloring,
                             const SieveConfig& config) {
  validate_config(config);
  if (query.multiset.empty())
    throw std::invalid_argument("build_shades needs a color multiset");
  int total = 0;
  for (auto& [c, mu] : query.multiset) total += mu;
  if (total != query.k)
    throw std::invalid_argument("multiset multiplicities do not sum to k");

  ShadeAssignment sh;
  sh.k = query.k;
  sh.seed = config.seed;

  const int n = coloring.n();
  std::vector<std::int64_t> color_count;
  color_count.assign(static_cast<std::size_t>(coloring.q()) + 2, 0);
  for (Vertex u = 0; u < n; ++u) ++color_count[coloring.primary(u)];
  if (coloring.wildcard_active())
    color_count[coloring.wildcard_color()] = n;

  int next_shade = 1;
  for (auto& [c, mu] : query.multiset) {
    sh.colors.push_back(c);
    std::vector<int> shades(mu);
    for (int i = 0; i < mu; ++i) shades[i] = next_shade++;
    sh.shade_sets.push_back(std::move(shades));
    bool present = c >= 1 && c < static_cast<Color>(color_count.size()) &&
                   color_count[c] > 0;
    if (!present && sh.feasible) {
      sh.feasible = false;
      sh.missing_color = c;
    }
  }

  sh.vertex_off.assign(static_cast<std::size_t>(n) + 1, 0);
  auto shades_of_color = [&](Color c) -> const std::vector<int>* {
    auto it = std::lower_bound(sh.colors.begin(), sh.colors.end(), c);
    if (it == sh.colors.end() || *it != c) return nullptr;
    return &sh.shade_sets[it - sh.colors.begin()];
  };
  for (Vertex u = 0; u < n; ++u) {
    int cnt = 0;
    if (auto* s = shades_of_color(coloring.primary(u))) cnt += s->size();
    if (coloring.wildcard_active())
      if (auto* s = shades_of_color(coloring.wildcard_color()))
        cnt += s->size();
    sh.vertex_off[u + 1] = sh.vertex_off[u] + cnt;
  }
  sh.vertex_shades.resize(sh.vertex_off.back());
  for (Vertex u = 0; u < n; ++u) {
    std::int32_t at = sh.vertex_off[u];
    if (auto* s = shades_of_color(coloring.primary(u)))
      for (int d : *s) sh.vertex_shades[at++] = d;
    if (coloring.wildcard_active())
      if (auto* s = shades_of_color(coloring.wildcard_color()))
        for (int d : *s) sh.vertex_shades[at++] = d;
  }
  return sh;
}

SieveOutcome eval_temporal_sieve(const TemporalGraph& g, int k, Timestamp max_ts,
                                 const ShadeAssignment& shades,
                                 const SieveConfig& config,
                                 const AnchorSpec& anchor) {
  validate_config(config);
  if (max_ts < 1 || max_ts > g.t())
    throw std::invalid_argument("max_ts outside [1..t]");
  if (static_cast<int>(shades.vertex_off.size()) != g.n() + 1)
    throw std::invalid_argument("shade assignment built for a different graph");
  return dispatch(config.field_bits, [&]<typename Word>(Word) {
    return temporal_impl<Word>(g, k, max_ts, shades, config, anchor);
  });
}

SieveOutcome eval_delay_sieve(const TemporalGraph& g, int k, Timestamp max_ts,
                              const ShadeAssignment& shades,
                              const SieveConfig& config) {
  if (config.edge_model == EdgeModel::instant)
    throw std::invalid_argument("eval_delay_sieve requires a delay edge model");
  return eval_temporal_sieve(g, k, max_ts, shades, config);
}

SieveOutcome eval_static_sieve(const StaticProjection& gs, int k,
                               const ShadeAssignment& shades,
                               const SieveConfig& config) {
  validate_config(config);
  return dispatch(config.field_bits, [&]<typename Word>(Word) {
    return static_impl<Word>(gs, k, shades, config);
  });
}

SieveOutcome eval_junction_sieve(const StaticProjection& gs, int k,
                                 const ShadeAssignment& shades,
                                 const SieveConfig& config) {
  validate_config(config);
  return dispatch(config.field_bits, [&]<typename Word>(Word) {
    return junction_impl<Word>(gs, k, shades, config);
  });
}

SieveOutcome eval_edge_constrained_sieve(const TemporalGraph& g,
                                         const std::vector<Timestamp>& times,
                                         const ShadeAssignment& shades,
                                         const SieveConfig& config) {
  validate_config(config);
  if (times.empty()) throw std::invalid_argument("times must be nonempty");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 1 || times[i] > g.t())
      throw std::invalid_argument("prescribed timestamp outside [1..t]");
    if (i > 0 && times[i] <= times[i - 1])
      throw std::invalid_argument("prescribed timestamps must strictly increase");
  }
  // Fast path: a prescribed timestamp with no edges is a certain NO.
  for (Timestamp ts : times)
    if (g.runs_at(ts).empty()) {
      SieveOutcome out;
      out.accumulators.assign(g.n(), 0);
      out.fn_bound = 0.0;
      out.checksum = fold_checksum(out.accumulators);
      return out;
    }
  return dispatch(config.field_bits, [&]<typename Word>(Word) {
    return ec_impl<Word>(g, times, shades, config);
  });
}

SieveOutcome eval_vertex_ordered_sieve(const TemporalGraph& g,
                                       const std::vector<Color>& order,
                                       const VertexColoring& coloring,
                                       Timestamp max_ts,
                                       const SieveConfig& config) {
  validate_config(config);
  if (order.empty()) throw std::invalid_argument("order must be nonempty");
  if (max_ts < 1 || max_ts > g.t())
    throw std::invalid_argument("max_ts outside [1..t]");
  return dispatch(config.field_bits, [&]<typename Word>(Word) {
    return vc_impl<Word>(g, order, coloring, max_ts, config);
  });
}

}  // namespace tsieve
