// Problem-level solvers: dispatch of the nine path problems onto sieve
// evaluations, optimum-timestamp binary search, graph-shrinking
// preprocessing, and witness extraction.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsieve/graph.hpp"
#include "tsieve/motif.hpp"
#include "tsieve/sieve.hpp"

namespace tsieve {

enum class Problem {
  k_temp_path,
  path_motif,
  colorful_path,
  sd_colorful_path,
  rainbow_path,
  ec_temp_path,
  ec_path_motif,
  vc_path_motif,
  vc_colorful_path,
};

const char* problem_name(Problem p);
std::optional<Problem> problem_from_name(const std::string& name);

enum class PreprocessLevel { none, color_filter, static_sieve, both };
enum class ExtractionStrategy { localized, self_reducible };
enum class SolveMode { decide, optimum, extract, extract_optimum };

struct SolveRequest {
  Problem problem = Problem::path_motif;
  MotifQuery query;
  Vertex source = -1;  // sd variant
  Vertex dest = -1;
  int wildcard_max = 0;  // 0 disables the wildcard loop; else max total k'
  PreprocessLevel preprocess = PreprocessLevel::both;
  ExtractionStrategy extraction = ExtractionStrategy::localized;
  SieveConfig config;
};

struct PhaseTimings {
  double preprocess_s = 0;
  double sieve_s = 0;
  double extract_s = 0;
};

struct SolveReport {
  bool decision = false;
  bool certain = false;  // exact outcome, independent of the random draws
  Timestamp optimum_ts = -1;
  std::optional<TemporalPath> witness;
  bool extraction_failed = false;
  std::vector<Vertex> flagged;
  double fn_bound = 0;
  int oracle_calls = 0;  // sieve evaluations performed
  PhaseTimings timings;
  std::uint64_t peak_field_words = 0;
  std::uint64_t checksum = 0;
  int preprocessed_n = -1;
  std::int64_t preprocessed_m = -1;
  int wildcards_used = 0;
  std::string note;
};

// One driver behind all named operations. Wildcard requests loop the plain
// decision with one extra reserved color per round.
SolveReport solve(const TemporalGraph& g, const VertexColoring& coloring,
                  const SolveRequest& req, SolveMode mode);

SolveReport decide(const TemporalGraph& g, const VertexColoring& coloring,
                   const SolveRequest& req);
SolveReport find_optimum_timestamp(const TemporalGraph& g,
                                   const VertexColoring& coloring,
                                   const SolveRequest& req);
SolveReport extract_localized(const TemporalGraph& g,
                              const VertexColoring& coloring,
                              const SolveRequest& req, bool optimize = false);
SolveReport extract_self_reducible(const TemporalGraph& g,
                                   const VertexColoring& coloring,
                                   const SolveRequest& req,
                                   bool optimize = false);

SolveReport decide_sd_colorful(const TemporalGraph& g,
                               const VertexColoring& coloring, Vertex source,
                               Vertex dest, int k, const SieveConfig& config);
SolveReport decide_rainbow(const TemporalGraph& g,
                           const VertexColoring& coloring, int k,
                           const SieveConfig& config);

// Exact polynomial-time dynamic program for the ordered all-distinct-colors
// problem; no randomness involved.
SolveReport vc_colorful_dp(const TemporalGraph& g,
                           const VertexColoring& coloring,
                           const std::vector<Color>& order,
                           Timestamp max_ts = 0);

SolveReport solve_with_wildcards(const TemporalGraph& g,
                                 const VertexColoring& coloring,
                                 const SolveRequest& req, int k_max);

struct PreprocessResult {
  TemporalGraph graph;
  std::vector<bool> kept;
  int kept_count = 0;
  std::uint64_t peak_field_words = 0;
};

// The normalized instance a request denotes: size-only queries become the
// all-one-colored multiset construction, the (s,d) variant is recolored with
// fresh endpoint colors and anchored. Rainbow has no single effective
// instance and is rejected here.
struct EffectiveInstance {
  MotifQuery query;
  VertexColoring coloring;
  AnchorSpec anchor;
  int k = 0;
};
EffectiveInstance effective_instance(const TemporalGraph& g,
                                     const VertexColoring& coloring,
                                     const SolveRequest& req);

// color_filter drops vertices whose color set misses the query support;
// static_sieve keeps only vertices the junction sieve flags on the static
// projection; both composes them. Decisions on the reduced graph equal
// decisions on the original (exactly for color_filter, whp for the sieve).
PreprocessResult preprocess(const TemporalGraph& g,
                            const VertexColoring& coloring,
                            const SolveRequest& req, PreprocessLevel level);

}  // namespace tsieve
