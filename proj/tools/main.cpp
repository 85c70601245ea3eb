// tsieve: decide, optimize and extract color-constrained temporal paths;
// generate synthetic instances; run the benchmark harness.
//
// Exit status: 0 = YES, 1 = NO, 2 = usage or input error,
//              3 = budget exhausted / extraction failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "tsieve/generator.hpp"
#include "tsieve/oracle.hpp"
#include "tsieve/solver.hpp"

using nlohmann::json;
using namespace tsieve;

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct CommonOpts {
  std::string graph_file;
  std::string colors_file;
  std::string delays_file;
  std::string problem = "pathmotif";
  std::string motif;
  std::string order;
  std::string times;
  int k = 0;
  std::string source;
  std::string dest;
  std::uint64_t seed = 1;
  int field_bits = 64;
  int lanes = 8;
  int threads = 0;  // 0: TSIEVE_THREADS env, else hardware
  std::string preprocess = "both";
  std::string extraction = "localized";
  std::string edge_model = "auto";
  int wildcards_max = 0;
  bool directed = false;
  std::string format = "text";
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_graph = true) {
  auto* g = cmd->add_option("--graph", o.graph_file, "edge file: 'u v ts' per line");
  if (needs_graph) g->required();
  cmd->add_option("--colors", o.colors_file, "color file: 'u c' per line");
  cmd->add_option("--delays", o.delays_file, "vertex delay file: 'u d' per line");
  cmd->add_option("--problem", o.problem,
                  "one of: ktemppath pathmotif colorfulpath sdcolorful rainbow "
                  "ectemppath ecpathmotif vcpathmotif vccolorfulpath");
  cmd->add_option("--motif", o.motif, "color multiset, e.g. \"1,1,2,3\"");
  cmd->add_option("--order", o.order, "ordered color tuple (VC variants)");
  cmd->add_option("--times", o.times, "strictly increasing timestamps (EC variants)");
  cmd->add_option("--k", o.k, "pattern size");
  cmd->add_option("--source", o.source, "source vertex (sdcolorful)");
  cmd->add_option("--dest", o.dest, "destination vertex (sdcolorful)");
  cmd->add_option("--seed", o.seed, "run seed");
  cmd->add_option("--field-bits", o.field_bits, "GF(2^b) width: 8|16|32|64");
  cmd->add_option("--lanes", o.lanes, "lane width W (power of two)");
  cmd->add_option("--threads", o.threads, "worker count (default: TSIEVE_THREADS or hardware)");
  cmd->add_option("--preprocess", o.preprocess, "none|colors|static|both");
  cmd->add_option("--extraction", o.extraction, "localized|self-reducible");
  cmd->add_option("--edge-model", o.edge_model,
                  "auto|instant|transition|delay|transition-delay");
  cmd->add_option("--wildcards-max", o.wildcards_max,
                  "enable wildcard matching up to this total size");
  cmd->add_flag("--directed", o.directed, "treat edges as directed");
  cmd->add_option("--format", o.format, "text|json");
}

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("TSIEVE_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

std::vector<int> parse_int_list(const std::string& s, const char* flag) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(flag) + ": malformed integer '" +
                                  tok + "'");
    }
  }
  if (out.empty())
    throw std::invalid_argument(std::string(flag) + ": empty list");
  return out;
}

struct Instance {
  LoadResult loaded;
  SolveRequest req;
};

Vertex lookup_vertex(const LoadResult& loaded, const std::string& token,
                     const char* flag) {
  for (Vertex u = 0; u < static_cast<Vertex>(loaded.vertex_names.size()); ++u)
    if (loaded.vertex_names[u] == token) return u;
  throw std::invalid_argument(std::string(flag) + ": unknown vertex '" + token +
                              "'");
}

Instance load_instance(const CommonOpts& o) {
  Instance inst;
  std::ifstream ef(o.graph_file);
  if (!ef) throw std::invalid_argument("--graph: cannot open " + o.graph_file);
  std::optional<std::ifstream> cf;
  if (!o.colors_file.empty()) {
    cf.emplace(o.colors_file);
    if (!*cf) throw std::invalid_argument("--colors: cannot open " + o.colors_file);
  }
  inst.loaded = load_graph(ef, cf ? &*cf : nullptr, o.directed);
  if (!o.delays_file.empty()) {
    std::ifstream df(o.delays_file);
    if (!df) throw std::invalid_argument("--delays: cannot open " + o.delays_file);
    inst.loaded.graph.set_delays(load_delays(df, inst.loaded));
  }

  SolveRequest& req = inst.req;
  auto problem = problem_from_name(o.problem);
  if (!problem) throw std::invalid_argument("--problem: unknown '" + o.problem + "'");
  req.problem = *problem;

  switch (req.problem) {
    case Problem::k_temp_path:
    case Problem::rainbow_path:
    case Problem::sd_colorful_path:
      if (o.k < 1) throw std::invalid_argument("--k must be a positive integer");
      req.query = MotifQuery::size_only(o.k);
      break;
    case Problem::path_motif:
    case Problem::colorful_path: {
      if (o.motif.empty()) throw std::invalid_argument("--motif is required");
      auto colors = parse_int_list(o.motif, "--motif");
      req.query = MotifQuery::from_multiset(
          std::vector<Color>(colors.begin(), colors.end()));
      break;
    }
    case Problem::ec_temp_path: {
      if (o.times.empty()) throw std::invalid_argument("--times is required");
      auto ts = parse_int_list(o.times, "--times");
      req.query = MotifQuery::from_times(
          std::vector<Timestamp>(ts.begin(), ts.end()), {});
      break;
    }
    case Problem::ec_path_motif: {
      if (o.times.empty()) throw std::invalid_argument("--times is required");
      if (o.motif.empty()) throw std::invalid_argument("--motif is required");
      auto ts = parse_int_list(o.times, "--times");
      auto colors = parse_int_list(o.motif, "--motif");
      req.query = MotifQuery::from_times(
          std::vector<Timestamp>(ts.begin(), ts.end()),
          std::vector<Color>(colors.begin(), colors.end()));
      break;
    }
    case Problem::vc_path_motif:
    case Problem::vc_colorful_path: {
      if (o.order.empty()) throw std::invalid_argument("--order is required");
      auto colors = parse_int_list(o.order, "--order");
      req.query = MotifQuery::from_order(
          std::vector<Color>(colors.begin(), colors.end()));
      break;
    }
  }

  if (req.problem == Problem::sd_colorful_path) {
    if (o.source.empty() || o.dest.empty())
      throw std::invalid_argument("--source and --dest are required");
    req.source = lookup_vertex(inst.loaded, o.source, "--source");
    req.dest = lookup_vertex(inst.loaded, o.dest, "--dest");
  }

  req.wildcard_max = o.wildcards_max;

  if (o.preprocess == "none") req.preprocess = PreprocessLevel::none;
  else if (o.preprocess == "colors") req.preprocess = PreprocessLevel::color_filter;
  else if (o.preprocess == "static") req.preprocess = PreprocessLevel::static_sieve;
  else if (o.preprocess == "both") req.preprocess = PreprocessLevel::both;
  else throw std::invalid_argument("--preprocess: unknown '" + o.preprocess + "'");

  if (o.extraction == "localized")
    req.extraction = ExtractionStrategy::localized;
  else if (o.extraction == "self-reducible")
    req.extraction = ExtractionStrategy::self_reducible;
  else throw std::invalid_argument("--extraction: unknown '" + o.extraction + "'");

  SieveConfig& cfg = req.config;
  cfg.seed = o.seed;
  cfg.field_bits = o.field_bits;
  cfg.lane_width = o.lanes;
  cfg.threads = resolve_threads(o.threads);

  if (o.edge_model == "auto")
    cfg.edge_model = o.delays_file.empty()
                         ? (inst.loaded.graph.has_transition_times()
                                ? EdgeModel::transition_only
                                : EdgeModel::instant)
                         : (inst.loaded.graph.has_transition_times()
                                ? EdgeModel::transition_delay
                                : EdgeModel::delay_only);
  else if (o.edge_model == "instant") cfg.edge_model = EdgeModel::instant;
  else if (o.edge_model == "transition") cfg.edge_model = EdgeModel::transition_only;
  else if (o.edge_model == "delay") cfg.edge_model = EdgeModel::delay_only;
  else if (o.edge_model == "transition-delay")
    cfg.edge_model = EdgeModel::transition_delay;
  else throw std::invalid_argument("--edge-model: unknown '" + o.edge_model + "'");
  return inst;
}

const char* model_name(EdgeModel m) {
  switch (m) {
    case EdgeModel::instant: return "instant";
    case EdgeModel::transition_only: return "transition";
    case EdgeModel::delay_only: return "delay";
    case EdgeModel::transition_delay: return "transition-delay";
  }
  return "?";
}

json witness_json(const TemporalPath& p, const LoadResult& loaded) {
  json edges = json::array();
  for (const TemporalEdge& e : p.edges) edges.push_back({e.u, e.v, e.ts});
  json names = json::array();
  for (Vertex u : p.vertices) names.push_back(loaded.vertex_names[u]);
  return {{"vertices", p.vertices}, {"vertex_names", names}, {"edges", edges}};
}

json record_json(const std::string& command, const CommonOpts& o,
                 const Instance& inst, const SolveReport& r) {
  const TemporalGraph& g = inst.loaded.graph;
  char checksum[32];
  std::snprintf(checksum, sizeof checksum, "%016llx",
                static_cast<unsigned long long>(r.checksum));
  json j{
      {"command", command},
      {"problem", problem_name(inst.req.problem)},
      {"graph", {{"n", g.n()}, {"m", g.m()}, {"t", g.t()},
                 {"directed", g.directed()}}},
      {"config",
       {{"seed", inst.req.config.seed},
        {"field_bits", inst.req.config.field_bits},
        {"lanes", inst.req.config.lane_width},
        {"threads", inst.req.config.threads},
        {"preprocess", o.preprocess},
        {"extraction", o.extraction},
        {"edge_model", model_name(inst.req.config.edge_model)}}},
      {"decision", r.decision ? "YES" : "NO"},
      {"certain", r.certain},
      {"flagged", r.flagged},
      {"fn_bound", r.fn_bound},
      {"oracle_calls", r.oracle_calls},
      {"timings",
       {{"preprocess_s", r.timings.preprocess_s},
        {"sieve_s", r.timings.sieve_s},
        {"extract_s", r.timings.extract_s}}},
      {"peak_field_words", r.peak_field_words},
      {"peak_bytes", r.peak_field_words * (inst.req.config.field_bits / 8)},
      {"accumulator_checksum", checksum},
      {"preprocessed", {{"n", r.preprocessed_n}, {"m", r.preprocessed_m}}},
      {"wildcards_used", r.wildcards_used},
      {"note", r.note},
  };
  j["optimum_ts"] = r.optimum_ts >= 0 ? json(r.optimum_ts) : json(nullptr);
  j["witness"] =
      r.witness ? witness_json(*r.witness, inst.loaded) : json(nullptr);
  j["extraction_failed"] = r.extraction_failed;
  return j;
}

void print_record(const json& j, const std::string& format) {
  if (format == "json") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << "problem:    " << j["problem"].get<std::string>() << "\n"
            << "graph:      n=" << j["graph"]["n"] << " m=" << j["graph"]["m"]
            << " t=" << j["graph"]["t"] << "\n"
            << "config:     seed=" << j["config"]["seed"]
            << " b=" << j["config"]["field_bits"] << " W=" << j["config"]["lanes"]
            << " threads=" << j["config"]["threads"]
            << " preprocess=" << j["config"]["preprocess"].get<std::string>()
            << "\n"
            << "decision:   " << j["decision"].get<std::string>()
            << (j["certain"].get<bool>() ? " (exact)" : "") << "\n";
  if (!j["optimum_ts"].is_null())
    std::cout << "optimum-ts: " << j["optimum_ts"] << "\n";
  if (!j["witness"].is_null()) {
    std::cout << "witness:   ";
    for (const auto& e : j["witness"]["edges"])
      std::cout << " (" << e[0] << "," << e[1] << "@" << e[2] << ")";
    std::cout << "\n";
  }
  if (j["extraction_failed"].get<bool>())
    std::cout << "extraction: FAILED\n";
  std::cout << "flagged:    " << j["flagged"].size() << " vertices\n"
            << "fn-bound:   " << j["fn_bound"] << "\n"
            << "timings:    preprocess=" << j["timings"]["preprocess_s"]
            << "s sieve=" << j["timings"]["sieve_s"]
            << "s extract=" << j["timings"]["extract_s"] << "s\n"
            << "peak-mem:   " << j["peak_field_words"] << " field words ("
            << j["peak_bytes"] << " bytes)\n"
            << "checksum:   " << j["accumulator_checksum"].get<std::string>()
            << "\n";
  if (!j["note"].get<std::string>().empty())
    std::cout << "note:       " << j["note"].get<std::string>() << "\n";
}

int run_solver_command(const std::string& command, const CommonOpts& o,
                       SolveMode mode, bool optimize) {
  Instance inst = load_instance(o);
  if (mode == SolveMode::extract && optimize) mode = SolveMode::extract_optimum;
  SolveReport r = solve(inst.loaded.graph, inst.loaded.coloring, inst.req, mode);
  print_record(record_json(command, o, inst, r), o.format);
  bool wanted_witness =
      mode == SolveMode::extract || mode == SolveMode::extract_optimum;
  if (r.decision && wanted_witness && r.extraction_failed) return kExitBudget;
  return r.decision ? kExitYes : kExitNo;
}

// --- gen ---------------------------------------------------------------------

struct GenOpts {
  std::string family = "regular";
  int n = 0, d = 0, D = 0, w = 0;
  double alpha = -1.0;
  int t = 1;
  int colors = 1;
  std::uint64_t seed = 1;
  bool directed = false;
  int plant = 0;
  std::string plant_motif;
  std::string out_prefix;
};

int run_gen(const GenOpts& o) {
  GeneratorSpec spec;
  spec.family = o.family == "regular" ? GraphFamily::regular
              : o.family == "powerlaw" ? GraphFamily::powerlaw
              : throw std::invalid_argument("--family: unknown '" + o.family + "'");
  spec.n = o.n;
  spec.d = o.d;
  spec.D = o.D;
  spec.w = o.w;
  spec.alpha = o.alpha;
  spec.t = o.t;
  spec.colors = o.colors;
  spec.seed = o.seed;
  spec.directed = o.directed;

  GenResult res = spec.family == GraphFamily::regular ? gen_regular(spec)
                                                      : gen_powerlaw(spec);
  if (o.plant > 0) {
    if (o.plant_motif.empty())
      throw std::invalid_argument("--plant-motif is required with --plant");
    auto colors = parse_int_list(o.plant_motif, "--plant-motif");
    MotifQuery q = MotifQuery::from_multiset(
        std::vector<Color>(colors.begin(), colors.end()));
    GenResult planted = plant_matches(res.graph, res.coloring, q, o.plant, o.seed);
    planted.dropped_pairs = res.dropped_pairs;
    res = std::move(planted);
  }

  std::ofstream eg(o.out_prefix + ".edges");
  save_graph(eg, res.graph);
  std::ofstream cg(o.out_prefix + ".colors");
  save_colors(cg, res.coloring);
  if (!res.planted.empty()) {
    std::ofstream wg(o.out_prefix + ".witnesses");
    for (const TemporalPath& p : res.planted) {
      for (std::size_t i = 0; i < p.edges.size(); ++i) {
        if (i) wg << ' ';
        wg << p.vertices[i] << ' ' << p.vertices[i + 1] << ' ' << p.edges[i].ts;
      }
      wg << '\n';
    }
  }
  std::cerr << "wrote " << o.out_prefix << ".edges (n=" << res.graph.n()
            << " m=" << res.graph.m() << " t=" << res.graph.t() << "), "
            << o.out_prefix << ".colors";
  if (!res.planted.empty())
    std::cerr << ", " << o.out_prefix << ".witnesses (" << res.planted.size()
              << " planted)";
  if (res.dropped_pairs)
    std::cerr << "; dropped " << res.dropped_pairs << " stub pairs";
  std::cerr << "\n";
  return kExitYes;
}

// --- verify -------------------------------------------------------------------

int run_verify(const CommonOpts& o, const std::string& witness_file) {
  Instance inst = load_instance(o);
  std::ifstream wf(witness_file);
  if (!wf) throw std::invalid_argument("--witness: cannot open " + witness_file);
  json j = json::parse(wf);
  const json& w = j.contains("witness") && !j["witness"].is_null() ? j["witness"] : j;
  if (!w.contains("vertices") || !w.contains("edges"))
    throw std::invalid_argument("witness file lacks vertices/edges");

  TemporalPath p;
  for (const auto& v : w["vertices"]) p.vertices.push_back(v.get<Vertex>());
  for (const auto& e : w["edges"])
    p.edges.push_back({e[0].get<Vertex>(), e[1].get<Vertex>(),
                       e[2].get<Timestamp>(), 1});

  EffectiveInstance eff =
      effective_instance(inst.loaded.graph, inst.loaded.coloring, inst.req);
  PathVerdict verdict =
      validate_path(inst.loaded.graph, eff.coloring, p, eff.query,
                    inst.req.config.edge_model, eff.anchor.source,
                    eff.anchor.sink);
  if (verdict) {
    std::cout << "witness OK\n";
    return kExitYes;
  }
  std::cout << "witness INVALID: " << verdict.detail << "\n";
  return kExitNo;
}

// --- bench --------------------------------------------------------------------

struct BenchOpts {
  std::string suite = "edges";
  std::string m_list;   // suite-specific size lists (comma separated)
  std::string k_list;
  std::string t_list;
  std::string d_list;
  int repeats = 3;
  std::uint64_t seed = 1;
  int threads = 0;
  double budget_s = 900;
};

struct BenchRow {
  std::string suite, family;
  int n = 0;
  std::int64_t m = 0;
  int t = 0, k = 0, d = 0;
  std::string repeat;
  double decision_s = -1, extraction_s = -1, baseline_s = -1;
  std::uint64_t peak_words = 0;
  std::string verdict;
};

void emit(const BenchRow& r) {
  auto num = [](double v) {
    return v < 0 ? std::string("") : std::to_string(v);
  };
  std::cout << r.suite << ',' << r.family << ',' << r.n << ',' << r.m << ','
            << r.t << ',' << r.k << ',' << r.d << ',' << r.repeat << ','
            << num(r.decision_s) << ',' << num(r.extraction_s) << ','
            << num(r.baseline_s) << ',' << r.peak_words << ',' << r.verdict
            << "\n";
  std::cout.flush();
}

struct BenchInstance {
  TemporalGraph graph;
  VertexColoring coloring;
  MotifQuery query;
};

BenchInstance make_colorful_instance(GraphFamily family, int n, int d, int t,
                                     int k, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.family = family;
  spec.n = n;
  spec.d = d;
  spec.D = d;
  spec.w = 100;
  spec.alpha = -1.0;
  spec.t = t;
  spec.colors = k;
  spec.seed = seed;
  GenResult base = family == GraphFamily::regular ? gen_regular(spec)
                                                  : gen_powerlaw(spec);
  std::vector<Color> all_colors(k);
  for (int i = 0; i < k; ++i) all_colors[i] = i + 1;
  MotifQuery q = MotifQuery::from_multiset(all_colors);
  GenResult planted = plant_matches(base.graph, base.coloring, q, 10, seed + 7);
  return {std::move(planted.graph), std::move(planted.coloring), std::move(q)};
}

int run_bench(const BenchOpts& o) {
  const int threads = resolve_threads(o.threads);
  std::cout << "# tsieve-bench v1: suite,family,n,m,t,k,d,repeat,decision_s,"
               "extraction_s,baseline_s,peak_field_words,verdict\n";

  auto run_point = [&](GraphFamily family, const char* family_name, int n,
                       int d, int t, int k, bool with_baseline, int lanes = 8) {
    BenchRow summary;
    summary.suite = o.suite;
    summary.family = family_name;
    summary.n = n;
    summary.t = t;
    summary.k = k;
    summary.d = d;
    summary.repeat = "summary";
    double worst_decide = 0, worst_extract = 0, best_baseline = -1;
    bool baseline_timeout = false;

    for (int rep = 0; rep < o.repeats; ++rep) {
      BenchInstance inst = make_colorful_instance(family, n, d, t, k,
                                                  o.seed + 101 * rep);
      SolveRequest req;
      req.problem = Problem::colorful_path;
      req.query = inst.query;
      req.preprocess = PreprocessLevel::both;
      req.config.seed = o.seed + rep;
      req.config.threads = threads;
      req.config.lane_width = lanes;

      SolveReport dec = decide(inst.graph, inst.coloring, req);
      SolveReport ext =
          extract_localized(inst.graph, inst.coloring, req, /*optimize=*/true);

      BenchRow row = summary;
      row.repeat = std::to_string(rep);
      row.m = inst.graph.m();
      row.decision_s = dec.timings.preprocess_s + dec.timings.sieve_s;
      row.extraction_s = ext.timings.preprocess_s + ext.timings.sieve_s +
                         ext.timings.extract_s;
      row.peak_words = std::max(dec.peak_field_words, ext.peak_field_words);
      row.verdict = dec.decision ? "yes" : "no";
      summary.m = row.m;
      summary.peak_words = std::max(summary.peak_words, row.peak_words);
      worst_decide = std::max(worst_decide, row.decision_s);
      worst_extract = std::max(worst_extract, row.extraction_s);

      if (with_baseline) {
        OracleBudget budget;
        budget.wall_clock_s = o.budget_s;
        SolveRequest oreq = req;
        auto t0 = std::chrono::steady_clock::now();
        OracleReport orep =
            exhaustive_search(inst.graph, inst.coloring, oreq, budget);
        double bs = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
        row.baseline_s = bs;
        if (orep.inconclusive) {
          row.verdict += "+timeout";
          baseline_timeout = true;
        }
        if (best_baseline < 0 || bs < best_baseline) best_baseline = bs;
      }
      emit(row);
    }
    summary.decision_s = worst_decide;
    summary.extraction_s = worst_extract;
    summary.baseline_s = best_baseline;
    summary.verdict = baseline_timeout ? "timeout" : "ok";
    emit(summary);
  };

  if (o.suite == "edges") {
    auto ms = o.m_list.empty() ? std::vector<int>{1000, 10000, 100000}
                               : parse_int_list(o.m_list, "--m-list");
    for (int m : ms) run_point(GraphFamily::regular, "regular", m / 10, 20, 100,
                               5, false);
  } else if (o.suite == "k") {
    auto ks = o.k_list.empty() ? std::vector<int>{8, 9, 10, 11, 12}
                               : parse_int_list(o.k_list, "--k-list");
    for (int k : ks)
      run_point(GraphFamily::regular, "regular", 1000, 20, 100, k, false);
  } else if (o.suite == "timestamps") {
    auto ts = o.t_list.empty() ? std::vector<int>{10, 25, 50, 100}
                                : parse_int_list(o.t_list, "--t-list");
    for (int t : ts)
      run_point(GraphFamily::regular, "regular", 1000, 20, t, 5, false);
  } else if (o.suite == "degree") {
    auto ds = o.d_list.empty() ? std::vector<int>{2, 20, 200}
                                : parse_int_list(o.d_list, "--d-list");
    for (int d : ds)
      run_point(GraphFamily::regular, "regular", 20000 / d, d, 100, 5, false);
  } else if (o.suite == "baseline") {
    auto ms = o.m_list.empty() ? std::vector<int>{1000, 10000}
                               : parse_int_list(o.m_list, "--m-list");
    for (int m : ms) {
      run_point(GraphFamily::regular, "regular", m / 10, 20, 100, 5, true);
      run_point(GraphFamily::powerlaw, "powerlaw", m / 10, 20, 100, 5, true);
    }
  } else if (o.suite == "memory") {
    for (auto [n, t, k, lanes] :
         std::vector<std::array<int, 4>>{{100, 20, 5, 1},
                                         {100, 20, 5, 8},
                                         {500, 50, 8, 8},
                                         {1000, 100, 5, 8}}) {
      BenchInstance inst = make_colorful_instance(GraphFamily::regular, n, 4,
                                                  t, k, o.seed);
      SolveRequest req;
      req.problem = Problem::colorful_path;
      req.query = inst.query;
      req.preprocess = PreprocessLevel::none;
      req.config.seed = o.seed;
      req.config.threads = threads;
      req.config.lane_width = lanes;
      SolveReport dec = decide(inst.graph, inst.coloring, req);
      BenchRow row;
      row.suite = o.suite;
      row.family = "regular";
      row.n = n;
      row.m = inst.graph.m();
      row.t = t;
      row.k = k;
      row.d = lanes;  // param column doubles as the lane width here
      row.repeat = "0";
      row.decision_s = dec.timings.sieve_s;
      row.peak_words = dec.peak_field_words;
      std::uint64_t bound = 4ull * n * t * lanes;
      row.verdict = dec.peak_field_words <= bound ? "ok" : "exceeded";
      emit(row);
    }
  } else {
    throw std::invalid_argument("--suite: unknown '" + o.suite + "'");
  }
  return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"color-constrained temporal path detection and extraction"};
  app.require_subcommand(1);

  CommonOpts decide_o, extract_o, optimum_o, verify_o;
  bool extract_optimize = true;
  std::string witness_file;

  CLI::App* cmd_decide = app.add_subcommand("decide", "decide existence");
  add_common(cmd_decide, decide_o);

  CLI::App* cmd_extract =
      app.add_subcommand("extract", "decide and extract a witness path");
  add_common(cmd_extract, extract_o);
  cmd_extract->add_flag("--optimize,!--no-optimize", extract_optimize,
                        "minimize the witness's maximum timestamp (default on)");

  CLI::App* cmd_optimum = app.add_subcommand(
      "optimum", "find the smallest horizon that admits a match");
  add_common(cmd_optimum, optimum_o);

  CLI::App* cmd_verify =
      app.add_subcommand("verify", "validate a witness produced by extract");
  add_common(cmd_verify, verify_o);
  cmd_verify->add_option("--witness", witness_file, "witness JSON file")
      ->required();

  GenOpts gen_o;
  CLI::App* cmd_gen = app.add_subcommand("gen", "generate a synthetic instance");
  cmd_gen->add_option("--family", gen_o.family, "regular|powerlaw")->required();
  cmd_gen->add_option("--n", gen_o.n, "vertex count")->required();
  cmd_gen->add_option("--d", gen_o.d, "degree (regular)");
  cmd_gen->add_option("--D", gen_o.D, "average degree (powerlaw)");
  cmd_gen->add_option("--w", gen_o.w, "support size (powerlaw)");
  cmd_gen->add_option("--alpha", gen_o.alpha, "frequency exponent (powerlaw)");
  cmd_gen->add_option("--t", gen_o.t, "maximum timestamp")->required();
  cmd_gen->add_option("--colors-range", gen_o.colors, "colors drawn from [1..q]");
  cmd_gen->add_option("--seed", gen_o.seed, "generator seed");
  cmd_gen->add_flag("--directed", gen_o.directed, "directed edges");
  cmd_gen->add_option("--plant", gen_o.plant, "number of planted matches");
  cmd_gen->add_option("--plant-motif", gen_o.plant_motif,
                      "color multiset for planted matches");
  cmd_gen->add_option("--out", gen_o.out_prefix, "output file prefix")
      ->required();

  BenchOpts bench_o;
  CLI::App* cmd_bench = app.add_subcommand("bench", "benchmark harness (CSV)");
  cmd_bench->add_option("--suite", bench_o.suite,
                        "edges|k|timestamps|degree|baseline|memory");
  cmd_bench->add_option("--m-list", bench_o.m_list, "edge counts");
  cmd_bench->add_option("--k-list", bench_o.k_list, "query sizes");
  cmd_bench->add_option("--t-list", bench_o.t_list, "timestamp counts");
  cmd_bench->add_option("--d-list", bench_o.d_list, "degrees");
  cmd_bench->add_option("--repeats", bench_o.repeats, "repetitions per point");
  cmd_bench->add_option("--seed", bench_o.seed, "suite seed");
  cmd_bench->add_option("--threads", bench_o.threads, "worker count");
  cmd_bench->add_option("--budget-s", bench_o.budget_s,
                        "wall-clock ceiling per baseline run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitYes : kExitUsage;
  }

  try {
    if (cmd_decide->parsed())
      return run_solver_command("decide", decide_o, SolveMode::decide, false);
    if (cmd_extract->parsed())
      return run_solver_command("extract", extract_o, SolveMode::extract,
                                extract_optimize);
    if (cmd_optimum->parsed())
      return run_solver_command("optimum", optimum_o, SolveMode::optimum, false);
    if (cmd_verify->parsed()) return run_verify(verify_o, witness_file);
    if (cmd_gen->parsed()) return run_gen(gen_o);
    if (cmd_bench->parsed()) return run_bench(bench_o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
