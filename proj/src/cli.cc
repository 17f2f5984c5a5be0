#include "searchlab/cli.h"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "searchlab/bench.h"
#include "searchlab/corpus.h"
#include "searchlab/coverage.h"
#include "searchlab/encodings.h"
#include "searchlab/error.h"
#include "searchlab/invariance.h"
#include "searchlab/json_io.h"
#include "searchlab/reconstruct.h"
#include "searchlab/samplers.h"
#include "searchlab/wl.h"

namespace searchlab {

namespace {

struct Common {
  std::optional<std::uint64_t> seed;
  std::string out_path;
  int threads = 1;
};

void add_seed(CLI::App *cmd, Common &c) {
  cmd->add_option("--seed", c.seed, "RNG seed")->required();
}

void add_output(CLI::App *cmd, Common &c) {
  cmd->add_option("--out", c.out_path, "Output file (default: stdout)");
}

void add_threads(CLI::App *cmd, Common &c) {
  cmd->add_option("--threads", c.threads, "Worker threads for trials")
      ->check(CLI::PositiveNumber);
}

void emit(const std::string &text, const Common &c, std::ostream &out) {
  if (c.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.out_path, std::ios::binary);
  if (!file) throw Error(ErrorCode::kIo, "cannot write " + c.out_path);
  file << text;
}

void emit_json(const Json &j, const Common &c, std::ostream &out) {
  emit(j.dump(2) + "\n", c, out);
}

WalkParams walk_params(const std::string &policy, int length) {
  WalkParams p;
  p.policy = parse_walk_policy(policy);
  p.length = length;
  return p;
}

Json partitions_json(const ColoringHistory &history, std::size_t graphs) {
  Json rounds = Json::array();
  for (std::size_t t = 0; t < history.rounds.size(); ++t) {
    Json per_graph = Json::array();
    for (std::size_t gi = 0; gi < graphs; ++gi)
      per_graph.push_back(to_json(history.partition(t, gi)));
    rounds.push_back(Json{{"round", t}, {"partitions", std::move(per_graph)}});
  }
  return Json{{"rounds", std::move(rounds)},
              {"rounds_to_stable", history.stable_round}};
}

std::vector<Graph> load_graphs(const std::vector<std::string> &paths) {
  std::vector<Graph> graphs;
  for (const auto &p : paths) graphs.push_back(load_edge_list_file(p));
  return graphs;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err) {
  CLI::App app{"Graph sampling and expressivity lab", "searchlab"};
  app.require_subcommand(1);
  Common common;

  // gen
  auto *gen = app.add_subcommand("gen", "Generate a graph family as an edge list");
  std::string family;
  int gen_n = 0;
  int gen_k = 0;
  double gen_avg_deg = 0.0;
  std::optional<std::uint64_t> gen_seed;
  gen->add_option("--family", family, "path|cycle|complete|star|random_tree|er_connected|hex_chain")
      ->required();
  gen->add_option("--n", gen_n, "Node count");
  gen->add_option("--k", gen_k, "Hexagon count (hex_chain)");
  gen->add_option("--avg-deg", gen_avg_deg, "Expected average degree (er_connected)");
  gen->add_option("--seed", gen_seed, "RNG seed (required for random families)");
  add_output(gen, common);

  // sample
  auto *sample = app.add_subcommand("sample", "Draw a set of walks or searches");
  std::string graph_path;
  std::string kind_name = "searches";
  int m = 1;
  int length = 0;
  std::string policy = "uniform";
  int window = 0;
  sample->add_option("--graph", graph_path, "Edge-list file")->required();
  sample->add_option("--kind", kind_name, "walks|searches");
  sample->add_option("--m", m, "Number of samples")->check(CLI::PositiveNumber);
  sample->add_option("--length", length, "Walk length (default: n)");
  sample->add_option("--policy", policy, "uniform|non_backtracking|local_rule");
  sample->add_option("--window", window, "Attach positional encodings with this window");
  add_seed(sample, common);
  add_threads(sample, common);
  add_output(sample, common);

  // coverage
  auto *coverage = app.add_subcommand("coverage", "Coverage-vs-m curve as CSV");
  std::vector<std::string> kinds{"walks", "searches"};
  std::vector<int> m_list{1, 2, 4, 8};
  std::size_t coverage_trials = 500;
  coverage->add_option("--graph", graph_path, "Edge-list file")->required();
  coverage->add_option("--kind", kinds, "walks and/or searches")->delimiter(',');
  coverage->add_option("--m-list", m_list, "Comma-separated sample counts")->delimiter(',');
  coverage->add_option("--trials", coverage_trials, "Trials per point");
  coverage->add_option("--length", length, "Walk length (default: n)");
  coverage->add_option("--policy", policy, "Walk policy");
  add_seed(coverage, common);
  add_threads(coverage, common);
  add_output(coverage, common);

  // bound
  auto *bound = app.add_subcommand("bound", "Sample size m for full edge coverage");
  double bound_n = 0.0;
  double bound_c = 1.0;
  int d_max = 0;
  double delta = 0.1;
  std::optional<std::uint64_t> bound_seed;
  std::size_t bound_trials = 0;
  bound->add_option("--graph", graph_path, "Derive n, C, d_max from an edge-list file");
  bound->add_option("--n", bound_n, "Node count |V|");
  bound->add_option("--C", bound_c, "Sparsity constant (|E| <= C|V|)");
  bound->add_option("--d-max", d_max, "Maximum degree");
  bound->add_option("--delta", delta, "Failure probability")->required();
  bound->add_option("--trials", bound_trials, "Monte-Carlo check on --graph");
  bound->add_option("--seed", bound_seed, "RNG seed (required with --trials)");
  add_threads(bound, common);
  add_output(bound, common);

  // covertime
  auto *covertime = app.add_subcommand("covertime", "Estimate walk cover times");
  std::string target = "nodes";
  std::int64_t cap = 0;
  std::size_t cover_trials = 500;
  covertime->add_option("--graph", graph_path, "Edge-list file")->required();
  covertime->add_option("--policy", policy, "Walk policy");
  covertime->add_option("--target", target, "nodes|edges");
  covertime->add_option("--trials", cover_trials, "Number of walks");
  covertime->add_option("--cap", cap, "Step cap per trial (default 50 n^2)");
  add_seed(covertime, common);
  add_threads(covertime, common);
  add_output(covertime, common);

  // wl / wwl
  std::vector<std::string> graph_paths;
  int rounds = -1;
  auto *wl = app.add_subcommand("wl", "1-WL colour refinement, per-round partitions");
  wl->add_option("--graph", graph_paths, "Edge-list file(s), refined jointly")->required();
  wl->add_option("--rounds", rounds, "Rounds (default: until stable)");
  add_output(wl, common);
  auto *wwl = app.add_subcommand("wwl", "Walk-based WL refinement, per-round partitions");
  int walk_length = 1;
  wwl->add_option("--graph", graph_paths, "Edge-list file(s), refined jointly")->required();
  wwl->add_option("--length", walk_length, "Terminating walk length")->check(CLI::PositiveNumber);
  wwl->add_option("--rounds", rounds, "Rounds (default: until stable)");
  add_output(wwl, common);

  // distinguish
  auto *dist = app.add_subcommand("distinguish", "WL/WWL verdict for a pair of graphs");
  std::string other_path;
  std::string test_name = "wl";
  dist->add_option("--graph", graph_path, "First edge-list file")->required();
  dist->add_option("--other", other_path, "Second edge-list file")->required();
  dist->add_option("--test", test_name, "wl|wwl");
  dist->add_option("--length", walk_length, "Walk length for wwl");
  add_output(dist, common);

  // invariance
  auto *inv = app.add_subcommand("invariance", "Check isomorphism invariance of random DFS");
  std::string mode = "exact";
  std::vector<NodeId> perm;
  std::optional<std::uint64_t> perm_seed;
  std::size_t inv_trials = 100000;
  inv->add_option("--graph", graph_path, "Edge-list file")->required();
  inv->add_option("--mode", mode, "exact|sampled");
  double budget = kDefaultEnumerationBudget;
  inv->add_option("--budget", budget, "Leaf budget for exact enumeration");
  inv->add_option("--perm", perm, "Explicit permutation, comma-separated")->delimiter(',');
  inv->add_option("--perm-seed", perm_seed, "Seed for a random permutation");
  inv->add_option("--trials", inv_trials, "Samples per batch (sampled mode)");
  inv->add_option("--seed", common.seed, "RNG seed (required in sampled mode)");
  add_threads(inv, common);
  add_output(inv, common);

  // reconstruct
  auto *rec = app.add_subcommand("reconstruct", "Reconstruct edges from searches + adjacency encodings");
  std::size_t rec_trials = 1;
  rec->add_option("--graph", graph_path, "Edge-list file")->required();
  rec->add_option("--m", m, "Searches per sample set")->check(CLI::PositiveNumber);
  rec->add_option("--window", window, "Encoding window s (default n + 1)");
  rec->add_option("--trials", rec_trials, "Independent sample sets");
  add_seed(rec, common);
  add_threads(rec, common);
  add_output(rec, common);

  // bench
  auto *bench = app.add_subcommand("bench", "Time walks (length n) against searches");
  BenchConfig bench_config;
  std::string bench_family = "cycle";
  bench->add_option("--family", bench_family, "Graph family for the size sweep");
  bench->add_option("--sizes", bench_config.sizes, "Comma-separated sizes")->delimiter(',');
  bench->add_option("--m", bench_config.m, "Samples per timing run");
  bench->add_option("--repeats", bench_config.repeats, "Timing runs per point");
  add_seed(bench, common);
  add_output(bench, common);

  std::vector<const char *> argv{"searchlab"};
  for (const auto &a : args) argv.push_back(a.c_str());

  try {
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
      out << app.help();
      return 0;
    } catch (const CLI::ParseError &e) {
      err << Json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
      return 1;
    }

    if (gen->parsed()) {
      FamilySpec spec;
      spec.family = parse_family(family);
      spec.n = gen_n;
      spec.k = gen_k;
      spec.avg_deg = gen_avg_deg;
      const bool random = spec.family == Family::kRandomTree ||
                          spec.family == Family::kErConnected;
      if (random && !gen_seed)
        throw Error(ErrorCode::kInvalidArgument,
                    "--seed is required for random families");
      emit(save_edge_list(gen_family(spec, gen_seed.value_or(0))), common, out);
    } else if (sample->parsed()) {
      const Graph g = load_edge_list_file(graph_path);
      const SampleKind kind = parse_sample_kind(kind_name);
      const WalkParams wp =
          walk_params(policy, length > 0 ? length : g.num_nodes());
      const SampleSet set =
          sample_set(g, kind, m, wp, *common.seed, common.threads);
      Json j = to_json(set);
      if (window > 0) {
        Json encs = Json::array();
        if (kind == SampleKind::kWalks) {
          for (const auto &w : set.walks) encs.push_back(to_json(walk_encoding(g, w, window)));
        } else {
          for (const auto &s : set.searches)
            encs.push_back(Json{{"window", window},
                                {"adjacency", to_json(search_encoding(g, s, window))}});
        }
        j["encodings"] = std::move(encs);
      }
      emit_json(j, common, out);
    } else if (coverage->parsed()) {
      const Graph g = load_edge_list_file(graph_path);
      std::vector<SampleKind> sample_kinds;
      for (const auto &k : kinds) sample_kinds.push_back(parse_sample_kind(k));
      const auto rows = coverage_curve(g, sample_kinds, m_list, walk_params(policy, length),
                                       {coverage_trials, *common.seed, common.threads});
      emit(curve_csv(rows), common, out);
    } else if (bound->parsed()) {
      BoundQuery q;
      std::optional<Graph> g;
      if (!graph_path.empty()) {
        g = load_edge_list_file(graph_path);
        q = bound_query_for(*g, delta);
      } else {
        if (bound_n <= 0 || d_max <= 0)
          throw Error(ErrorCode::kInvalidArgument,
                      "bound needs --graph or all of --n and --d-max");
        q.n = bound_n;
        q.c = bound_c;
        q.d_max = d_max;
        q.delta = delta;
      }
      const BoundResult r = sample_bound_m(q);
      Json j = to_json(r);
      j["empirical_success"] = nullptr;
      j["trials"] = 0;
      if (bound_trials > 0) {
        if (!g) throw Error(ErrorCode::kInvalidArgument, "--trials needs --graph");
        if (!bound_seed) throw Error(ErrorCode::kInvalidArgument, "--trials needs --seed");
        const auto p = full_coverage_probability(
            *g, static_cast<int>(r.m_required), {bound_trials, *bound_seed, common.threads});
        j["empirical_success"] = p.rate;
        j["trials"] = p.trials;
      }
      emit_json(j, common, out);
    } else if (covertime->parsed()) {
      const Graph g = load_edge_list_file(graph_path);
      if (target != "nodes" && target != "edges")
        throw Error(ErrorCode::kInvalidArgument, "--target must be nodes or edges");
      const auto report = cover_time_estimate(
          g, walk_params(policy, 1),
          target == "nodes" ? CoverTarget::kNodes : CoverTarget::kEdges,
          {cover_trials, *common.seed, common.threads}, cap);
      Json j = to_json(report);
      j["policy"] = policy;
      j["target"] = target;
      j["seed"] = *common.seed;
      emit_json(j, common, out);
    } else if (wl->parsed() || wwl->parsed()) {
      const auto graphs = load_graphs(graph_paths);
      const ColoringHistory history =
          wl->parsed() ? wl_refine(graphs, rounds)
                       : wwl_refine(graphs, walk_length, rounds);
      Json j = partitions_json(history, graphs.size());
      j["test"] = wl->parsed() ? WlTest::wl().name() : WlTest::wwl(walk_length).name();
      emit_json(j, common, out);
    } else if (dist->parsed()) {
      const Graph g = load_edge_list_file(graph_path);
      const Graph h = load_edge_list_file(other_path);
      WlTest test;
      if (test_name == "wwl") {
        test = WlTest::wwl(walk_length);
      } else if (test_name != "wl") {
        throw Error(ErrorCode::kInvalidArgument, "--test must be wl or wwl");
      }
      emit_json(to_json(distinguish(g, h, test)), common, out);
    } else if (inv->parsed()) {
      const Graph g = load_edge_list_file(graph_path);
      Permutation p = perm;
      if (p.empty()) {
        if (!perm_seed)
          throw Error(ErrorCode::kInvalidArgument, "give --perm or --perm-seed");
        Rng prng(*perm_seed);
        p = random_permutation(g.num_nodes(), prng);
      }
      Json j{{"graph", graph_path}, {"perm_seed", nullptr}, {"mode", mode}};
      if (perm_seed) j["perm_seed"] = *perm_seed;
      j["perm"] = p;
      if (mode == "exact") {
        const Rational d = invariance_exact(g, p, budget);
        j["discrepancy"] = d.str();
        j["baseline_tv"] = nullptr;
        j["pass"] = d == 0;
      } else if (mode == "sampled") {
        if (!common.seed)
          throw Error(ErrorCode::kInvalidArgument, "--seed is required in sampled mode");
        const auto s = invariance_sampled(g, p, inv_trials, *common.seed, common.threads);
        j["tv"] = s.tv;
        j["baseline_tv"] = s.baseline_tv;
        j["bootstrap_threshold"] = s.bootstrap_threshold;
        j["noise_heuristic"] = s.noise_heuristic;
        j["trials"] = s.trials;
        j["pass"] = s.pass;
      } else {
        throw Error(ErrorCode::kInvalidArgument, "--mode must be exact or sampled");
      }
      emit_json(j, common, out);
    } else if (rec->parsed()) {
      const Graph g = load_edge_list_file(graph_path);
      const int s = window > 0 ? window : g.num_nodes() + 1;
      if (rec_trials < 1) throw Error(ErrorCode::kInvalidArgument, "--trials must be >= 1");
      std::vector<ReconstructionReport> reports(rec_trials);
      for (std::size_t t = 0; t < rec_trials; ++t) {
        std::uint64_t state = *common.seed + t;
        const SampleSet set = sample_set(g, SampleKind::kSearches, m, WalkParams{},
                                         splitmix64(state), common.threads);
        reports[t] = verify_reconstruction(g, set, s);
      }
      Json j = to_json(reports.front());
      std::size_t exact = 0;
      for (const auto &r : reports) exact += r.exact ? 1 : 0;
      j["trials"] = rec_trials;
      j["exact_rate"] = static_cast<double>(exact) / rec_trials;
      emit_json(j, common, out);
    } else if (bench->parsed()) {
      bench_config.family = parse_family(bench_family);
      bench_config.seed = *common.seed;
      emit(bench_csv(bench_samplers(bench_config)), common, out);
    }
    return 0;
  } catch (const Error &e) {
    err << Json{{"error", to_string(e.code())}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const std::exception &e) {
    err << Json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return 3;
  }
}

}  // namespace searchlab
