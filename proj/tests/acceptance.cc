// Prints one PASS/FAIL line per acceptance criterion; exits 1 on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.h"
#include "searchlab/bench.h"
#include "searchlab/cli.h"
#include "searchlab/corpus.h"
#include "searchlab/coverage.h"
#include "searchlab/graph.h"
#include "searchlab/invariance.h"
#include "searchlab/samplers.h"
#include "searchlab/wl.h"

using namespace searchlab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char *format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// 1. Every sampled search is a valid spanning-tree record covering all nodes.
Outcome spanning_tree_law() {
  std::vector<Graph> corpus;
  for (int n : {2, 10, 50, 200}) {
    corpus.push_back(path_graph(n));
    corpus.push_back(star_graph(n));
  }
  for (int n : {3, 10, 50, 200}) corpus.push_back(cycle_graph(n));
  for (int k : {1, 2, 5, 10, 28}) corpus.push_back(hex_chain(k));
  for (int n : {20, 50, 100, 200})
    for (std::uint64_t seed = 0; seed < 3; ++seed)
      corpus.push_back(
          gen_family({Family::kErConnected, n, 0, std::log(n) + 3.0}, seed));

  const auto start = Clock::now();
  const int total = 10000;
  int bad = 0;
  for (int i = 0; i < total; ++i) {
    const Graph &g = corpus[i % corpus.size()];
    Rng rng = Rng::for_stream(1, i);
    const SearchRecord s = sample_dfs(g, rng);
    if (!check_search_record(g, s).empty() ||
        static_cast<int>(s.visit_order.size()) != g.num_nodes())
      ++bad;
  }
  const double secs = seconds_since(start);
  return {bad == 0 && secs < 10.0,
          fmt("%d searches on %zu graphs, %d invalid, %.2fs (limit 10s)", total,
              corpus.size(), bad, secs)};
}

// 2. Exact inclusion >= tau-bound >= 1/d_max on every edge, n <= 6.
Outcome edge_inclusion_bound() {
  std::size_t edges = 0;
  std::size_t violations = 0;
  const auto corpus = connected_graphs_up_to(6);
  for (const Graph &g : corpus) {
    for (const EdgeInclusion &x : edge_inclusion_exact_all(g, 1e15)) {
      ++edges;
      if (!(*x.exact >= x.bounds.tau_bound && x.bounds.tau_bound >= x.bounds.dmax_bound))
        ++violations;
    }
  }
  const auto tri = edge_inclusion_exact_all(cycle_graph(3));
  bool triangle = true;
  for (const auto &x : tri) triangle = triangle && *x.exact == Rational(2, 3);
  return {violations == 0 && triangle && corpus.size() == 143,
          fmt("%zu graphs, %zu edges, %zu violations, triangle 2/3: %s", corpus.size(),
              edges, violations, triangle ? "yes" : "no")};
}

// 3. Failure rate at the predicted m stays within delta + 2 stderr.
Outcome sample_bound() {
  const auto start = Clock::now();
  Rng rng(3);
  int checks = 0;
  int over = 0;
  double worst_margin = -1.0;
  for (int i = 0; i < 50; ++i) {
    const int n = 5 + static_cast<int>(rng.below(56));
    const Graph g = random_sparse_graph(n, 4, 1.5, rng);
    for (double delta : {0.05, 0.1}) {
      const BoundResult b = sample_bound_m(bound_query_for(g, delta));
      const auto p = full_coverage_probability(
          g, static_cast<int>(b.m_required), {2000, 1000u * i + (delta < 0.07), 1});
      const double failure = 1.0 - p.rate;
      const double se = std::sqrt(delta * (1.0 - delta) / 2000.0);
      ++checks;
      if (failure > delta + 2.0 * se) ++over;
      worst_margin = std::max(worst_margin, failure - delta);
    }
  }
  const double secs = seconds_since(start);
  return {over == 0 && secs < 300.0,
          fmt("%d graph/delta pairs, %d above delta+2se, max(failure-delta)=%.4f, %.1fs",
              checks, over, worst_margin, secs)};
}

// 4. WL and WWL agree on stable partitions and on verdicts.
Outcome wl_equals_wwl() {
  std::size_t graphs = 0;
  std::size_t disagreements = 0;
  for (int n = 1; n <= 7; ++n) {
    for (const Graph &g : graphs_on(n, true)) {
      ++graphs;
      const Partition wl = wl_refine(std::span(&g, 1)).stable_partition(0);
      for (int len = 1; len <= 3; ++len)
        if (wwl_refine(std::span(&g, 1), len).stable_partition(0) != wl) ++disagreements;
    }
  }
  std::vector<std::pair<Graph, Graph>> pairs;
  pairs.emplace_back(disjoint_union(cycle_graph(3), cycle_graph(3)), cycle_graph(6));
  Rng rng(4);
  while (pairs.size() < 250) {
    const int n = 4 + static_cast<int>(rng.below(5));
    const Graph g = random_connected_graph(n, 0.35, rng);
    if (pairs.size() % 2 == 0)
      pairs.emplace_back(g, relabel(g, random_permutation(n, rng)));
    else
      pairs.emplace_back(g, random_connected_graph(n, 0.35, rng));
  }
  bool c6_inconclusive = true;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const bool base = distinguish(pairs[i].first, pairs[i].second, WlTest::wl()).distinguished;
    if (i == 0) c6_inconclusive = !base;
    for (int len = 1; len <= 3; ++len) {
      const bool v =
          distinguish(pairs[i].first, pairs[i].second, WlTest::wwl(len)).distinguished;
      if (v != base) ++disagreements;
      if (i == 0 && v) c6_inconclusive = false;
    }
  }
  return {disagreements == 0 && c6_inconclusive,
          fmt("%zu graphs x 3 lengths, %zu pairs x 3 verdicts, %zu disagreements, "
              "2xC3 vs C6 inconclusive: %s",
              graphs, pairs.size(), disagreements, c6_inconclusive ? "yes" : "no")};
}

// 5. Refinement is monotone in rounds, walk length and initial colouring.
Outcome monotonicity() {
  Rng rng(5);
  std::size_t checks = 0;
  std::size_t violations = 0;
  auto check = [&](const Partition &coarse, const Partition &fine) {
    ++checks;
    if (!partition_refines(coarse, fine)) ++violations;
  };
  for (int n = 1; n <= 7; ++n) {
    for (const Graph &g : graphs_on(n, true)) {
      InitialColoring init(1, std::vector<Color>(g.num_nodes()));
      for (auto &c : init[0]) c = static_cast<Color>(rng.below(2));
      std::vector<ColoringHistory> by_len;
      for (int len = 1; len <= 3; ++len) by_len.push_back(wwl_refine(std::span(&g, 1), len, 4));
      for (int len = 1; len <= 3; ++len) {
        const ColoringHistory &h = by_len[len - 1];
        for (std::size_t t = 0; t + 1 < h.rounds.size(); ++t)
          check(h.partition(t, 0), h.partition(t + 1, 0));
        if (len < 3)
          for (std::size_t t = 0; t < h.rounds.size(); ++t)
            check(h.partition(t, 0), by_len[len].partition(t, 0));
        const auto finer = wwl_refine(std::span(&g, 1), len, 4, init);
        for (std::size_t t = 0; t < h.rounds.size(); ++t)
          check(h.partition(t, 0), finer.partition(t, 0));
      }
    }
  }
  return {violations == 0, fmt("%zu refinement checks, %zu violations", checks, violations)};
}

// 6. Unfolding-tree leaf paths are exactly the terminating walks.
Outcome path_walk_bijection() {
  Rng rng(6);
  std::size_t checks = 0;
  std::size_t mismatches = 0;
  for (int i = 0; i < 100; ++i) {
    const int n = 2 + static_cast<int>(rng.below(7));
    const Graph g = random_connected_graph(n, 0.4, rng);
    for (NodeId u = 0; u < n; ++u)
      for (int d = 1; d <= 3; ++d) {
        auto paths = leaf_paths(unfolding_tree(g, u, d));
        std::sort(paths.begin(), paths.end());
        ++checks;
        if (paths != oracle::walks_ending_at(g, u, d)) ++mismatches;
      }
  }
  return {mismatches == 0,
          fmt("%zu (graph, node, depth) checks, %zu mismatches", checks, mismatches)};
}

// 7. Exact and sampled label invariance of the DFS law, plus a negative control.
Outcome invariance() {
  Rng rng(7);
  std::size_t exact_checks = 0;
  std::size_t nonzero = 0;
  for (const Graph &g : connected_graphs_up_to(5))
    for (int k = 0; k < 20; ++k) {
      ++exact_checks;
      if (invariance_exact(g, random_permutation(g.num_nodes(), rng), 1e15) != Rational(0))
        ++nonzero;
    }
  const Graph hex = hex_chain(2);
  const SampledInvariance sampled =
      invariance_sampled(hex, random_permutation(hex.num_nodes(), rng), 200000, 71);
  const SampledInvariance control = compare_sampled(path_graph(4), star_graph(4), 200000, 72);
  const bool separates = !control.pass && control.tv > 10.0 * control.baseline_tv;
  return {nonzero == 0 && sampled.pass && separates,
          fmt("%zu exact checks, %zu nonzero; hex_chain(2) tv=%.4f threshold=%.4f; "
              "path(4) vs star(4) tv=%.4f baseline=%.4f",
              exact_checks, nonzero, sampled.tv, sampled.bootstrap_threshold, control.tv,
              control.baseline_tv)};
}

// 8. Searches out-cover walks at equal budget; full coverage by the predicted m.
Outcome coverage_narrative() {
  const Graph g = hex_chain(4);
  WalkParams walk;
  walk.length = g.num_nodes();
  const auto rows = coverage_curve(g, {SampleKind::kWalks, SampleKind::kSearches}, {1},
                                   walk, {500, 8, 1});
  double walk_cov = 0.0;
  double search_cov = 0.0;
  for (const CurveRow &r : rows)
    (r.kind == SampleKind::kWalks ? walk_cov : search_cov) = r.edge_frac_mean;
  const auto m = static_cast<int>(sample_bound_m(bound_query_for(g, 0.1)).m_required);
  const auto full = full_coverage_probability(g, m, {500, 9, 1});
  return {search_cov > walk_cov && full.rate >= 0.9,
          fmt("m=1 edge coverage: search %.4f vs walk %.4f; full coverage at m=%d in %.1f%%",
              search_cov, walk_cov, m, 100.0 * full.rate)};
}

// 9. Per-sample cost grows linearly in n for both samplers.
Outcome runtime_trend() {
  BenchConfig config;
  config.family = Family::kCycle;
  config.sizes = {64, 128, 256};
  config.seed = 10;
  const auto rows = bench_samplers(config);
  std::vector<double> walks;
  std::vector<double> searches;
  for (const BenchRow &r : rows)
    (r.kind == SampleKind::kWalks ? walks : searches).push_back(r.mean_us);
  bool linear = walks.size() == 3 && searches.size() == 3;
  std::string ratios;
  for (std::size_t i = 1; linear && i < 3; ++i) {
    const double rw = walks[i] / walks[i - 1];
    const double rs = searches[i] / searches[i - 1];
    linear = linear && rw >= 1.5 && rw <= 3.0 && rs >= 1.5 && rs <= 3.0;
    ratios += fmt(" walk %.2f search %.2f;", rw, rs);
  }
  const bool not_worse =
      linear && searches[2] / searches[0] <= 1.25 * walks[2] / walks[0];
  return {linear && not_worse, "successive ratios:" + ratios};
}

// 10. Stochastic CLI output is byte-identical across thread counts.
Outcome determinism() {
  const std::string dir = std::filesystem::temp_directory_path() / "searchlab_acceptance";
  std::filesystem::create_directories(dir);
  const std::string graph = dir + "/hex3.el";
  std::ofstream(graph) << save_edge_list(hex_chain(3));
  const std::vector<std::vector<std::string>> commands{
      {"gen", "--family", "er_connected", "--n", "60", "--avg-deg", "5", "--seed", "1"},
      {"gen", "--family", "random_tree", "--n", "60", "--seed", "1"},
      {"sample", "--graph", graph, "--kind", "searches", "--m", "50", "--window", "6", "--seed", "2"},
      {"sample", "--graph", graph, "--kind", "walks", "--m", "50", "--window", "6", "--policy",
       "non_backtracking", "--seed", "2"},
      {"coverage", "--graph", graph, "--m-list", "1,2,4,8", "--trials", "500", "--seed", "3"},
      {"bound", "--graph", graph, "--delta", "0.1", "--trials", "500", "--seed", "4"},
      {"covertime", "--graph", graph, "--trials", "300", "--seed", "5"},
      {"invariance", "--graph", graph, "--mode", "sampled", "--perm-seed", "6", "--trials",
       "5000", "--seed", "6"},
      {"reconstruct", "--graph", graph, "--m", "3", "--window", "5", "--trials", "50", "--seed",
       "7"},
  };
  int differing = 0;
  int failed = 0;
  for (const auto &cmd : commands) {
    std::string reference;
    for (const char *threads : {"1", "2", "4", "8"}) {
      std::vector<std::string> args = cmd;
      if (cmd[0] != "gen") args.insert(args.end(), {"--threads", threads});
      std::ostringstream out;
      std::ostringstream err;
      if (run_cli(args, out, err) != 0) {
        ++failed;
        std::fprintf(stderr, "%s: %s", cmd[0].c_str(), err.str().c_str());
        break;
      }
      if (reference.empty())
        reference = out.str();
      else if (out.str() != reference)
        ++differing;
    }
  }
  std::filesystem::remove_all(dir);
  return {differing == 0 && failed == 0,
          fmt("%zu commands x 4 thread counts, %d differing outputs, %d errors",
              commands.size(), differing, failed)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria{
      {"spanning-tree law", spanning_tree_law},
      {"edge-inclusion bound", edge_inclusion_bound},
      {"sample-count bound", sample_bound},
      {"WL equals WWL", wl_equals_wwl},
      {"refinement monotonicity", monotonicity},
      {"leaf paths equal terminating walks", path_walk_bijection},
      {"label invariance", invariance},
      {"search versus walk coverage", coverage_narrative},
      {"linear runtime trend", runtime_trend},
      {"thread-count determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
