#include "searchlab/wl.h"

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_map>

#include "searchlab/error.h"

namespace searchlab {

Partition::Partition(std::span<const Color> colors) {
  std::unordered_map<Color, int> block;
  block_of_.reserve(colors.size());
  for (Color c : colors) {
    auto [it, fresh] = block.try_emplace(c, num_blocks_);
    if (fresh) ++num_blocks_;
    block_of_.push_back(it->second);
  }
}

std::vector<std::vector<NodeId>> Partition::blocks() const {
  std::vector<std::vector<NodeId>> out(num_blocks_);
  for (std::size_t v = 0; v < block_of_.size(); ++v)
    out[block_of_[v]].push_back(static_cast<NodeId>(v));
  return out;
}

bool partition_refines(const Partition &coarse, const Partition &fine) {
  if (coarse.size() != fine.size())
    throw Error(ErrorCode::kMismatch,
                "partition_refines: partitions cover different node sets");
  // Each fine block must map into a single coarse block.
  std::vector<int> image(fine.num_blocks(), -1);
  for (std::size_t v = 0; v < fine.size(); ++v) {
    const int f = fine.block_of(static_cast<NodeId>(v));
    const int c = coarse.block_of(static_cast<NodeId>(v));
    if (image[f] < 0) {
      image[f] = c;
    } else if (image[f] != c) {
      return false;
    }
  }
  return true;
}

Color ColorDictionary::intern(const std::vector<Color> &payload) {
  auto [it, fresh] =
      ids_.try_emplace(payload, static_cast<Color>(ids_.size()));
  return it->second;
}

const std::vector<std::vector<Color>> &ColoringHistory::stable() const {
  const std::size_t t =
      stable_round >= 0 ? static_cast<std::size_t>(stable_round)
                        : rounds.size() - 1;
  return rounds.at(t);
}

Partition ColoringHistory::partition(std::size_t round,
                                     std::size_t graph) const {
  return Partition(rounds.at(round).at(graph));
}

Partition ColoringHistory::stable_partition(std::size_t graph) const {
  return Partition(stable().at(graph));
}

namespace {

// payload(graph index, node, colours of that graph) -> hash input without the
// node's own colour, which is prepended here.
using PayloadFn = std::function<void(std::size_t, NodeId,
                                     const std::vector<Color> &,
                                     std::vector<Color> &)>;

Partition joint_partition(const std::vector<std::vector<Color>> &round) {
  std::vector<Color> all;
  for (const auto &colors : round) all.insert(all.end(), colors.begin(), colors.end());
  return Partition(all);
}

ColoringHistory run_refinement(std::span<const Graph> graphs, int max_rounds,
                               const InitialColoring &init,
                               const PayloadFn &payload) {
  ColoringHistory history;
  std::vector<std::vector<Color>> current(graphs.size());
  std::size_t total_nodes = 0;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const auto n = static_cast<std::size_t>(graphs[gi].num_nodes());
    total_nodes += n;
    if (init.empty()) {
      current[gi].assign(n, 0);
    } else {
      if (init.size() != graphs.size() || init[gi].size() != n)
        throw Error(ErrorCode::kMismatch,
                    "initial colouring does not match the graphs");
      current[gi] = init[gi];
    }
  }
  history.rounds.push_back(current);

  // The number of blocks grows strictly until stabilisation, so |V| + 1
  // rounds always suffice.
  const int limit = max_rounds >= 0 ? max_rounds
                                    : static_cast<int>(total_nodes) + 1;
  ColorDictionary dictionary;
  Partition previous = joint_partition(current);
  std::vector<Color> key;
  for (int t = 0; t < limit; ++t) {
    std::vector<std::vector<Color>> next(graphs.size());
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
      const Graph &g = graphs[gi];
      next[gi].resize(g.num_nodes());
      for (NodeId v = 0; v < g.num_nodes(); ++v) {
        key.clear();
        key.push_back(current[gi][v]);
        payload(gi, v, current[gi], key);
        next[gi][v] = dictionary.intern(key);
      }
    }
    history.rounds.push_back(next);
    Partition after = joint_partition(next);
    if (history.stable_round < 0 && after == previous) {
      history.stable_round = t;
      if (max_rounds < 0) break;
    }
    previous = std::move(after);
    current = std::move(next);
  }
  history.dictionary_size = dictionary.size();
  return history;
}

}  // namespace

ColoringHistory wl_refine(std::span<const Graph> graphs, int max_rounds,
                          const InitialColoring &init) {
  std::vector<Color> scratch;
  return run_refinement(
      graphs, max_rounds, init,
      [&](std::size_t gi, NodeId v, const std::vector<Color> &colors,
          std::vector<Color> &key) {
        scratch.clear();
        for (NodeId w : graphs[gi].neighbors(v)) scratch.push_back(colors[w]);
        std::sort(scratch.begin(), scratch.end());
        key.push_back(static_cast<Color>(scratch.size()));
        key.insert(key.end(), scratch.begin(), scratch.end());
      });
}

// ---- terminating walks -----------------------------------------------------

namespace {

// counts[L] = number of length-L walks ending at u (equal to the number
// starting at u on an undirected graph).
std::vector<double> walk_counts(const Graph &g, NodeId u, int max_length) {
  std::vector<double> at(g.num_nodes(), 0.0);
  at[u] = 1.0;
  std::vector<double> counts{1.0};
  for (int len = 1; len <= max_length; ++len) {
    std::vector<double> next(g.num_nodes(), 0.0);
    for (NodeId v = 0; v < g.num_nodes(); ++v)
      for (NodeId w : g.neighbors(v)) next[w] += at[v];
    at = std::move(next);
    counts.push_back(std::accumulate(at.begin(), at.end(), 0.0));
  }
  return counts;
}

void check_node(const Graph &g, NodeId u) {
  if (!g.contains(u))
    throw Error(ErrorCode::kInvalidArgument,
                "node " + std::to_string(u) + " out of range");
}

}  // namespace

std::size_t count_terminating_walks(const Graph &g, NodeId u, int max_length) {
  check_node(g, u);
  const auto counts = walk_counts(g, u, max_length);
  const double total = std::accumulate(counts.begin() + 1, counts.end(), 0.0);
  return static_cast<std::size_t>(total);
}

std::vector<NodeSequence> terminating_walks(const Graph &g, NodeId u,
                                            int max_length, std::size_t guard) {
  check_node(g, u);
  if (max_length < 1)
    throw Error(ErrorCode::kInvalidArgument, "walk length must be at least 1");
  const auto counts = walk_counts(g, u, max_length);
  const double total = std::accumulate(counts.begin() + 1, counts.end(), 0.0);
  if (total > static_cast<double>(guard))
    throw Error(ErrorCode::kBudgetExceeded,
                std::to_string(static_cast<long long>(total)) +
                    " terminating walks exceed the guard of " +
                    std::to_string(guard));

  std::vector<NodeSequence> out;
  out.reserve(static_cast<std::size_t>(total));
  // Walks are grown backwards from u: reversed[k] = w_{L-k}.
  std::vector<NodeSequence> frontier{{u}};
  for (int len = 1; len <= max_length; ++len) {
    std::vector<NodeSequence> grown;
    for (const auto &rev : frontier)
      for (NodeId w : g.neighbors(rev.back())) {
        grown.push_back(rev);
        grown.back().push_back(w);
      }
    std::vector<NodeSequence> forward;
    forward.reserve(grown.size());
    for (const auto &rev : grown) forward.emplace_back(rev.rbegin(), rev.rend());
    std::sort(forward.begin(), forward.end());
    out.insert(out.end(), forward.begin(), forward.end());
    frontier = std::move(grown);
  }
  return out;
}

ColoringHistory wwl_refine(std::span<const Graph> graphs, int walk_length,
                           int max_rounds, const InitialColoring &init,
                           std::size_t guard) {
  if (walk_length < 1)
    throw Error(ErrorCode::kInvalidArgument, "WWL needs walk length >= 1");
  std::vector<std::vector<std::vector<NodeSequence>>> walks(graphs.size());
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const Graph &g = graphs[gi];
    walks[gi].reserve(g.num_nodes());
    for (NodeId u = 0; u < g.num_nodes(); ++u)
      walks[gi].push_back(terminating_walks(g, u, walk_length, guard));
  }
  std::vector<std::vector<Color>> colored;
  return run_refinement(
      graphs, max_rounds, init,
      [&](std::size_t gi, NodeId v, const std::vector<Color> &colors,
          std::vector<Color> &key) {
        const auto &mine = walks[gi][v];
        colored.resize(mine.size());
        for (std::size_t k = 0; k < mine.size(); ++k) {
          // Length-aware: the sequence carries its length as a prefix.
          auto &seq = colored[k];
          seq.clear();
          seq.push_back(static_cast<Color>(mine[k].size()) - 1);
          for (NodeId w : mine[k]) seq.push_back(colors[w]);
        }
        std::sort(colored.begin(), colored.end());
        key.push_back(static_cast<Color>(colored.size()));
        for (const auto &seq : colored) key.insert(key.end(), seq.begin(), seq.end());
      });
}

// ---- unfolding trees -------------------------------------------------------

std::size_t UnfoldingTree::node_count() const {
  std::size_t count = 1;
  for (const auto &child : children) count += child.node_count();
  return count;
}

namespace {

UnfoldingTree build_tree(const Graph &g, NodeId root, int depth) {
  UnfoldingTree t;
  t.label = root;
  t.depth = depth;
  if (depth == 0) return t;
  t.children.reserve(g.degree(root));
  for (NodeId w : g.neighbors(root)) t.children.push_back(build_tree(g, w, depth - 1));
  return t;
}

void collect_paths(const UnfoldingTree &t, NodeSequence &path,
                   std::vector<NodeSequence> &out) {
  path.push_back(t.label);
  if (t.depth == 0) {
    out.emplace_back(path.rbegin(), path.rend());
  } else {
    for (const auto &child : t.children) collect_paths(child, path, out);
  }
  path.pop_back();
}

}  // namespace

UnfoldingTree unfolding_tree(const Graph &g, NodeId root, int depth,
                             std::size_t guard) {
  check_node(g, root);
  if (depth < 0)
    throw Error(ErrorCode::kInvalidArgument, "unfolding depth must be >= 0");
  const auto counts = walk_counts(g, root, depth);
  const double size = std::accumulate(counts.begin(), counts.end(), 0.0);
  if (size > static_cast<double>(guard))
    throw Error(ErrorCode::kBudgetExceeded,
                "unfolding tree of " +
                    std::to_string(static_cast<long long>(size)) +
                    " nodes exceeds the guard of " + std::to_string(guard));
  return build_tree(g, root, depth);
}

std::vector<NodeSequence> leaf_paths(const UnfoldingTree &tree) {
  std::vector<NodeSequence> out;
  NodeSequence path;
  collect_paths(tree, path, out);
  return out;
}

// ---- distinguishing --------------------------------------------------------

std::string WlTest::name() const {
  return kind == Kind::kWl ? "wl" : "wwl(" + std::to_string(walk_length) + ")";
}

ColoringHistory refine(std::span<const Graph> graphs, const WlTest &test,
                       int max_rounds, const InitialColoring &init) {
  if (test.kind == WlTest::Kind::kWl) return wl_refine(graphs, max_rounds, init);
  return wwl_refine(graphs, test.walk_length, max_rounds, init);
}

Verdict distinguish(const Graph &g, const Graph &h, const WlTest &test) {
  const Graph pair[] = {g, h};
  const ColoringHistory history = refine(pair, test);
  auto multiset = [&](std::size_t gi) {
    std::vector<Color> colors = history.stable().at(gi);
    std::sort(colors.begin(), colors.end());
    return colors;
  };
  Verdict v;
  v.test = test;
  v.distinguished = multiset(0) != multiset(1);
  v.rounds_to_stable = history.stable_round;
  return v;
}

}  // namespace searchlab
