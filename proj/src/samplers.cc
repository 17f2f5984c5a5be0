#include "searchlab/samplers.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "searchlab/error.h"
#include "searchlab/parallel.h"

namespace searchlab {

WalkPolicy parse_walk_policy(std::string_view name) {
  if (name == "uniform") return WalkPolicy::kUniform;
  if (name == "non_backtracking") return WalkPolicy::kNonBacktracking;
  if (name == "local_rule") return WalkPolicy::kLocalRule;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown walk policy '" + std::string(name) + "'");
}

std::string_view to_string(WalkPolicy policy) {
  switch (policy) {
    case WalkPolicy::kUniform: return "uniform";
    case WalkPolicy::kNonBacktracking: return "non_backtracking";
    case WalkPolicy::kLocalRule: return "local_rule";
  }
  return "unknown";
}

SampleKind parse_sample_kind(std::string_view name) {
  if (name == "walks") return SampleKind::kWalks;
  if (name == "searches") return SampleKind::kSearches;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown sample kind '" + std::string(name) + "'");
}

std::string_view to_string(SampleKind kind) {
  return kind == SampleKind::kWalks ? "walks" : "searches";
}

double min_degree_weight(const Graph &g, NodeId from, NodeId to) {
  return 1.0 / std::min(g.degree(from), g.degree(to));
}

namespace {

void require_connected(const Graph &g, std::string_view who) {
  if (g.num_nodes() == 0)
    throw Error(ErrorCode::kInvalidArgument,
                std::string(who) + ": graph has no nodes");
  if (!g.is_connected())
    throw Error(ErrorCode::kDisconnected,
                std::string(who) + ": graph is not connected");
}

NodeId step_local_rule(const Graph &g, NodeId at, const LocalRuleWeight &w,
                       Rng &rng, std::vector<double> &scratch) {
  const auto nbrs = g.neighbors(at);
  scratch.resize(nbrs.size());
  double total = 0.0;
  for (std::size_t k = 0; k < nbrs.size(); ++k) {
    const double weight = w(g, at, nbrs[k]);
    if (!(weight >= 0.0) || !std::isfinite(weight))
      throw Error(ErrorCode::kInvalidArgument,
                  "local-rule weight must be finite and non-negative");
    total += weight;
    scratch[k] = total;
  }
  if (!(total > 0.0))
    throw Error(ErrorCode::kInvalidArgument,
                "local-rule weights sum to zero at node " +
                    std::to_string(at));
  const double target = rng.uniform() * total;
  const auto it = std::upper_bound(scratch.begin(), scratch.end(), target);
  const auto k = std::min<std::size_t>(it - scratch.begin(), nbrs.size() - 1);
  return nbrs[k];
}

WalkRecord walk_unchecked(const Graph &g, const WalkParams &params, Rng &rng,
                          std::optional<NodeId> start) {
  WalkRecord record;
  record.policy = params.policy;
  record.start = start ? *start : static_cast<NodeId>(rng.below(g.num_nodes()));
  record.nodes.reserve(params.length + 1);
  record.nodes.push_back(record.start);
  Walker walker(g, params, record.start);
  for (int step = 0; step < params.length; ++step)
    record.nodes.push_back(walker.step(rng));
  return record;
}

SearchRecord dfs_unchecked(const Graph &g, Rng &rng,
                           std::optional<NodeId> root) {
  const int n = g.num_nodes();
  SearchRecord record;
  record.root = root ? *root : static_cast<NodeId>(rng.below(n));
  record.visit_order.reserve(n);
  record.tree_edges.reserve(n > 0 ? n - 1 : 0);

  std::vector<std::size_t> offset(n + 1, 0);
  for (NodeId v = 0; v < n; ++v) offset[v + 1] = offset[v] + g.degree(v);
  std::vector<NodeId> order(offset.back());
  std::vector<char> visited(n, 0);
  struct Frame {
    NodeId node;
    std::size_t next;
  };
  std::vector<Frame> stack;
  stack.reserve(n);

  auto discover = [&](NodeId v) {
    visited[v] = 1;
    record.visit_order.push_back(v);
    const auto nbrs = g.neighbors(v);
    std::copy(nbrs.begin(), nbrs.end(), order.begin() + offset[v]);
    rng.shuffle(std::span<NodeId>(order.data() + offset[v], nbrs.size()));
    stack.push_back({v, offset[v]});
  };

  discover(record.root);
  while (!stack.empty()) {
    Frame &top = stack.back();
    const std::size_t end = offset[top.node + 1];
    while (top.next < end && visited[order[top.next]]) ++top.next;
    if (top.next == end) {
      stack.pop_back();
      continue;
    }
    const NodeId parent = top.node;
    const NodeId child = order[top.next++];
    record.tree_edges.emplace_back(parent, child);
    discover(child);
  }
  return record;
}

}  // namespace

NodeId Walker::step(Rng &rng) {
  const auto nbrs = g_->neighbors(at_);
  const auto deg = nbrs.size();
  NodeId next = 0;
  switch (params_->policy) {
    case WalkPolicy::kUniform:
      next = nbrs[rng.below(deg)];
      break;
    case WalkPolicy::kNonBacktracking:
      if (prev_ < 0 || deg == 1) {
        next = nbrs[rng.below(deg)];
      } else {
        // Uniform over the deg-1 neighbours other than prev: draw from the
        // first deg-1 slots and let the last slot stand in for prev.
        next = nbrs[rng.below(deg - 1)];
        if (next == prev_) next = nbrs[deg - 1];
      }
      break;
    case WalkPolicy::kLocalRule:
      next = step_local_rule(*g_, at_, params_->weight, rng, scratch_);
      break;
  }
  prev_ = at_;
  at_ = next;
  return next;
}

void require_walkable(const Graph &g, const WalkParams &params) {
  require_connected(g, "sample_walk");
  if (params.length < 1)
    throw Error(ErrorCode::kInvalidArgument,
                "sample_walk: walk length must be at least 1");
  if (g.num_edges() == 0)
    throw Error(ErrorCode::kInvalidArgument,
                "sample_walk: graph has no edges to walk on");
  if (params.policy == WalkPolicy::kLocalRule && !params.weight)
    throw Error(ErrorCode::kInvalidArgument,
                "sample_walk: local-rule walk needs a weight function");
}

WalkRecord sample_walk(const Graph &g, const WalkParams &params, Rng &rng,
                       std::optional<NodeId> start) {
  require_walkable(g, params);
  if (start && !g.contains(*start))
    throw Error(ErrorCode::kInvalidArgument, "sample_walk: start out of range");
  return walk_unchecked(g, params, rng, start);
}

SearchRecord sample_dfs(const Graph &g, Rng &rng, std::optional<NodeId> root) {
  require_connected(g, "sample_dfs");
  if (root && !g.contains(*root))
    throw Error(ErrorCode::kInvalidArgument, "sample_dfs: root out of range");
  return dfs_unchecked(g, rng, root);
}

std::string check_search_record(const Graph &g, const SearchRecord &record) {
  const int n = g.num_nodes();
  if (static_cast<int>(record.visit_order.size()) != n)
    return "visit order has " + std::to_string(record.visit_order.size()) +
           " entries, expected " + std::to_string(n);
  if (!is_permutation(record.visit_order, n))
    return "visit order is not a permutation of the node set";
  if (n > 0 && record.visit_order.front() != record.root)
    return "visit order does not start at the root";
  if (static_cast<int>(record.tree_edges.size()) != std::max(n - 1, 0))
    return "tree has " + std::to_string(record.tree_edges.size()) +
           " edges, expected " + std::to_string(n - 1);

  std::vector<int> position(n);
  for (int i = 0; i < n; ++i) position[record.visit_order[i]] = i;
  std::vector<NodeId> parent(n, -1);
  for (auto [p, c] : record.tree_edges) {
    if (!g.contains(p) || !g.contains(c)) return "tree edge out of range";
    if (!g.has_edge(p, c)) return "tree edge is not a graph edge";
    if (c == record.root || parent[c] >= 0)
      return "node " + std::to_string(c) + " has more than one tree parent";
    if (position[p] >= position[c])
      return "parent " + std::to_string(p) + " does not precede child " +
             std::to_string(c);
    parent[c] = p;
  }
  // n-1 edges, one parent per non-root node, parents visited earlier: the
  // parent pointers reach the root from every node, so the tree spans V.
  return {};
}

// ---- exact enumeration --------------------------------------------------

double dfs_enumeration_leaves(const Graph &g) {
  double leaves = g.num_nodes();
  for (NodeId v = 0; v < g.num_nodes(); ++v)
    leaves *= std::tgamma(g.degree(v) + 1.0);
  return leaves;
}

namespace {

class DfsEnumerator {
 public:
  explicit DfsEnumerator(const Graph &g)
      : g_(g), visited_(g.num_nodes(), 0) {}

  std::vector<DfsOutcome> run() {
    const int n = g_.num_nodes();
    const Rational root_prob(1, n);
    for (NodeId root = 0; root < n; ++root) {
      current_.root = root;
      discover(-1, root);
      explore(root_prob);
      undiscover(-1, root);
    }
    std::vector<DfsOutcome> outcomes;
    outcomes.reserve(merged_.size());
    for (auto &[order, outcome] : merged_) outcomes.push_back(std::move(outcome));
    return outcomes;
  }

 private:
  void discover(NodeId parent, NodeId v) {
    visited_[v] = 1;
    current_.visit_order.push_back(v);
    if (parent >= 0) current_.tree_edges.emplace_back(parent, v);
    stack_.push_back(v);
  }

  void undiscover(NodeId parent, NodeId v) {
    visited_[v] = 0;
    current_.visit_order.pop_back();
    if (parent >= 0) current_.tree_edges.pop_back();
    stack_.pop_back();
  }

  // The remaining part of a uniform permutation, conditioned on its explored
  // prefix, is again uniform, so the next neighbour explored from the stack
  // top is uniform over its currently unvisited neighbours.
  void explore(const Rational &prob) {
    const std::vector<NodeId> saved_stack = stack_;
    while (!stack_.empty()) {
      const NodeId top = stack_.back();
      std::vector<NodeId> candidates;
      for (NodeId w : g_.neighbors(top))
        if (!visited_[w]) candidates.push_back(w);
      if (candidates.empty()) {
        stack_.pop_back();
        continue;
      }
      const Rational branch = prob / static_cast<int>(candidates.size());
      for (NodeId c : candidates) {
        discover(top, c);
        explore(branch);
        undiscover(top, c);
      }
      stack_ = saved_stack;
      return;
    }
    record(prob);
    stack_ = saved_stack;
  }

  void record(const Rational &prob) {
    auto [it, inserted] = merged_.try_emplace(current_.visit_order);
    if (inserted) {
      it->second.record = current_;
      it->second.probability = prob;
    } else {
      it->second.probability += prob;
    }
  }

  const Graph &g_;
  std::vector<char> visited_;
  std::vector<NodeId> stack_;
  SearchRecord current_;
  std::map<std::vector<NodeId>, DfsOutcome> merged_;
};

}  // namespace

std::vector<DfsOutcome> enumerate_dfs(const Graph &g, double budget) {
  require_connected(g, "enumerate_dfs");
  const double leaves = dfs_enumeration_leaves(g);
  if (leaves > budget)
    throw Error(ErrorCode::kBudgetExceeded,
                "graph too large for exact enumeration: " +
                    std::to_string(leaves) + " leaves exceed budget " +
                    std::to_string(budget));
  return DfsEnumerator(g).run();
}

// ---- sample sets --------------------------------------------------------

SampleSet sample_set(const Graph &g, SampleKind kind, int m,
                     const WalkParams &walk_params, std::uint64_t seed,
                     int threads) {
  if (m < 1)
    throw Error(ErrorCode::kInvalidArgument,
                "sample_set: m must be at least 1");
  SampleSet set;
  set.kind = kind;
  set.seed = seed;
  if (kind == SampleKind::kWalks) {
    require_walkable(g, walk_params);
    set.walks.resize(m);
    parallel_for(m, threads, [&](std::size_t i) {
      Rng rng = Rng::for_stream(seed, i);
      set.walks[i] = walk_unchecked(g, walk_params, rng, std::nullopt);
    });
  } else {
    require_connected(g, "sample_dfs");
    set.searches.resize(m);
    parallel_for(m, threads, [&](std::size_t i) {
      Rng rng = Rng::for_stream(seed, i);
      set.searches[i] = dfs_unchecked(g, rng, std::nullopt);
    });
  }
  return set;
}

}  // namespace searchlab
