#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "searchlab/graph.h"
#include "searchlab/rational.h"
#include "searchlab/rng.h"

namespace searchlab {

enum class WalkPolicy { kUniform, kNonBacktracking, kLocalRule };

WalkPolicy parse_walk_policy(std::string_view name);
std::string_view to_string(WalkPolicy policy);

// Unnormalized transition weight for the local-rule walk.
using LocalRuleWeight =
    std::function<double(const Graph &, NodeId from, NodeId to)>;

// w(u, v) = 1 / min(deg u, deg v). A configurable stand-in for the
// minimum-degree local rule, whose exact transition law is not pinned down.
double min_degree_weight(const Graph &g, NodeId from, NodeId to);

struct WalkParams {
  WalkPolicy policy = WalkPolicy::kUniform;
  int length = 1;  // number of steps; the record holds length + 1 nodes
  LocalRuleWeight weight = min_degree_weight;
};

struct WalkRecord {
  std::vector<NodeId> nodes;
  WalkPolicy policy = WalkPolicy::kUniform;
  NodeId start = 0;

  friend bool operator==(const WalkRecord &, const WalkRecord &) = default;
};

struct SearchRecord {
  std::vector<NodeId> visit_order;
  // Discovery edges stored as (parent, child) in discovery order.
  std::vector<std::pair<NodeId, NodeId>> tree_edges;
  NodeId root = 0;

  friend bool operator==(const SearchRecord &, const SearchRecord &) = default;
};

// Steps a walk one node at a time; sample_walk is `length` steps of this.
// The graph must outlive the walker.
class Walker {
 public:
  Walker(const Graph &g, const WalkParams &params, NodeId start)
      : g_(&g), params_(&params), at_(start) {}

  NodeId position() const noexcept { return at_; }
  NodeId step(Rng &rng);

 private:
  const Graph *g_;
  const WalkParams *params_;
  NodeId prev_ = -1;
  NodeId at_;
  std::vector<double> scratch_;
};

// Checks the preconditions of sample_walk without sampling.
void require_walkable(const Graph &g, const WalkParams &params);

// Throws kDisconnected / kInvalidArgument on violated preconditions.
WalkRecord sample_walk(const Graph &g, const WalkParams &params, Rng &rng,
                       std::optional<NodeId> start = std::nullopt);

// Randomized DFS: root uniform over V (unless forced); every vertex draws an
// independent uniform permutation of its neighbours at its first visit and
// explores them in that order. Only first visits are recorded.
SearchRecord sample_dfs(const Graph &g, Rng &rng,
                        std::optional<NodeId> root = std::nullopt);

// Validates the spanning-tree law of a search record against g: visit order
// is a permutation with root first, tree edges are n-1 graph edges forming a
// spanning tree and every parent precedes its child. Returns an empty string
// on success, otherwise a description of the first violation.
std::string check_search_record(const Graph &g, const SearchRecord &record);

// ---- exact enumeration --------------------------------------------------

struct DfsOutcome {
  SearchRecord record;
  Rational probability;
};

inline constexpr double kDefaultEnumerationBudget = 1e6;

// n * prod_v deg(v)!, the number of (root, per-vertex permutation) leaves.
double dfs_enumeration_leaves(const Graph &g);

// All distinct DFS outcomes with exact probabilities (summing to 1), sorted
// by visit order. Throws kBudgetExceeded when dfs_enumeration_leaves(g)
// exceeds the budget.
std::vector<DfsOutcome> enumerate_dfs(
    const Graph &g, double budget = kDefaultEnumerationBudget);

// ---- sample sets --------------------------------------------------------

enum class SampleKind { kWalks, kSearches };

SampleKind parse_sample_kind(std::string_view name);
std::string_view to_string(SampleKind kind);

struct SampleSet {
  SampleKind kind = SampleKind::kSearches;
  std::uint64_t seed = 0;
  std::vector<WalkRecord> walks;        // kind == kWalks
  std::vector<SearchRecord> searches;   // kind == kSearches

  std::size_t size() const noexcept {
    return kind == SampleKind::kWalks ? walks.size() : searches.size();
  }

  friend bool operator==(const SampleSet &, const SampleSet &) = default;
};

// Item i is drawn from Rng::for_stream(seed, i); the result does not depend
// on `threads`.
SampleSet sample_set(const Graph &g, SampleKind kind, int m,
                     const WalkParams &walk_params, std::uint64_t seed,
                     int threads = 1);

}  // namespace searchlab
