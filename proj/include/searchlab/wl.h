#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "searchlab/graph.h"

namespace searchlab {

using Color = std::int64_t;
using NodeSequence = std::vector<NodeId>;

// Node -> block id, normalised so that blocks are numbered 0, 1, ... in order
// of first appearance. Two colourings induce the same partition iff their
// normalised forms are equal.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::span<const Color> colors);

  std::size_t size() const noexcept { return block_of_.size(); }
  int num_blocks() const noexcept { return num_blocks_; }
  int block_of(NodeId v) const { return block_of_.at(v); }
  // Blocks as sorted node lists, ordered by smallest member.
  std::vector<std::vector<NodeId>> blocks() const;

  friend bool operator==(const Partition &, const Partition &) = default;

 private:
  std::vector<int> block_of_;
  int num_blocks_ = 0;
};

// True iff `fine` refines `coarse`: equal blocks in `fine` imply equal blocks
// in `coarse`. Throws kMismatch on differing node sets.
bool partition_refines(const Partition &coarse, const Partition &fine);

// Run-scoped injective Hash: canonical payloads get consecutive fresh ids.
class ColorDictionary {
 public:
  Color intern(const std::vector<Color> &payload);
  std::size_t size() const noexcept { return ids_.size(); }

 private:
  std::map<std::vector<Color>, Color> ids_;
};

// One joint refinement run over several graphs sharing a dictionary.
// rounds[t][g][v] is the colour of node v of graph g after t rounds.
struct ColoringHistory {
  std::vector<std::vector<std::vector<Color>>> rounds;
  // First t with partition(t) == partition(t+1) on the disjoint union, or -1
  // if the run stopped earlier.
  int stable_round = -1;
  std::size_t dictionary_size = 0;

  const std::vector<std::vector<Color>> &stable() const;
  Partition partition(std::size_t round, std::size_t graph) const;
  Partition stable_partition(std::size_t graph) const;
};

// Per graph, per node initial colours; empty means uniform.
using InitialColoring = std::vector<std::vector<Color>>;

// max_rounds < 0 refines until stable.
ColoringHistory wl_refine(std::span<const Graph> graphs, int max_rounds = -1,
                          const InitialColoring &init = {});

inline constexpr std::size_t kDefaultWalkGuard = 100000;

// All walks (w_0, ..., w_L) with w_L = u for L = 1..max_length, grouped by
// length and lexicographically ordered within a length.
std::vector<NodeSequence> terminating_walks(
    const Graph &g, NodeId u, int max_length,
    std::size_t guard = kDefaultWalkGuard);

std::size_t count_terminating_walks(const Graph &g, NodeId u, int max_length);

// WWL^ell: Hash(colour, multiset of length-aware coloured terminating walks).
ColoringHistory wwl_refine(std::span<const Graph> graphs, int walk_length,
                           int max_rounds = -1,
                           const InitialColoring &init = {},
                           std::size_t guard = kDefaultWalkGuard);

// ---- unfolding trees -------------------------------------------------------

struct UnfoldingTree {
  NodeId label = 0;
  int depth = 0;  // height below this node
  std::vector<UnfoldingTree> children;

  std::size_t node_count() const;
};

inline constexpr std::size_t kDefaultTreeGuard = 1000000;

UnfoldingTree unfolding_tree(const Graph &g, NodeId root, int depth,
                             std::size_t guard = kDefaultTreeGuard);

// Label sequences from every leaf at full depth up to the root.
std::vector<NodeSequence> leaf_paths(const UnfoldingTree &tree);

// ---- distinguishing --------------------------------------------------------

struct WlTest {
  enum class Kind { kWl, kWwl } kind = Kind::kWl;
  int walk_length = 1;

  static WlTest wl() { return {}; }
  static WlTest wwl(int length) { return {Kind::kWwl, length}; }
  std::string name() const;
};

struct Verdict {
  WlTest test;
  bool distinguished = false;
  int rounds_to_stable = 0;
};

// Distinguished iff the stable colour multisets of g and h differ in a joint
// run.
Verdict distinguish(const Graph &g, const Graph &h, const WlTest &test);

ColoringHistory refine(std::span<const Graph> graphs, const WlTest &test,
                       int max_rounds = -1, const InitialColoring &init = {});

}  // namespace searchlab
