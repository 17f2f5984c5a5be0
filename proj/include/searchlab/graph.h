#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace searchlab {

using NodeId = std::int32_t;

// Unordered edge, stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  Edge() = default;
  Edge(NodeId a, NodeId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend auto operator<=>(const Edge &, const Edge &) = default;
};

using EdgeList = std::vector<Edge>;
using Permutation = std::vector<NodeId>;

// Undirected simple graph on nodes 0..n-1 with sorted adjacency lists (CSR).
// Immutable after construction.
class Graph {
 public:
  Graph() = default;

  // Builds a graph from arbitrary pairs: duplicates (in either orientation)
  // are merged, self-loops and out-of-range ids are rejected.
  static Graph from_edges(int num_nodes, std::span<const Edge> edges);
  static Graph from_pairs(int num_nodes,
                          std::span<const std::pair<NodeId, NodeId>> pairs);

  int num_nodes() const noexcept { return num_nodes_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  std::span<const NodeId> neighbors(NodeId v) const noexcept {
    return {adjacency_.data() + offsets_[v],
            adjacency_.data() + offsets_[v + 1]};
  }
  // Edge ids parallel to neighbors(v): edge_ids(v)[k] indexes edges() for the
  // edge {v, neighbors(v)[k]}.
  std::span<const std::int32_t> edge_ids(NodeId v) const noexcept {
    return {edge_slot_.data() + offsets_[v],
            edge_slot_.data() + offsets_[v + 1]};
  }
  int degree(NodeId v) const noexcept {
    return static_cast<int>(offsets_[v + 1] - offsets_[v]);
  }

  // Sorted canonical edge list.
  const EdgeList &edges() const noexcept { return edges_; }

  bool has_edge(NodeId u, NodeId v) const noexcept;
  // Index of {u, v} in edges(), or -1.
  std::int32_t edge_index(NodeId u, NodeId v) const noexcept;

  bool is_connected() const noexcept { return connected_; }
  bool contains(NodeId v) const noexcept { return v >= 0 && v < num_nodes_; }

  friend bool operator==(const Graph &a, const Graph &b) {
    return a.num_nodes_ == b.num_nodes_ && a.edges_ == b.edges_;
  }

 private:
  int num_nodes_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> adjacency_;
  std::vector<std::int32_t> edge_slot_;
  EdgeList edges_;
  bool connected_ = true;
};

struct DegreeStats {
  int d_max = 0;
  double avg_deg = 0.0;
  // |E| / |V|, the sparsity constant C of the coverage bound.
  double sparsity_c = 0.0;
};

DegreeStats degree_stats(const Graph &g);
std::vector<int> degree_sequence(const Graph &g);  // sorted descending

// Dense adjacency matrix; walk counts are entries of its powers.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> adjacency_matrix(
    const Graph &g) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(
          g.num_nodes(), g.num_nodes());
  for (const Edge &e : g.edges()) {
    a(e.u, e.v) = Scalar(1);
    a(e.v, e.u) = Scalar(1);
  }
  return a;
}

int count_components(const Graph &g);

// ---- edge-list text format ----------------------------------------------

// Lines "u v" (0-based). Blank lines and lines starting with '#' are ignored,
// except an optional header "# n=<k>" declaring the node count.
Graph load_edge_list(std::string_view text);
Graph load_edge_list_file(const std::string &path);
// Edges with u < v in sorted order, preceded by "# n=<k>" when the highest
// node ids are isolated.
std::string save_edge_list(const Graph &g);

// ---- generators ---------------------------------------------------------

enum class Family {
  kPath,
  kCycle,
  kComplete,
  kStar,
  kRandomTree,
  kErConnected,
  kHexChain,
};

struct FamilySpec {
  Family family = Family::kPath;
  int n = 0;              // node count (all families but hex_chain)
  int k = 0;              // number of hexagons (hex_chain)
  double avg_deg = 0.0;   // expected average degree (er_connected)
};

inline constexpr int kErConnectedMaxRetries = 1000;

Family parse_family(std::string_view name);
std::string_view to_string(Family family);

// Always returns a connected graph. Deterministic given (spec, seed).
Graph gen_family(const FamilySpec &spec, std::uint64_t seed = 0);

Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
// Hub 0 plus leaves 1..n-1.
Graph star_graph(int n);
// k hexagons in a chain; hexagon i occupies nodes 7i..7i+5 and carries a
// pendant 7i+6 on its first node; hexagon i's node 3 bridges to hexagon
// i+1's node 1.
Graph hex_chain(int k);
Graph empty_graph(int n);

// ---- relabelling --------------------------------------------------------

bool is_permutation(std::span<const NodeId> perm, int n);
Permutation inverse_permutation(std::span<const NodeId> perm);
Permutation identity_permutation(int n);

// Edge {u, v} becomes {perm[u], perm[v]}.
Graph relabel(const Graph &g, std::span<const NodeId> perm);
// h's ids are offset by g.num_nodes(); no cross edges.
Graph disjoint_union(const Graph &g, const Graph &h);

}  // namespace searchlab
