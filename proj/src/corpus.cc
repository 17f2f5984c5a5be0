#include "searchlab/corpus.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_set>

#include "searchlab/error.h"

namespace searchlab {

namespace {

constexpr int kMaxCanonicalNodes = 11;

std::uint64_t code_under(const Graph &g, std::span<const NodeId> pos) {
  const int n = g.num_nodes();
  std::uint64_t code = 0;
  for (const Edge &e : g.edges()) {
    int a = pos[e.u];
    int b = pos[e.v];
    if (a > b) std::swap(a, b);
    // Pair index in row-major order of the upper triangle.
    const int bit = a * n - a * (a + 1) / 2 + (b - a - 1);
    code |= std::uint64_t{1} << bit;
  }
  return code;
}

}  // namespace

std::uint64_t canonical_code(const Graph &g) {
  const int n = g.num_nodes();
  if (n > kMaxCanonicalNodes)
    throw Error(ErrorCode::kInvalidArgument,
                "canonical_code supports at most 11 nodes");
  // Positions are assigned class by class in decreasing degree order; only
  // the order inside a degree class is searched.
  std::vector<NodeId> by_degree = identity_permutation(n);
  std::stable_sort(by_degree.begin(), by_degree.end(), [&](NodeId a, NodeId b) {
    return g.degree(a) > g.degree(b);
  });
  std::vector<std::pair<int, int>> classes;  // [begin, end) in by_degree
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && g.degree(by_degree[j]) == g.degree(by_degree[i])) ++j;
    classes.emplace_back(i, j);
    i = j;
  }
  std::uint64_t best = ~std::uint64_t{0};
  std::vector<NodeId> pos(n);
  std::vector<NodeId> order = by_degree;
  // Odometer over the permutations of every class.
  for (auto &[b, e] : classes) std::sort(order.begin() + b, order.begin() + e);
  while (true) {
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    best = std::min(best, code_under(g, pos));
    std::size_t c = 0;
    for (; c < classes.size(); ++c) {
      auto [b, e] = classes[c];
      if (std::next_permutation(order.begin() + b, order.begin() + e)) break;
    }
    if (c == classes.size()) break;
  }
  return best;
}

bool isomorphic_small(const Graph &a, const Graph &b) {
  return a.num_nodes() == b.num_nodes() && a.num_edges() == b.num_edges() &&
         degree_sequence(a) == degree_sequence(b) &&
         canonical_code(a) == canonical_code(b);
}

std::vector<Graph> graphs_on(int n, bool connected_only) {
  if (n < 1 || n > 8)
    throw Error(ErrorCode::kInvalidArgument, "graphs_on supports 1..8 nodes");
  std::vector<Graph> level{empty_graph(1)};
  for (int size = 2; size <= n; ++size) {
    std::unordered_set<std::uint64_t> seen;
    std::vector<Graph> next;
    for (const Graph &base : level) {
      for (std::uint32_t mask = 0; mask < (1u << (size - 1)); ++mask) {
        EdgeList edges = base.edges();
        for (NodeId v = 0; v < size - 1; ++v)
          if (mask >> v & 1u) edges.emplace_back(v, size - 1);
        Graph g = Graph::from_edges(size, edges);
        if (seen.insert(canonical_code(g)).second) next.push_back(std::move(g));
      }
    }
    level = std::move(next);
  }
  if (connected_only)
    std::erase_if(level, [](const Graph &g) { return !g.is_connected(); });
  return level;
}

std::vector<Graph> connected_graphs_up_to(int max_n) {
  std::vector<Graph> out;
  for (int n = 1; n <= max_n; ++n) {
    auto level = graphs_on(n, true);
    out.insert(out.end(), std::make_move_iterator(level.begin()),
               std::make_move_iterator(level.end()));
  }
  return out;
}

Permutation random_permutation(int n, Rng &rng) {
  Permutation p = identity_permutation(n);
  rng.shuffle(std::span<NodeId>(p));
  return p;
}

Graph random_connected_graph(int n, double p, Rng &rng) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be positive");
  for (int attempt = 0; attempt < kErConnectedMaxRetries; ++attempt) {
    EdgeList edges;
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v)
        if (rng.uniform() < p) edges.emplace_back(u, v);
    Graph g = Graph::from_edges(n, edges);
    if (g.is_connected()) return g;
  }
  throw Error(ErrorCode::kRetriesExhausted,
              "random_connected_graph: no connected sample");
}

Graph random_sparse_graph(int n, int d_cap, double c_cap, Rng &rng) {
  if (n < 2 || d_cap < 2 || c_cap * n < n - 1)
    throw Error(ErrorCode::kInvalidArgument,
                "random_sparse_graph: need n >= 2, d_cap >= 2, C n >= n - 1");
  std::vector<int> degree(n, 0);
  std::set<Edge> edges;
  std::vector<NodeId> open{0};  // nodes with spare degree
  for (NodeId v = 1; v < n; ++v) {
    const std::size_t k = rng.below(open.size());
    const NodeId parent = open[k];
    edges.emplace(parent, v);
    if (++degree[parent] == d_cap) {
      open[k] = open.back();
      open.pop_back();
    }
    ++degree[v];
    open.push_back(v);
  }
  const auto max_edges = static_cast<std::size_t>(std::floor(c_cap * n));
  const std::size_t extra = rng.below(max_edges - (n - 1) + 1);
  const std::size_t target = n - 1 + extra;
  for (int attempt = 0; edges.size() < target && attempt < 50 * n; ++attempt) {
    const auto a = static_cast<NodeId>(rng.below(n));
    const auto b = static_cast<NodeId>(rng.below(n));
    if (a == b || degree[a] >= d_cap || degree[b] >= d_cap) continue;
    if (edges.emplace(a, b).second) {
      ++degree[a];
      ++degree[b];
    }
  }
  return Graph::from_edges(n, EdgeList(edges.begin(), edges.end()));
}

}  // namespace searchlab
