#include "searchlab/graph.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include "searchlab/error.h"
#include "searchlab/rng.h"

namespace searchlab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "parse_error";
    case ErrorCode::kInvalidGraph: return "invalid_graph";
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kDisconnected: return "disconnected_graph";
    case ErrorCode::kBudgetExceeded: return "budget_exceeded";
    case ErrorCode::kRetriesExhausted: return "retries_exhausted";
    case ErrorCode::kMismatch: return "mismatch";
    case ErrorCode::kIo: return "io_error";
  }
  return "unknown";
}

Graph Graph::from_edges(int num_nodes, std::span<const Edge> edges) {
  if (num_nodes < 0)
    throw Error(ErrorCode::kInvalidGraph, "negative node count");
  Graph g;
  g.num_nodes_ = num_nodes;
  g.edges_.assign(edges.begin(), edges.end());
  for (const Edge &e : g.edges_) {
    if (e.u == e.v)
      throw Error(ErrorCode::kInvalidGraph,
                  "self-loop at node " + std::to_string(e.u));
    if (e.u < 0 || e.v >= num_nodes)
      throw Error(ErrorCode::kInvalidGraph,
                  "edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                      ") out of range for n=" + std::to_string(num_nodes));
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()),
                 g.edges_.end());

  std::vector<std::size_t> degree(num_nodes, 0);
  for (const Edge &e : g.edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  g.offsets_.assign(num_nodes + 1, 0);
  for (int v = 0; v < num_nodes; ++v)
    g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  g.adjacency_.resize(g.offsets_.back());
  g.edge_slot_.resize(g.offsets_.back());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges are sorted by (u, v), so every adjacency list comes out sorted
  // once both orientations are emitted in two passes.
  for (std::size_t id = 0; id < g.edges_.size(); ++id) {
    const Edge &e = g.edges_[id];
    g.adjacency_[fill[e.v]] = e.u;
    g.edge_slot_[fill[e.v]++] = static_cast<std::int32_t>(id);
  }
  for (std::size_t id = 0; id < g.edges_.size(); ++id) {
    const Edge &e = g.edges_[id];
    g.adjacency_[fill[e.u]] = e.v;
    g.edge_slot_[fill[e.u]++] = static_cast<std::int32_t>(id);
  }

  g.connected_ = num_nodes <= 1 || count_components(g) == 1;
  return g;
}

Graph Graph::from_pairs(int num_nodes,
                        std::span<const std::pair<NodeId, NodeId>> pairs) {
  EdgeList edges;
  edges.reserve(pairs.size());
  for (auto [a, b] : pairs) {
    if (a == b)
      throw Error(ErrorCode::kInvalidGraph,
                  "self-loop at node " + std::to_string(a));
    edges.emplace_back(a, b);
  }
  return from_edges(num_nodes, edges);
}

bool Graph::has_edge(NodeId u, NodeId v) const noexcept {
  return edge_index(u, v) >= 0;
}

std::int32_t Graph::edge_index(NodeId u, NodeId v) const noexcept {
  if (!contains(u) || !contains(v)) return -1;
  if (degree(u) > degree(v)) std::swap(u, v);
  const auto nbrs = neighbors(u);
  const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
  if (it == nbrs.end() || *it != v) return -1;
  return edge_ids(u)[it - nbrs.begin()];
}

DegreeStats degree_stats(const Graph &g) {
  DegreeStats stats;
  for (NodeId v = 0; v < g.num_nodes(); ++v)
    stats.d_max = std::max(stats.d_max, g.degree(v));
  if (g.num_nodes() > 0) {
    const double n = g.num_nodes();
    const double m = static_cast<double>(g.num_edges());
    stats.avg_deg = 2.0 * m / n;
    stats.sparsity_c = m / n;
  }
  return stats;
}

std::vector<int> degree_sequence(const Graph &g) {
  std::vector<int> degrees(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) degrees[v] = g.degree(v);
  std::sort(degrees.begin(), degrees.end(), std::greater<>());
  return degrees;
}

int count_components(const Graph &g) {
  std::vector<char> seen(g.num_nodes(), 0);
  std::vector<NodeId> stack;
  int components = 0;
  for (NodeId s = 0; s < g.num_nodes(); ++s) {
    if (seen[s]) continue;
    ++components;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      for (NodeId w : g.neighbors(u)) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
  }
  return components;
}

// ---- edge-list text format ----------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_int(std::string_view token, long long &out) {
  const auto *end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end;
}

[[noreturn]] void parse_failure(std::size_t line_no, const std::string &what) {
  throw Error(ErrorCode::kParse,
              "line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

Graph load_edge_list(std::string_view text) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  long long declared_n = -1;
  long long max_id = -1;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = trim(text.substr(0, eol));
    text = eol == std::string_view::npos ? std::string_view{}
                                         : text.substr(eol + 1);
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::string_view body = trim(line.substr(1));
      if (body.starts_with("n=")) {
        if (!parse_int(trim(body.substr(2)), declared_n) || declared_n < 0)
          parse_failure(line_no, "malformed node-count header");
      }
      continue;
    }
    const auto split = line.find_first_of(" \t");
    if (split == std::string_view::npos)
      parse_failure(line_no, "expected two node ids");
    long long a = 0;
    long long b = 0;
    if (!parse_int(line.substr(0, split), a) ||
        !parse_int(trim(line.substr(split)), b))
      parse_failure(line_no, "expected two integer node ids");
    if (a < 0 || b < 0 || a > INT32_MAX - 1 || b > INT32_MAX - 1)
      parse_failure(line_no, "node id out of range");
    if (a == b)
      throw Error(ErrorCode::kInvalidGraph,
                  "line " + std::to_string(line_no) + ": self-loop at node " +
                      std::to_string(a));
    max_id = std::max({max_id, a, b});
    pairs.emplace_back(static_cast<NodeId>(a), static_cast<NodeId>(b));
  }
  long long n = max_id + 1;
  if (declared_n >= 0) {
    if (declared_n < n)
      throw Error(ErrorCode::kParse,
                  "header declares n=" + std::to_string(declared_n) +
                      " but node id " + std::to_string(max_id) + " occurs");
    n = declared_n;
  }
  return Graph::from_pairs(static_cast<int>(n), pairs);
}

Graph load_edge_list_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_edge_list(buffer.str());
}

std::string save_edge_list(const Graph &g) {
  // The header is only needed when trailing nodes are isolated.
  NodeId max_id = -1;
  for (const Edge &e : g.edges()) max_id = std::max(max_id, e.v);
  std::string out;
  if (max_id + 1 != g.num_nodes())
    out = "# n=" + std::to_string(g.num_nodes()) + "\n";
  for (const Edge &e : g.edges()) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += '\n';
  }
  return out;
}

// ---- generators ---------------------------------------------------------

namespace {

void require_nodes(int n, int minimum, std::string_view family) {
  if (n < minimum)
    throw Error(ErrorCode::kInvalidArgument,
                std::string(family) + " needs at least " +
                    std::to_string(minimum) + " nodes, got " +
                    std::to_string(n));
}

// Uniform labelled tree via a random Pruefer sequence.
Graph random_tree(int n, Rng &rng) {
  if (n <= 2) return path_graph(n);
  std::vector<NodeId> code(n - 2);
  for (auto &c : code) c = static_cast<NodeId>(rng.below(n));
  std::vector<int> degree(n, 1);
  for (NodeId c : code) ++degree[c];
  EdgeList edges;
  edges.reserve(n - 1);
  for (NodeId c : code) {
    NodeId leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    edges.emplace_back(leaf, c);
    --degree[leaf];
    --degree[c];
  }
  NodeId a = -1;
  for (NodeId v = 0; v < n; ++v) {
    if (degree[v] == 1) {
      if (a < 0) {
        a = v;
      } else {
        edges.emplace_back(a, v);
        break;
      }
    }
  }
  return Graph::from_edges(n, edges);
}

Graph er_connected(int n, double avg_deg, Rng &rng) {
  if (n == 1) return empty_graph(1);
  const double p = std::clamp(avg_deg / (n - 1), 0.0, 1.0);
  for (int attempt = 0; attempt < kErConnectedMaxRetries; ++attempt) {
    EdgeList edges;
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v)
        if (rng.uniform() < p) edges.emplace_back(u, v);
    Graph g = Graph::from_edges(n, edges);
    if (g.is_connected()) return g;
  }
  throw Error(ErrorCode::kRetriesExhausted,
              "er_connected(" + std::to_string(n) + ", " +
                  std::to_string(avg_deg) + ") not connected after " +
                  std::to_string(kErConnectedMaxRetries) + " attempts");
}

}  // namespace

Family parse_family(std::string_view name) {
  if (name == "path") return Family::kPath;
  if (name == "cycle") return Family::kCycle;
  if (name == "complete") return Family::kComplete;
  if (name == "star") return Family::kStar;
  if (name == "random_tree") return Family::kRandomTree;
  if (name == "er_connected") return Family::kErConnected;
  if (name == "hex_chain") return Family::kHexChain;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown graph family '" + std::string(name) + "'");
}

std::string_view to_string(Family family) {
  switch (family) {
    case Family::kPath: return "path";
    case Family::kCycle: return "cycle";
    case Family::kComplete: return "complete";
    case Family::kStar: return "star";
    case Family::kRandomTree: return "random_tree";
    case Family::kErConnected: return "er_connected";
    case Family::kHexChain: return "hex_chain";
  }
  return "unknown";
}

Graph gen_family(const FamilySpec &spec, std::uint64_t seed) {
  Rng rng(seed);
  switch (spec.family) {
    case Family::kPath:
      require_nodes(spec.n, 1, "path");
      return path_graph(spec.n);
    case Family::kCycle:
      require_nodes(spec.n, 3, "cycle");
      return cycle_graph(spec.n);
    case Family::kComplete:
      require_nodes(spec.n, 1, "complete");
      return complete_graph(spec.n);
    case Family::kStar:
      require_nodes(spec.n, 2, "star");
      return star_graph(spec.n);
    case Family::kRandomTree:
      require_nodes(spec.n, 1, "random_tree");
      return random_tree(spec.n, rng);
    case Family::kErConnected:
      require_nodes(spec.n, 1, "er_connected");
      if (!(spec.avg_deg > 0.0))
        throw Error(ErrorCode::kInvalidArgument,
                    "er_connected needs a positive average degree");
      return er_connected(spec.n, spec.avg_deg, rng);
    case Family::kHexChain:
      if (spec.k < 1)
        throw Error(ErrorCode::kInvalidArgument,
                    "hex_chain needs at least one hexagon");
      return hex_chain(spec.k);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown graph family");
}

Graph path_graph(int n) {
  EdgeList edges;
  for (NodeId v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph::from_edges(n, edges);
}

Graph cycle_graph(int n) {
  if (n < 3)
    throw Error(ErrorCode::kInvalidArgument, "cycle needs at least 3 nodes");
  EdgeList edges;
  for (NodeId v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return Graph::from_edges(n, edges);
}

Graph complete_graph(int n) {
  EdgeList edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

Graph star_graph(int n) {
  EdgeList edges;
  for (NodeId v = 1; v < n; ++v) edges.emplace_back(0, v);
  return Graph::from_edges(n, edges);
}

Graph hex_chain(int k) {
  EdgeList edges;
  for (int i = 0; i < k; ++i) {
    const NodeId base = 7 * i;
    for (NodeId j = 0; j < 6; ++j)
      edges.emplace_back(base + j, base + (j + 1) % 6);
    edges.emplace_back(base, base + 6);
    if (i + 1 < k) edges.emplace_back(base + 3, base + 7 + 1);
  }
  return Graph::from_edges(7 * k, edges);
}

Graph empty_graph(int n) { return Graph::from_edges(n, {}); }

// ---- relabelling --------------------------------------------------------

bool is_permutation(std::span<const NodeId> perm, int n) {
  if (static_cast<int>(perm.size()) != n) return false;
  std::vector<char> hit(n, 0);
  for (NodeId p : perm) {
    if (p < 0 || p >= n || hit[p]) return false;
    hit[p] = 1;
  }
  return true;
}

Permutation inverse_permutation(std::span<const NodeId> perm) {
  if (!is_permutation(perm, static_cast<int>(perm.size())))
    throw Error(ErrorCode::kInvalidArgument, "not a permutation");
  Permutation inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i)
    inv[perm[i]] = static_cast<NodeId>(i);
  return inv;
}

Permutation identity_permutation(int n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Graph relabel(const Graph &g, std::span<const NodeId> perm) {
  if (!is_permutation(perm, g.num_nodes()))
    throw Error(ErrorCode::kInvalidArgument,
                "relabel: perm is not a bijection on 0.." +
                    std::to_string(g.num_nodes() - 1));
  EdgeList edges;
  edges.reserve(g.num_edges());
  for (const Edge &e : g.edges()) edges.emplace_back(perm[e.u], perm[e.v]);
  return Graph::from_edges(g.num_nodes(), edges);
}

Graph disjoint_union(const Graph &g, const Graph &h) {
  EdgeList edges = g.edges();
  const NodeId offset = g.num_nodes();
  for (const Edge &e : h.edges())
    edges.emplace_back(e.u + offset, e.v + offset);
  return Graph::from_edges(g.num_nodes() + h.num_nodes(), edges);
}

}  // namespace searchlab
