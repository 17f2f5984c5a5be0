#pragma once

// Reference implementations used only by the tests. They follow the
// definitions in the most direct way available and share no code with the
// library beyond the Graph type.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "searchlab/graph.h"
#include "searchlab/rational.h"

namespace oracle {

using searchlab::Edge;
using searchlab::Graph;
using searchlab::NodeId;
using searchlab::Rational;

// Recursive DFS driven by fixed per-vertex neighbour orders.
inline void dfs_with_orders(const std::vector<std::vector<NodeId>> &order,
                            NodeId u, std::vector<char> &seen,
                            std::vector<NodeId> &visit,
                            std::set<Edge> &tree) {
  seen[u] = 1;
  visit.push_back(u);
  for (NodeId w : order[u]) {
    if (seen[w]) continue;
    tree.insert(Edge(u, w));
    dfs_with_orders(order, w, seen, visit, tree);
  }
}

struct BruteOutcome {
  std::vector<NodeId> visit;
  std::set<Edge> tree;
};

// Every (root, per-vertex neighbour permutation) combination, each with
// weight 1 / (n * prod deg!). Calls visit(outcome, weight).
inline void brute_force_dfs(
    const Graph &g,
    const std::function<void(const BruteOutcome &, const Rational &)> &visit) {
  const int n = g.num_nodes();
  std::vector<std::vector<NodeId>> order(n);
  Rational leaves(n);
  for (NodeId v = 0; v < n; ++v) {
    auto nb = g.neighbors(v);
    order[v].assign(nb.begin(), nb.end());
    for (int k = 2; k <= static_cast<int>(order[v].size()); ++k) leaves *= k;
  }
  const Rational weight = Rational(1) / leaves;
  std::function<void(NodeId)> rec = [&](NodeId v) {
    if (v == n) {
      for (NodeId root = 0; root < n; ++root) {
        BruteOutcome out;
        std::vector<char> seen(n, 0);
        dfs_with_orders(order, root, seen, out.visit, out.tree);
        visit(out, weight);
      }
      return;
    }
    std::sort(order[v].begin(), order[v].end());
    do {
      rec(v + 1);
    } while (std::next_permutation(order[v].begin(), order[v].end()));
  };
  rec(0);
}

inline std::map<std::vector<NodeId>, Rational> brute_sequence_law(
    const Graph &g) {
  std::map<std::vector<NodeId>, Rational> law;
  brute_force_dfs(g, [&](const BruteOutcome &o, const Rational &w) {
    law[o.visit] += w;
  });
  return law;
}

inline Rational brute_edge_inclusion(const Graph &g, Edge e) {
  Rational p(0);
  brute_force_dfs(g, [&](const BruteOutcome &o, const Rational &w) {
    if (o.tree.contains(e)) p += w;
  });
  return p;
}

// Walks of exactly `length` steps ending at u, by explicit recursion from
// the end.
inline std::vector<std::vector<NodeId>> walks_ending_at(const Graph &g,
                                                        NodeId u, int length) {
  std::vector<std::vector<NodeId>> out;
  std::vector<NodeId> rev{u};
  std::function<void()> rec = [&]() {
    if (static_cast<int>(rev.size()) == length + 1) {
      out.emplace_back(rev.rbegin(), rev.rend());
      return;
    }
    for (NodeId w : g.neighbors(rev.back())) {
      rev.push_back(w);
      rec();
      rev.pop_back();
    }
  };
  rec();
  std::sort(out.begin(), out.end());
  return out;
}

// Is there a u->v path in G - e whose first edge is (u, w)? Plain BFS from w
// avoiding u.
inline bool escapes(const Graph &g, NodeId u, NodeId v, NodeId w) {
  std::vector<char> seen(g.num_nodes(), 0);
  seen[u] = 1;
  seen[w] = 1;
  std::vector<NodeId> queue{w};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const NodeId x = queue[i];
    if (x == v) return true;
    for (NodeId y : g.neighbors(x)) {
      if (!seen[y]) {
        seen[y] = 1;
        queue.push_back(y);
      }
    }
  }
  return false;
}

// Partition equality by pairwise comparison of colours.
template <typename A, typename B>
bool same_partition(const A &a, const B &b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if ((a[i] == a[j]) != (b[i] == b[j])) return false;
  return true;
}

}  // namespace oracle
