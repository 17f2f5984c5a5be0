#pragma once

#include <cstdint>
#include <vector>

#include "searchlab/graph.h"
#include "searchlab/rng.h"

namespace searchlab {

// Canonical form of a graph with at most 11 nodes: the smallest upper-
// triangle adjacency bitmask over all degree-ordered relabellings.
std::uint64_t canonical_code(const Graph &g);
bool isomorphic_small(const Graph &a, const Graph &b);

// One representative per isomorphism class of graphs on exactly n nodes
// (n <= 8), built by vertex augmentation. connected_only filters the output.
std::vector<Graph> graphs_on(int n, bool connected_only);
// Connected classes on 1..max_n nodes.
std::vector<Graph> connected_graphs_up_to(int max_n);

Permutation random_permutation(int n, Rng &rng);

// G(n, p) conditioned on connectivity by rejection.
Graph random_connected_graph(int n, double p, Rng &rng);

// Connected, max degree <= d_cap and |E| <= c_cap * n: a random tree with
// the degree cap plus a random number of extra capped edges.
Graph random_sparse_graph(int n, int d_cap, double c_cap, Rng &rng);

}  // namespace searchlab
