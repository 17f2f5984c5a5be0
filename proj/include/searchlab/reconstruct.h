#pragma once

#include <span>
#include <vector>

#include "searchlab/encodings.h"
#include "searchlab/graph.h"
#include "searchlab/samplers.h"

namespace searchlab {

struct ReconstructionReport {
  int n = 0;
  std::size_t m = 0;
  int window = 0;
  EdgeList recovered;  // sorted
  EdgeList missing;    // E \ recovered (filled by verify_reconstruction)
  EdgeList spurious;   // recovered \ E (filled by verify_reconstruction)
  bool exact = false;
};

// Reads edge (seq[i], seq[i - j]) off every entry adj[i, j - 1] == 1 and
// unions over all sequences. Sequences are node ids in 0..n-1 (or tags
// 1..n shifted down by the caller).
ReconstructionReport reconstruct_from_searches(
    int n, std::span<const std::vector<NodeId>> sequences,
    std::span<const BinaryMatrix> encodings, int window);

// Computes adjacency encodings from g for every search in the set,
// reconstructs and diffs against E.
ReconstructionReport verify_reconstruction(const Graph &g, const SampleSet &set,
                                           int window);

// The same pipeline in the tag space of anonymous_tags(first search): nodes
// are renamed to tag - 1 before reconstruction, so the result is an edge set
// on 0..n-1 isomorphic to the recovered subgraph.
EdgeList reconstruct_tagged(const Graph &g, const SampleSet &set, int window);

}  // namespace searchlab
