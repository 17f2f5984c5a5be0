#include "searchlab/reconstruct.h"

#include <algorithm>
#include <iterator>
#include <set>

#include "searchlab/error.h"

namespace searchlab {

ReconstructionReport reconstruct_from_searches(
    int n, std::span<const std::vector<NodeId>> sequences,
    std::span<const BinaryMatrix> encodings, int window) {
  if (sequences.size() != encodings.size())
    throw Error(ErrorCode::kMismatch,
                "one adjacency encoding per sequence is required");
  if (window < 2)
    throw Error(ErrorCode::kInvalidArgument, "window must be at least 2");
  std::set<Edge> edges;
  for (std::size_t k = 0; k < sequences.size(); ++k) {
    const auto &seq = sequences[k];
    const BinaryMatrix &adj = encodings[k];
    if (adj.rows() != static_cast<Eigen::Index>(seq.size()) ||
        adj.cols() != window - 1)
      throw Error(ErrorCode::kMismatch,
                  "encoding " + std::to_string(k) + " has shape " +
                      std::to_string(adj.rows()) + "x" +
                      std::to_string(adj.cols()) + ", expected " +
                      std::to_string(seq.size()) + "x" +
                      std::to_string(window - 1));
    for (NodeId v : seq)
      if (v < 0 || v >= n)
        throw Error(ErrorCode::kMismatch,
                    "node id " + std::to_string(v) + " out of range");
    for (Eigen::Index i = 0; i < adj.rows(); ++i)
      for (Eigen::Index j = 1; j < window; ++j)
        if (adj(i, j - 1) && i - j >= 0 && seq[i] != seq[i - j])
          edges.emplace(seq[i], seq[i - j]);
  }
  ReconstructionReport report;
  report.n = n;
  report.m = sequences.size();
  report.window = window;
  report.recovered.assign(edges.begin(), edges.end());
  return report;
}

namespace {

void require_searches(const SampleSet &set) {
  if (set.kind != SampleKind::kSearches)
    throw Error(ErrorCode::kInvalidArgument,
                "reconstruction needs a sample set of searches");
}

}  // namespace

ReconstructionReport verify_reconstruction(const Graph &g, const SampleSet &set,
                                           int window) {
  require_searches(set);
  std::vector<std::vector<NodeId>> sequences;
  std::vector<BinaryMatrix> encodings;
  for (const SearchRecord &s : set.searches) {
    sequences.push_back(s.visit_order);
    encodings.push_back(adjacency_encoding(g, s.visit_order, window));
  }
  ReconstructionReport report =
      reconstruct_from_searches(g.num_nodes(), sequences, encodings, window);
  const EdgeList &truth = g.edges();
  std::set_difference(truth.begin(), truth.end(), report.recovered.begin(),
                      report.recovered.end(), std::back_inserter(report.missing));
  std::set_difference(report.recovered.begin(), report.recovered.end(),
                      truth.begin(), truth.end(),
                      std::back_inserter(report.spurious));
  report.exact = report.missing.empty() && report.spurious.empty();
  return report;
}

EdgeList reconstruct_tagged(const Graph &g, const SampleSet &set, int window) {
  require_searches(set);
  if (set.searches.empty()) return {};
  const TagMap tags = anonymous_tags(set.searches.front());
  std::vector<std::vector<NodeId>> sequences;
  std::vector<BinaryMatrix> encodings;
  for (const SearchRecord &s : set.searches) {
    encodings.push_back(adjacency_encoding(g, s.visit_order, window));
    std::vector<NodeId> tagged;
    for (int t : tags.apply(s.visit_order)) tagged.push_back(t - 1);
    sequences.push_back(std::move(tagged));
  }
  return reconstruct_from_searches(g.num_nodes(), sequences, encodings, window)
      .recovered;
}

}  // namespace searchlab
