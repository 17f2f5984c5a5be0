#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "searchlab/graph.h"
#include "searchlab/rational.h"
#include "searchlab/samplers.h"

namespace searchlab {

// Exact law of the DFS visit sequence.
struct SequenceDistribution {
  std::map<std::vector<NodeId>, Rational> support;

  Rational total() const;
  friend bool operator==(const SequenceDistribution &,
                         const SequenceDistribution &) = default;
};

SequenceDistribution dfs_distribution(
    const Graph &g, double budget = kDefaultEnumerationBudget);

// Maps every support sequence elementwise through perm.
SequenceDistribution pushforward(const SequenceDistribution &d,
                                 std::span<const NodeId> perm);

// Largest absolute probability difference over the union of supports.
Rational sup_discrepancy(const SequenceDistribution &a,
                         const SequenceDistribution &b);

// sup | pushforward(law(g), perm) - law(relabel(g, perm)) |; zero for an
// isomorphism-invariant sampler.
Rational invariance_exact(const Graph &g, std::span<const NodeId> perm,
                          double budget = kDefaultEnumerationBudget);

using SequenceCounts = std::map<std::vector<NodeId>, std::size_t>;

// Empirical distribution of DFS visit sequences of g, mapped through perm
// (identity when empty). Trial t uses Rng::for_stream(seed, t).
SequenceCounts sample_sequence_counts(const Graph &g,
                                      std::span<const NodeId> perm,
                                      std::size_t trials, std::uint64_t seed,
                                      int threads = 1);

// 1/2 sum |p_a - p_b| between two empirical distributions.
double total_variation(const SequenceCounts &a, const SequenceCounts &b);

struct SampledInvariance {
  double tv = 0.0;           // pushforward batch vs relabelled-graph batch
  double baseline_tv = 0.0;  // two independent batches of the same law
  // 95th percentile of the TV between two resampled batches drawn from the
  // pooled sample: the noise level under the null of equal laws.
  double bootstrap_threshold = 0.0;
  double noise_heuristic = 0.0;  // sqrt(|support| / trials), reported only
  std::size_t support_size = 0;
  std::size_t trials = 0;
  bool pass = false;  // tv <= bootstrap_threshold
};

inline constexpr int kBootstrapResamples = 200;

// Compares pushforward(g samples, perm) with samples from relabel(g, perm).
// The baseline compares the same pushforward batch with an independent
// pushforward batch of g, so an identity perm reproduces it exactly.
SampledInvariance invariance_sampled(const Graph &g,
                                     std::span<const NodeId> perm,
                                     std::size_t trials, std::uint64_t seed,
                                     int threads = 1);

// Same machinery for two arbitrary graphs on the same node count: raw
// sequences of g versus raw sequences of h (negative control when the
// graphs are not isomorphic).
SampledInvariance compare_sampled(const Graph &g, const Graph &h,
                                  std::size_t trials, std::uint64_t seed,
                                  int threads = 1);

}  // namespace searchlab
