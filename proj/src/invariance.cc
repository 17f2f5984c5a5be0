#include "searchlab/invariance.h"

#include <algorithm>
#include <cmath>

#include "searchlab/error.h"
#include "searchlab/parallel.h"

namespace searchlab {

Rational SequenceDistribution::total() const {
  Rational sum(0);
  for (const auto &[seq, p] : support) sum += p;
  return sum;
}

SequenceDistribution dfs_distribution(const Graph &g, double budget) {
  SequenceDistribution d;
  for (auto &outcome : enumerate_dfs(g, budget))
    d.support[outcome.record.visit_order] += outcome.probability;
  return d;
}

namespace {

std::vector<NodeId> map_sequence(const std::vector<NodeId> &seq,
                                 std::span<const NodeId> perm) {
  std::vector<NodeId> out(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) out[i] = perm[seq[i]];
  return out;
}

void require_permutation(std::span<const NodeId> perm, int n) {
  if (!is_permutation(perm, n))
    throw Error(ErrorCode::kInvalidArgument,
                "perm is not a bijection on 0.." + std::to_string(n - 1));
}

}  // namespace

SequenceDistribution pushforward(const SequenceDistribution &d,
                                 std::span<const NodeId> perm) {
  SequenceDistribution out;
  for (const auto &[seq, p] : d.support) {
    require_permutation(perm, static_cast<int>(seq.size()));
    out.support[map_sequence(seq, perm)] += p;
  }
  return out;
}

Rational sup_discrepancy(const SequenceDistribution &a,
                         const SequenceDistribution &b) {
  Rational worst(0);
  auto consider = [&](const Rational &x, const Rational &y) {
    Rational diff = x > y ? Rational(x - y) : Rational(y - x);
    if (diff > worst) worst = diff;
  };
  for (const auto &[seq, p] : a.support) {
    auto it = b.support.find(seq);
    consider(p, it == b.support.end() ? Rational(0) : it->second);
  }
  for (const auto &[seq, p] : b.support)
    if (!a.support.contains(seq)) consider(Rational(0), p);
  return worst;
}

Rational invariance_exact(const Graph &g, std::span<const NodeId> perm,
                          double budget) {
  require_permutation(perm, g.num_nodes());
  const SequenceDistribution original = dfs_distribution(g, budget);
  const SequenceDistribution relabelled =
      dfs_distribution(relabel(g, perm), budget);
  return sup_discrepancy(pushforward(original, perm), relabelled);
}

SequenceCounts sample_sequence_counts(const Graph &g,
                                      std::span<const NodeId> perm,
                                      std::size_t trials, std::uint64_t seed,
                                      int threads) {
  if (!perm.empty()) require_permutation(perm, g.num_nodes());
  std::vector<std::vector<NodeId>> draws(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    Rng rng = Rng::for_stream(seed, t);
    SearchRecord s = sample_dfs(g, rng);
    draws[t] = perm.empty() ? std::move(s.visit_order)
                            : map_sequence(s.visit_order, perm);
  });
  SequenceCounts counts;
  for (auto &seq : draws) ++counts[std::move(seq)];
  return counts;
}

double total_variation(const SequenceCounts &a, const SequenceCounts &b) {
  std::size_t na = 0;
  std::size_t nb = 0;
  for (const auto &[s, c] : a) na += c;
  for (const auto &[s, c] : b) nb += c;
  if (na == 0 || nb == 0)
    throw Error(ErrorCode::kInvalidArgument, "total variation of an empty sample");
  double sum = 0.0;
  for (const auto &[seq, c] : a) {
    auto it = b.find(seq);
    const double pb = it == b.end() ? 0.0 : static_cast<double>(it->second) / nb;
    sum += std::abs(static_cast<double>(c) / na - pb);
  }
  for (const auto &[seq, c] : b)
    if (!a.contains(seq)) sum += static_cast<double>(c) / nb;
  return 0.5 * sum;
}

namespace {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t batch) {
  std::uint64_t state = seed ^ (0xa0761d6478bd642fULL * (batch + 1));
  return splitmix64(state);
}

// 95th percentile of TV between two size-n resamples from the pooled
// sample (the null hypothesis that both batches share one law).
double bootstrap_threshold(const SequenceCounts &a, const SequenceCounts &b,
                           std::uint64_t seed) {
  std::map<std::vector<NodeId>, int> category;
  for (const auto &[s, c] : a) category.try_emplace(s, static_cast<int>(category.size()));
  for (const auto &[s, c] : b) category.try_emplace(s, static_cast<int>(category.size()));
  std::vector<int> pooled;
  std::size_t na = 0;
  std::size_t nb = 0;
  for (const auto &[s, c] : a) {
    pooled.insert(pooled.end(), c, category[s]);
    na += c;
  }
  for (const auto &[s, c] : b) {
    pooled.insert(pooled.end(), c, category[s]);
    nb += c;
  }
  Rng rng(derive_seed(seed, 99));
  std::vector<double> stats;
  stats.reserve(kBootstrapResamples);
  std::vector<std::int64_t> ca(category.size());
  std::vector<std::int64_t> cb(category.size());
  for (int r = 0; r < kBootstrapResamples; ++r) {
    std::fill(ca.begin(), ca.end(), 0);
    std::fill(cb.begin(), cb.end(), 0);
    for (std::size_t i = 0; i < na; ++i) ++ca[pooled[rng.below(pooled.size())]];
    for (std::size_t i = 0; i < nb; ++i) ++cb[pooled[rng.below(pooled.size())]];
    double sum = 0.0;
    for (std::size_t k = 0; k < ca.size(); ++k)
      sum += std::abs(static_cast<double>(ca[k]) / na -
                      static_cast<double>(cb[k]) / nb);
    stats.push_back(0.5 * sum);
  }
  std::sort(stats.begin(), stats.end());
  const auto idx = static_cast<std::size_t>(
      std::ceil(0.95 * kBootstrapResamples)) - 1;
  return stats[std::min(idx, stats.size() - 1)];
}

SampledInvariance assemble(const SequenceCounts &a, const SequenceCounts &b,
                           const SequenceCounts &baseline_b,
                           std::size_t trials, std::uint64_t seed) {
  SampledInvariance out;
  out.trials = trials;
  out.tv = total_variation(a, b);
  out.baseline_tv = total_variation(a, baseline_b);
  out.bootstrap_threshold = bootstrap_threshold(a, b, seed);
  std::map<std::vector<NodeId>, char> support;
  for (const auto &[s, c] : a) support[s] = 1;
  for (const auto &[s, c] : b) support[s] = 1;
  out.support_size = support.size();
  out.noise_heuristic =
      std::sqrt(static_cast<double>(out.support_size) / trials);
  out.pass = out.tv <= out.bootstrap_threshold;
  return out;
}

}  // namespace

SampledInvariance invariance_sampled(const Graph &g,
                                     std::span<const NodeId> perm,
                                     std::size_t trials, std::uint64_t seed,
                                     int threads) {
  require_permutation(perm, g.num_nodes());
  if (trials == 0)
    throw Error(ErrorCode::kInvalidArgument, "trials must be at least 1");
  const Graph h = relabel(g, perm);
  const std::uint64_t seed_a = derive_seed(seed, 0);
  const std::uint64_t seed_b = derive_seed(seed, 1);
  const auto a = sample_sequence_counts(g, perm, trials, seed_a, threads);
  const auto b = sample_sequence_counts(h, {}, trials, seed_b, threads);
  const auto baseline = sample_sequence_counts(g, perm, trials, seed_b, threads);
  return assemble(a, b, baseline, trials, seed);
}

SampledInvariance compare_sampled(const Graph &g, const Graph &h,
                                  std::size_t trials, std::uint64_t seed,
                                  int threads) {
  if (g.num_nodes() != h.num_nodes())
    throw Error(ErrorCode::kMismatch, "graphs must have the same node count");
  if (trials == 0)
    throw Error(ErrorCode::kInvalidArgument, "trials must be at least 1");
  const auto a = sample_sequence_counts(g, {}, trials, derive_seed(seed, 0), threads);
  const auto b = sample_sequence_counts(h, {}, trials, derive_seed(seed, 1), threads);
  const auto baseline =
      sample_sequence_counts(g, {}, trials, derive_seed(seed, 2), threads);
  return assemble(a, b, baseline, trials, seed);
}

}  // namespace searchlab
