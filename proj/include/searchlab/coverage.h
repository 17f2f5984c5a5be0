#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "searchlab/graph.h"
#include "searchlab/rational.h"
#include "searchlab/samplers.h"

namespace searchlab {

struct CoverageReport {
  double node_fraction = 0.0;
  double edge_fraction = 0.0;
  EdgeList covered_edges;  // sorted
  // Per-node number of occurrences across all sequence positions.
  std::vector<std::int64_t> occurrence_counts;
};

// Walks cover the edges they traverse; searches cover their tree edges.
CoverageReport coverage_report(const Graph &g, const SampleSet &set);

// ---- escape sets and edge inclusion ------------------------------------

struct EscapeSet {
  Edge edge;
  NodeId side = 0;               // the endpoint u
  std::vector<NodeId> members;   // S_u(e), sorted
  int tau() const noexcept { return static_cast<int>(members.size()); }
};

// Neighbours w != v of u from which v is reachable in G without e and
// without returning to u, i.e. the first hops of u->v paths avoiding e.
EscapeSet escape_set(const Graph &g, Edge e, NodeId side);

struct InclusionBounds {
  Rational tau_bound;     // min{1/(tau_u+1), 1/(tau_v+1)}
  Rational degree_bound;  // 1/max{deg u, deg v}
  Rational dmax_bound;    // 1/d_max
};

InclusionBounds inclusion_bounds(const Graph &g, Edge e);

struct EdgeInclusion {
  Edge edge;
  std::optional<Rational> exact;  // exact mode only
  double probability = 0.0;       // exact value or Monte-Carlo estimate
  double std_error = 0.0;         // 0 in exact mode
  std::size_t trials = 0;         // 0 in exact mode
  InclusionBounds bounds;
  // Exact: probability >= tau_bound >= degree_bound >= dmax_bound.
  // Monte-Carlo: probability + 2 std_error >= tau_bound, plus the exact
  // ordering of the bounds themselves.
  bool bound_holds = false;
};

struct MonteCarlo {
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  int threads = 1;
};

EdgeInclusion edge_inclusion_exact(const Graph &g, Edge e,
                                   double budget = kDefaultEnumerationBudget);
EdgeInclusion edge_inclusion_monte_carlo(const Graph &g, Edge e,
                                         const MonteCarlo &mc);
// One enumeration for all edges, in edges() order.
std::vector<EdgeInclusion> edge_inclusion_exact_all(
    const Graph &g, double budget = kDefaultEnumerationBudget);

// ---- sample-size bound ---------------------------------------------------

struct BoundQuery {
  double c = 1.0;      // sparsity constant, |E| <= C |V|
  double n = 1.0;      // |V|
  int d_max = 2;
  double delta = 0.1;  // failure probability
};

struct BoundResult {
  BoundQuery query;
  std::int64_t m_required = 1;
  double raw = 0.0;  // the unrounded right-hand side
  // d_max <= 1: the logarithm degenerates; every such graph is a tree (or a
  // single edge) and one search already covers it.
  bool degenerate = false;
};

// m = ceil( ln(C n / delta) / ln(d_max / (d_max - 1)) ), clamped to >= 1.
BoundResult sample_bound_m(const BoundQuery &q);
BoundQuery bound_query_for(const Graph &g, double delta);

struct CoverageProbability {
  std::size_t successes = 0;
  std::size_t trials = 0;
  double rate = 0.0;
  double std_error = 0.0;  // binomial, sqrt(p (1 - p) / trials)
};

// Fraction of trials in which the union of m random DFS trees is all of E.
CoverageProbability full_coverage_probability(const Graph &g, int m,
                                              const MonteCarlo &mc);

// ---- cover times -----------------------------------------------------------

enum class CoverTarget { kNodes, kEdges };

struct CoverTimeReport {
  std::vector<std::int64_t> steps;  // per trial; -1 when censored
  std::size_t censored = 0;
  std::int64_t cap = 0;
  double mean = 0.0;  // over uncensored trials
  double q10 = 0.0, q50 = 0.0, q90 = 0.0;
};

// cap <= 0 selects the default 50 n^2.
CoverTimeReport cover_time_estimate(const Graph &g, const WalkParams &policy,
                                    CoverTarget target, const MonteCarlo &mc,
                                    std::int64_t cap = 0);

// ---- coverage curves -------------------------------------------------------

struct CurveRow {
  SampleKind kind = SampleKind::kSearches;
  int m = 0;
  double node_frac_mean = 0.0;
  double edge_frac_mean = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

// Trial t draws max(m_list) samples from Rng::for_stream(seed, t) and scores
// every prefix, so the curve is coupled across m. walk_params.length <= 0
// selects walks of length n.
std::vector<CurveRow> coverage_curve(const Graph &g,
                                     const std::vector<SampleKind> &kinds,
                                     const std::vector<int> &m_list,
                                     const WalkParams &walk_params,
                                     const MonteCarlo &mc);

std::string curve_csv(const std::vector<CurveRow> &rows);

}  // namespace searchlab
