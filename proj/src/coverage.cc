#include "searchlab/coverage.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "searchlab/error.h"
#include "searchlab/parallel.h"

namespace searchlab {

namespace {

void check_node(const Graph &g, NodeId v) {
  if (!g.contains(v))
    throw Error(ErrorCode::kMismatch,
                "sample node " + std::to_string(v) + " out of range for n=" +
                    std::to_string(g.num_nodes()));
}

std::int32_t edge_id_or_throw(const Graph &g, NodeId a, NodeId b) {
  const std::int32_t id = g.edge_index(a, b);
  if (id < 0)
    throw Error(ErrorCode::kMismatch,
                "sample uses (" + std::to_string(a) + ", " +
                    std::to_string(b) + "), which is not an edge");
  return id;
}

double fraction(std::size_t covered, std::size_t total) {
  return total == 0 ? 1.0 : static_cast<double>(covered) / total;
}

// Union of m DFS trees drawn sequentially from one stream; returns the
// number of distinct edges covered after each draw.
template <typename OnDraw>
void draw_search_union(const Graph &g, Rng &rng, int m,
                       std::vector<char> &edge_hit, OnDraw &&on_draw) {
  std::size_t covered = 0;
  for (int i = 0; i < m; ++i) {
    const SearchRecord s = sample_dfs(g, rng);
    for (auto [p, c] : s.tree_edges) {
      const auto id = g.edge_index(p, c);
      if (!edge_hit[id]) {
        edge_hit[id] = 1;
        ++covered;
      }
    }
    if (!on_draw(i, covered)) return;
  }
}

}  // namespace

CoverageReport coverage_report(const Graph &g, const SampleSet &set) {
  const int n = g.num_nodes();
  CoverageReport report;
  report.occurrence_counts.assign(n, 0);
  std::vector<char> node_hit(n, 0);
  std::vector<char> edge_hit(g.num_edges(), 0);

  auto visit = [&](NodeId v) {
    check_node(g, v);
    ++report.occurrence_counts[v];
    node_hit[v] = 1;
  };

  if (set.kind == SampleKind::kWalks) {
    for (const WalkRecord &w : set.walks) {
      for (std::size_t i = 0; i < w.nodes.size(); ++i) {
        visit(w.nodes[i]);
        if (i > 0) edge_hit[edge_id_or_throw(g, w.nodes[i - 1], w.nodes[i])] = 1;
      }
    }
  } else {
    for (const SearchRecord &s : set.searches) {
      for (NodeId v : s.visit_order) visit(v);
      for (auto [p, c] : s.tree_edges) {
        check_node(g, p);
        check_node(g, c);
        edge_hit[edge_id_or_throw(g, p, c)] = 1;
      }
    }
  }

  const auto nodes_covered = std::count(node_hit.begin(), node_hit.end(), 1);
  for (std::size_t id = 0; id < edge_hit.size(); ++id)
    if (edge_hit[id]) report.covered_edges.push_back(g.edges()[id]);
  report.node_fraction = fraction(nodes_covered, n);
  report.edge_fraction = fraction(report.covered_edges.size(), g.num_edges());
  return report;
}

// ---- escape sets and edge inclusion ------------------------------------

EscapeSet escape_set(const Graph &g, Edge e, NodeId side) {
  if (!g.has_edge(e.u, e.v))
    throw Error(ErrorCode::kInvalidArgument,
                "escape_set: (" + std::to_string(e.u) + ", " +
                    std::to_string(e.v) + ") is not an edge");
  if (side != e.u && side != e.v)
    throw Error(ErrorCode::kInvalidArgument,
                "escape_set: side must be an endpoint of the edge");
  const NodeId u = side;
  const NodeId v = side == e.u ? e.v : e.u;

  // A simple u->v path starting (u, w) continues w->v without touching u
  // again, so S_u(e) is the set of u's neighbours in v's component of G - u.
  std::vector<char> reach(g.num_nodes(), 0);
  std::vector<NodeId> stack{v};
  reach[v] = 1;
  reach[u] = 1;  // blocked
  while (!stack.empty()) {
    const NodeId x = stack.back();
    stack.pop_back();
    for (NodeId y : g.neighbors(x)) {
      if (!reach[y]) {
        reach[y] = 1;
        stack.push_back(y);
      }
    }
  }
  EscapeSet out;
  out.edge = e;
  out.side = u;
  for (NodeId w : g.neighbors(u))
    if (w != v && reach[w]) out.members.push_back(w);
  return out;
}

InclusionBounds inclusion_bounds(const Graph &g, Edge e) {
  const int tau_u = escape_set(g, e, e.u).tau();
  const int tau_v = escape_set(g, e, e.v).tau();
  InclusionBounds b;
  b.tau_bound = Rational(1, std::max(tau_u, tau_v) + 1);
  b.degree_bound = Rational(1, std::max(g.degree(e.u), g.degree(e.v)));
  b.dmax_bound = Rational(1, degree_stats(g).d_max);
  return b;
}

namespace {

bool bounds_ordered(const InclusionBounds &b) {
  return b.tau_bound >= b.degree_bound && b.degree_bound >= b.dmax_bound;
}

EdgeInclusion exact_from_probability(const Graph &g, Edge e, Rational p) {
  EdgeInclusion out;
  out.edge = e;
  out.bounds = inclusion_bounds(g, e);
  out.probability = to_double(p);
  out.bound_holds = p >= out.bounds.tau_bound && bounds_ordered(out.bounds);
  out.exact = std::move(p);
  return out;
}

}  // namespace

std::vector<EdgeInclusion> edge_inclusion_exact_all(const Graph &g,
                                                    double budget) {
  const auto outcomes = enumerate_dfs(g, budget);
  std::vector<Rational> prob(g.num_edges(), Rational(0));
  for (const DfsOutcome &o : outcomes)
    for (auto [p, c] : o.record.tree_edges) prob[g.edge_index(p, c)] += o.probability;
  std::vector<EdgeInclusion> out;
  out.reserve(g.num_edges());
  for (std::size_t id = 0; id < g.num_edges(); ++id)
    out.push_back(exact_from_probability(g, g.edges()[id], prob[id]));
  return out;
}

EdgeInclusion edge_inclusion_exact(const Graph &g, Edge e, double budget) {
  const auto id = g.edge_index(e.u, e.v);
  if (id < 0)
    throw Error(ErrorCode::kInvalidArgument, "edge_inclusion: not an edge");
  const auto outcomes = enumerate_dfs(g, budget);
  Rational p(0);
  for (const DfsOutcome &o : outcomes)
    for (auto [a, b] : o.record.tree_edges)
      if (g.edge_index(a, b) == id) p += o.probability;
  return exact_from_probability(g, g.edges()[id], std::move(p));
}

EdgeInclusion edge_inclusion_monte_carlo(const Graph &g, Edge e,
                                         const MonteCarlo &mc) {
  const auto id = g.edge_index(e.u, e.v);
  if (id < 0)
    throw Error(ErrorCode::kInvalidArgument, "edge_inclusion: not an edge");
  if (mc.trials == 0)
    throw Error(ErrorCode::kInvalidArgument, "edge_inclusion: trials must be >= 1");
  std::vector<char> hit(mc.trials, 0);
  parallel_for(mc.trials, mc.threads, [&](std::size_t t) {
    Rng rng = Rng::for_stream(mc.seed, t);
    const SearchRecord s = sample_dfs(g, rng);
    for (auto [a, b] : s.tree_edges)
      if (g.edge_index(a, b) == id) hit[t] = 1;
  });
  const auto hits = std::count(hit.begin(), hit.end(), 1);
  EdgeInclusion out;
  out.edge = g.edges()[id];
  out.bounds = inclusion_bounds(g, out.edge);
  out.trials = mc.trials;
  out.probability = static_cast<double>(hits) / mc.trials;
  out.std_error =
      std::sqrt(out.probability * (1.0 - out.probability) / mc.trials);
  out.bound_holds = out.probability + 2.0 * out.std_error >=
                        to_double(out.bounds.tau_bound) &&
                    bounds_ordered(out.bounds);
  return out;
}

// ---- sample-size bound ---------------------------------------------------

BoundResult sample_bound_m(const BoundQuery &q) {
  if (!(q.delta > 0.0 && q.delta < 1.0))
    throw Error(ErrorCode::kInvalidArgument, "delta must lie in (0, 1)");
  if (!(q.c * q.n >= 1.0))
    throw Error(ErrorCode::kInvalidArgument, "C * n must be at least 1");
  BoundResult r;
  r.query = q;
  if (q.d_max <= 1) {
    r.degenerate = true;
    r.m_required = 1;
    r.raw = 1.0;
    return r;
  }
  const double d = q.d_max;
  r.raw = std::log(q.c * q.n / q.delta) / std::log(d / (d - 1.0));
  // Guard against ln round-off pushing an exact integer just above itself.
  r.m_required = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil(r.raw - 1e-9)));
  return r;
}

BoundQuery bound_query_for(const Graph &g, double delta) {
  const DegreeStats stats = degree_stats(g);
  BoundQuery q;
  q.c = stats.sparsity_c;
  q.n = g.num_nodes();
  q.d_max = stats.d_max;
  q.delta = delta;
  return q;
}

CoverageProbability full_coverage_probability(const Graph &g, int m,
                                              const MonteCarlo &mc) {
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "m must be at least 1");
  if (mc.trials == 0)
    throw Error(ErrorCode::kInvalidArgument, "trials must be at least 1");
  if (!g.is_connected() || g.num_nodes() == 0)
    throw Error(ErrorCode::kDisconnected,
                "full_coverage_probability: graph is not connected");
  const std::size_t total = g.num_edges();
  std::vector<char> success(mc.trials, 0);
  parallel_for(mc.trials, mc.threads, [&](std::size_t t) {
    Rng rng = Rng::for_stream(mc.seed, t);
    std::vector<char> edge_hit(total, 0);
    bool full = total == 0;
    draw_search_union(g, rng, m, edge_hit, [&](int, std::size_t covered) {
      full = covered == total;
      return !full;
    });
    success[t] = full;
  });
  CoverageProbability out;
  out.trials = mc.trials;
  out.successes = std::count(success.begin(), success.end(), 1);
  out.rate = static_cast<double>(out.successes) / out.trials;
  out.std_error = std::sqrt(out.rate * (1.0 - out.rate) / out.trials);
  return out;
}

// ---- cover times -----------------------------------------------------------

namespace {

double quantile(const std::vector<std::int64_t> &sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * (sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - lo;
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

}  // namespace

CoverTimeReport cover_time_estimate(const Graph &g, const WalkParams &policy,
                                    CoverTarget target, const MonteCarlo &mc,
                                    std::int64_t cap) {
  WalkParams params = policy;
  params.length = 1;
  require_walkable(g, params);
  if (mc.trials == 0)
    throw Error(ErrorCode::kInvalidArgument, "trials must be at least 1");
  const std::int64_t n = g.num_nodes();
  CoverTimeReport report;
  report.cap = cap > 0 ? cap : 50 * n * n;
  report.steps.assign(mc.trials, -1);

  parallel_for(mc.trials, mc.threads, [&](std::size_t t) {
    Rng rng = Rng::for_stream(mc.seed, t);
    const auto start = static_cast<NodeId>(rng.below(g.num_nodes()));
    Walker walker(g, params, start);
    std::vector<char> hit(target == CoverTarget::kNodes ? g.num_nodes()
                                                        : g.num_edges(),
                          0);
    std::size_t remaining = hit.size();
    if (target == CoverTarget::kNodes) {
      hit[start] = 1;
      --remaining;
    }
    std::int64_t steps = 0;
    while (remaining > 0 && steps < report.cap) {
      const NodeId from = walker.position();
      const NodeId to = walker.step(rng);
      ++steps;
      const std::size_t slot = target == CoverTarget::kNodes
                                   ? static_cast<std::size_t>(to)
                                   : static_cast<std::size_t>(g.edge_index(from, to));
      if (!hit[slot]) {
        hit[slot] = 1;
        --remaining;
      }
    }
    report.steps[t] = remaining == 0 ? steps : -1;
  });

  std::vector<std::int64_t> done;
  for (auto s : report.steps) {
    if (s < 0) {
      ++report.censored;
    } else {
      done.push_back(s);
    }
  }
  std::sort(done.begin(), done.end());
  if (!done.empty()) {
    double sum = 0.0;
    for (auto s : done) sum += static_cast<double>(s);
    report.mean = sum / done.size();
  }
  report.q10 = quantile(done, 0.1);
  report.q50 = quantile(done, 0.5);
  report.q90 = quantile(done, 0.9);
  return report;
}

// ---- coverage curves -------------------------------------------------------

std::vector<CurveRow> coverage_curve(const Graph &g,
                                     const std::vector<SampleKind> &kinds,
                                     const std::vector<int> &m_list,
                                     const WalkParams &walk_params,
                                     const MonteCarlo &mc) {
  if (m_list.empty())
    throw Error(ErrorCode::kInvalidArgument, "m_list must not be empty");
  if (mc.trials == 0)
    throw Error(ErrorCode::kInvalidArgument, "trials must be at least 1");
  for (int m : m_list)
    if (m < 1) throw Error(ErrorCode::kInvalidArgument, "every m must be >= 1");
  const int m_max = *std::max_element(m_list.begin(), m_list.end());
  WalkParams walk = walk_params;
  if (walk.length <= 0) walk.length = g.num_nodes();

  std::vector<CurveRow> rows;
  for (SampleKind kind : kinds) {
    if (kind == SampleKind::kWalks) {
      require_walkable(g, walk);
    } else if (!g.is_connected() || g.num_nodes() == 0) {
      throw Error(ErrorCode::kDisconnected, "coverage_curve: graph is not connected");
    }
    // per_trial[t][k] = (node fraction, edge fraction) after k+1 samples.
    std::vector<std::vector<std::pair<double, double>>> per_trial(mc.trials);
    const std::uint64_t stream_tag = kind == SampleKind::kWalks ? 1 : 0;
    parallel_for(mc.trials, mc.threads, [&](std::size_t t) {
      Rng rng = Rng::for_stream(mc.seed, 2 * t + stream_tag);
      std::vector<char> node_hit(g.num_nodes(), 0);
      std::vector<char> edge_hit(g.num_edges(), 0);
      std::size_t nodes = 0;
      std::size_t edges = 0;
      auto &out = per_trial[t];
      out.reserve(m_max);
      for (int k = 0; k < m_max; ++k) {
        if (kind == SampleKind::kWalks) {
          const WalkRecord w = sample_walk(g, walk, rng);
          for (std::size_t i = 0; i < w.nodes.size(); ++i) {
            if (!node_hit[w.nodes[i]]) {
              node_hit[w.nodes[i]] = 1;
              ++nodes;
            }
            if (i == 0) continue;
            const auto id = g.edge_index(w.nodes[i - 1], w.nodes[i]);
            if (!edge_hit[id]) {
              edge_hit[id] = 1;
              ++edges;
            }
          }
        } else {
          const SearchRecord s = sample_dfs(g, rng);
          for (NodeId v : s.visit_order) {
            if (!node_hit[v]) {
              node_hit[v] = 1;
              ++nodes;
            }
          }
          for (auto [p, c] : s.tree_edges) {
            const auto id = g.edge_index(p, c);
            if (!edge_hit[id]) {
              edge_hit[id] = 1;
              ++edges;
            }
          }
        }
        out.emplace_back(fraction(nodes, g.num_nodes()),
                         fraction(edges, g.num_edges()));
      }
    });
    for (int m : m_list) {
      double node_sum = 0.0;
      double edge_sum = 0.0;
      for (const auto &trial : per_trial) {
        node_sum += trial[m - 1].first;
        edge_sum += trial[m - 1].second;
      }
      CurveRow row;
      row.kind = kind;
      row.m = m;
      row.node_frac_mean = node_sum / mc.trials;
      row.edge_frac_mean = edge_sum / mc.trials;
      row.trials = mc.trials;
      row.seed = mc.seed;
      rows.push_back(row);
    }
  }
  return rows;
}

std::string curve_csv(const std::vector<CurveRow> &rows) {
  std::string out = "kind,m,node_frac_mean,edge_frac_mean,trials,seed\n";
  char buf[256];
  for (const CurveRow &r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%d,%.6f,%.6f,%zu,%llu\n",
                  std::string(to_string(r.kind)).c_str(), r.m,
                  r.node_frac_mean, r.edge_frac_mean, r.trials,
                  static_cast<unsigned long long>(r.seed));
    out += buf;
  }
  return out;
}

}  // namespace searchlab
