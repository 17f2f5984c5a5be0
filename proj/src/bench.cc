#include "searchlab/bench.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>

#include "searchlab/error.h"

namespace searchlab {

namespace {

template <typename Draw>
double time_per_sample_us(int m, int repeats, std::uint64_t seed, Draw &&draw) {
  double best = std::numeric_limits<double>::infinity();
  std::size_t sink = 0;
  for (int r = 0; r < repeats; ++r) {
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < m; ++i) {
      Rng rng = Rng::for_stream(seed, static_cast<std::uint64_t>(i));
      sink += draw(rng);
    }
    const std::chrono::duration<double, std::micro> elapsed =
        std::chrono::steady_clock::now() - start;
    best = std::min(best, elapsed.count() / m);
  }
  // Keep the sampled data observable so the loop is not elided.
  if (sink == std::numeric_limits<std::size_t>::max()) std::puts("");
  return best;
}

}  // namespace

std::vector<BenchRow> bench_samplers(const BenchConfig &config) {
  if (config.m < 1 || config.repeats < 1)
    throw Error(ErrorCode::kInvalidArgument, "bench needs m >= 1 and repeats >= 1");
  std::vector<BenchRow> rows;
  for (SampleKind kind : {SampleKind::kWalks, SampleKind::kSearches}) {
    for (int n : config.sizes) {
      FamilySpec spec;
      spec.family = config.family;
      spec.n = n;
      spec.k = std::max(1, n / 7);
      spec.avg_deg = 3.0;
      const Graph g = gen_family(spec, config.seed);
      BenchRow row;
      row.kind = kind;
      row.n = g.num_nodes();
      row.m = config.m;
      if (kind == SampleKind::kWalks) {
        WalkParams params;
        params.length = g.num_nodes();
        row.mean_us = time_per_sample_us(config.m, config.repeats, config.seed,
                                         [&](Rng &rng) {
                                           return sample_walk(g, params, rng).nodes.back();
                                         });
      } else {
        row.mean_us = time_per_sample_us(config.m, config.repeats, config.seed,
                                         [&](Rng &rng) {
                                           return sample_dfs(g, rng).visit_order.back();
                                         });
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow> &rows) {
  std::string out = "kind,n,m,mean_us\n";
  char buf[128];
  for (const BenchRow &r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%d,%d,%.4f\n",
                  std::string(to_string(r.kind)).c_str(), r.n, r.m, r.mean_us);
    out += buf;
  }
  return out;
}

}  // namespace searchlab
