#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "searchlab/graph.h"
#include "searchlab/samplers.h"

namespace searchlab {

struct BenchRow {
  SampleKind kind = SampleKind::kSearches;
  int n = 0;
  int m = 0;
  double mean_us = 0.0;  // wall time per sample
};

struct BenchConfig {
  Family family = Family::kCycle;
  std::vector<int> sizes{64, 128, 256};
  int m = 2000;       // samples per timing run
  int repeats = 7;    // timing runs per point; the fastest is reported
  std::uint64_t seed = 0;
};

// Times walks of length n and searches on family(n) for every size.
std::vector<BenchRow> bench_samplers(const BenchConfig &config);

std::string bench_csv(const std::vector<BenchRow> &rows);

}  // namespace searchlab
