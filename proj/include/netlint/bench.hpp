#pragma once

#include <span>
#include <string>
#include <vector>

namespace netlint {

struct BenchRow {
  std::string detector;
  int n = 0;
  int k = 0;
  double median_ms = 0.0;
  int reps = 0;
};

// Times each detector on clean generated networks of the given sizes and
// reports the median wall clock over `reps` runs per size. Single-threaded.
std::vector<BenchRow> run_bench(std::span<const int> sizes, int k,
                                std::span<const std::string> detectors,
                                int reps = 5);

// CSV with header detector,n,k,median_ms,reps.
std::string bench_to_csv(const std::vector<BenchRow>& rows);

}  // namespace netlint
