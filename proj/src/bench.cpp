#include "netlint/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "netlint/detectors.hpp"
#include "netlint/generator.hpp"

namespace netlint {

namespace {

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return values[values.size() / 2];
}

template <typename F>
double timed_ms(F&& run) {
  auto t0 = std::chrono::steady_clock::now();
  run();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

std::vector<BenchRow> run_bench(std::span<const int> sizes, int k,
                                std::span<const std::string> detectors,
                                int reps) {
  if (reps < 1) throw ConfigError("bench needs at least one repetition");
  for (const std::string& d : detectors) {
    if (d != "exhaustive" && d != "spatialjoin") {
      throw ConfigError("unknown detector '" + d + "'");
    }
  }

  std::vector<BenchRow> rows;
  for (int n : sizes) {
    GenSpec spec;
    spec.n = n;
    spec.k = k;
    spec.seed = 0x5e11a5 + static_cast<std::uint64_t>(n);
    GeneratedNetwork gen = generate_network(spec);
    Network net = build_network(gen.features, gen.cfg);
    AttributeTable table = AttributeTable::from_network(net);

    for (const std::string& d : detectors) {
      std::vector<double> samples;
      samples.reserve(reps);
      std::size_t sink = 0;  // keep the detector calls observable
      for (int r = 0; r <= reps; ++r) {
        double ms = timed_ms([&] {
          if (d == "exhaustive") {
            sink += detect_exhaustive(table, gen.cfg).size();
          } else {
            sink += detect_spatialjoin(net, gen.cfg).size();
          }
        });
        if (r > 0) samples.push_back(ms);  // first run warms caches
      }
      (void)sink;
      rows.push_back(BenchRow{d, n, k, median_of(std::move(samples)), reps});
    }
  }
  return rows;
}

std::string bench_to_csv(const std::vector<BenchRow>& rows) {
  std::string out = "detector,n,k,median_ms,reps\n";
  char buf[160];
  for (const BenchRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%d,%d,%.3f,%d\n", r.detector.c_str(),
                  r.n, r.k, r.median_ms, r.reps);
    out += buf;
  }
  return out;
}

}  // namespace netlint
