#pragma once

// Instrumented micro-benchmark runner. Per selected algorithm: build the
// index (timed), one warm-up pass over the workload collecting the
// instrumentation counters and enforcing the per-query bounds, then one
// timed pass on a monotonic clock. Memory is reported as counted stored
// interval copies, not process RSS.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "stabq/core.hpp"
#include "stabq/csv.hpp"

namespace stabq {

inline const std::vector<std::string>& bench_algo_names() {
  static const std::vector<std::string> names = {"ss", "it", "if", "st", "sst", "stpsa"};
  return names;
}

struct bench_options {
  std::vector<std::string> algos = bench_algo_names();
  double sample_rate = 1.0;  // Bernoulli keep-probability
  std::uint64_t seed = 1;    // sampling seed
  // Timing samples per query; the recorded latency is the per-query minimum,
  // which filters scheduler noise out of short-query measurements.
  std::size_t repeats = 1;
};

struct bench_row {
  std::string algo;
  std::size_t n = 0;
  std::size_t k = 0;
  double build_ms = 0.0;
  std::size_t copies = 0;
  double mean_us = 0.0;
  double p50_us = 0.0;
  double p99_us = 0.0;
  double nodes_mean = 0.0;
  double touches_mean = 0.0;
  double trees_mean = 0.0;  // interval forest only, 0 elsewhere
};

[[nodiscard]] std::vector<bench_row> run_bench(const dataset& data, const workload& wl,
                                               const bench_options& options);

[[nodiscard]] std::string report_csv_header();
void write_report(std::ostream& out, std::span<const bench_row> rows);
void write_report_csv(const std::string& path, std::span<const bench_row> rows);

}  // namespace stabq
