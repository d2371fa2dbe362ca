#pragma once

// Cross-algorithm verification: every algorithm must reproduce the
// brute-force oracle id-for-id, in order, on every query.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stabq/core.hpp"
#include "stabq/csv.hpp"

namespace stabq {

class interval_tree;
class interval_forest;
class segment_tree;

struct algo_run {
  std::string name;
  std::function<topk_result(const query&, query_stats*)> run;
};

struct divergence {
  std::string algo;
  std::size_t query_index = 0;  // 0-based position in the workload
  query q;
  std::vector<std::uint64_t> expected_ids;
  std::vector<std::uint64_t> got_ids;
};

struct verify_report {
  std::size_t queries = 0;
  std::size_t algorithms = 0;
  std::optional<divergence> first_divergence;

  [[nodiscard]] bool ok() const noexcept { return !first_divergence.has_value(); }
};

// Owns one instance of each standard algorithm: ss, it, if, sst, stpsa.
// One segment tree serves both sst and stpsa (path arrays built, canonical
// sets kept).
class algorithm_suite {
 public:
  explicit algorithm_suite(const dataset& data);
  ~algorithm_suite();
  algorithm_suite(algorithm_suite&&) noexcept;
  algorithm_suite& operator=(algorithm_suite&&) noexcept;

  [[nodiscard]] const std::vector<algo_run>& runs() const noexcept { return runs_; }

  [[nodiscard]] const seq_scan& ss() const noexcept;
  [[nodiscard]] const interval_tree& it() const noexcept;
  [[nodiscard]] const interval_forest& forest() const noexcept;
  [[nodiscard]] const segment_tree& seg() const noexcept;

 private:
  struct impl;
  std::unique_ptr<impl> impl_;
  std::vector<algo_run> runs_;
};

// Compares each algorithm's output against oracle_topk on every query,
// stopping at the first divergence.
[[nodiscard]] verify_report verify_against(const dataset& data, const workload& wl,
                                           std::span<const algo_run> algorithms);

// verify_against over the standard suite.
[[nodiscard]] verify_report run_verify(const dataset& data, const workload& wl);

// Deterministic one-line summary / divergence description for reports.
[[nodiscard]] std::string describe(const verify_report& report, std::size_t dataset_size);

}  // namespace stabq
