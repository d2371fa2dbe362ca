#pragma once

// File formats used by the CLI:
//   dataset  CSV, header "id,l,r,w"
//   workload CSV, header "s,k"
//   report   CSV, header "algo,n,k,build_ms,copies,mean_us,p50_us,p99_us,
//                         nodes_mean,touches_mean,trees_mean"
// Floats are written in shortest round-trip form, so identical inputs give
// byte-identical files.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "stabq/core.hpp"

namespace stabq {

struct workload {
  std::vector<query> queries;
};

// Parse or validation failure in a CSV file, carrying the 1-based line.
class csv_error : public std::runtime_error {
 public:
  csv_error(const std::string& path, std::size_t line, const std::string& message)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + message), line_(line) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

[[nodiscard]] std::string format_double(double v);

[[nodiscard]] dataset load_dataset_csv(const std::string& path, weight_order order = weight_order::max);
void write_dataset_csv(const std::string& path, std::span<const record> records);

[[nodiscard]] workload load_workload_csv(const std::string& path);
void write_workload_csv(const std::string& path, const workload& wl);

}  // namespace stabq
