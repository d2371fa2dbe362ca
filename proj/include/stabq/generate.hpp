#pragma once

// Seeded synthetic dataset and workload generation. Left endpoints are
// uniform over [0, domain]; lengths come from "uniform:a,b" or
// "pareto:alpha,xmin" (pareto gives the heavy-overlap regime); weights
// default to "gaussian:5000,1500". An optional snap step rounds endpoints
// onto a coarse grid, mimicking price/timestamp data whose values repeat.

#include <cstdint>
#include <string>
#include <vector>

#include "stabq/core.hpp"
#include "stabq/csv.hpp"

namespace stabq {

struct length_spec {
  enum class kind { uniform, pareto };
  kind dist = kind::uniform;
  double a = 0.0;  // uniform lower bound / pareto alpha
  double b = 0.0;  // uniform upper bound / pareto xmin
};

struct weight_spec {
  enum class kind { gaussian, uniform };
  kind dist = kind::gaussian;
  double a = 5000.0;  // gaussian mean / uniform lower bound
  double b = 1500.0;  // gaussian stddev / uniform upper bound
};

// Both parsers throw std::invalid_argument on a malformed spec string.
[[nodiscard]] length_spec parse_length_spec(const std::string& text);
[[nodiscard]] weight_spec parse_weight_spec(const std::string& text);

struct gen_params {
  std::size_t n = 0;
  double domain = 0.0;  // left endpoints drawn from [0, domain]
  length_spec length;
  weight_spec weight;
  double snap = 0.0;  // 0 = off; otherwise endpoints rounded to multiples
  std::uint64_t seed = 1;
};

[[nodiscard]] std::vector<record> generate_records(const gen_params& params);

// `count` stabbing values uniform over the dataset domain, constant k.
[[nodiscard]] workload generate_workload(const dataset& data, std::size_t count, std::size_t k,
                                         std::uint64_t seed);

}  // namespace stabq
