#include "stabq/generate.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace stabq {

namespace {

bool split_two(const std::string& text, const std::string& name, double& a, double& b) {
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos || text.substr(0, colon) != name) {
    return false;
  }
  const std::size_t comma = text.find(',', colon + 1);
  if (comma == std::string::npos) {
    return false;
  }
  try {
    std::size_t used = 0;
    const std::string first = text.substr(colon + 1, comma - colon - 1);
    const std::string second = text.substr(comma + 1);
    a = std::stod(first, &used);
    if (used != first.size()) {
      return false;
    }
    b = std::stod(second, &used);
    if (used != second.size()) {
      return false;
    }
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

double snap_to(double v, double step) {
  if (step <= 0.0) {
    return v;
  }
  return std::round(v / step) * step;
}

}  // namespace

length_spec parse_length_spec(const std::string& text) {
  length_spec spec;
  if (split_two(text, "uniform", spec.a, spec.b)) {
    spec.dist = length_spec::kind::uniform;
    if (spec.a < 0.0 || spec.b < spec.a) {
      throw std::invalid_argument("invalid uniform length bounds: " + text);
    }
    return spec;
  }
  if (split_two(text, "pareto", spec.a, spec.b)) {
    spec.dist = length_spec::kind::pareto;
    if (spec.a <= 0.0 || spec.b <= 0.0) {
      throw std::invalid_argument("invalid pareto parameters: " + text);
    }
    return spec;
  }
  throw std::invalid_argument("bad length distribution (expected uniform:a,b or pareto:alpha,xmin): " + text);
}

weight_spec parse_weight_spec(const std::string& text) {
  weight_spec spec;
  if (split_two(text, "gaussian", spec.a, spec.b)) {
    spec.dist = weight_spec::kind::gaussian;
    if (spec.b < 0.0) {
      throw std::invalid_argument("invalid gaussian stddev: " + text);
    }
    return spec;
  }
  if (split_two(text, "uniform", spec.a, spec.b)) {
    spec.dist = weight_spec::kind::uniform;
    if (spec.b < spec.a) {
      throw std::invalid_argument("invalid uniform weight bounds: " + text);
    }
    return spec;
  }
  throw std::invalid_argument("bad weight distribution (expected gaussian:mean,stddev or uniform:a,b): " + text);
}

std::vector<record> generate_records(const gen_params& params) {
  if (params.n == 0) {
    throw std::invalid_argument("n must be >= 1");
  }
  if (params.domain < 0.0 || !std::isfinite(params.domain)) {
    throw std::invalid_argument("domain must be finite and non-negative");
  }

  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> left_dist(0.0, params.domain);
  std::uniform_real_distribution<double> unit(std::numeric_limits<double>::min(), 1.0);
  // sigma 0 is a legal spec (constant weights); keep the distribution valid
  // and short-circuit the draw below.
  std::normal_distribution<double> gauss(params.weight.a, params.weight.b > 0.0 ? params.weight.b : 1.0);

  std::vector<record> records;
  records.reserve(params.n);
  for (std::size_t i = 0; i < params.n; ++i) {
    double l = left_dist(rng);
    double len = params.length.dist == length_spec::kind::uniform
                     ? params.length.a + (params.length.b - params.length.a) * unit(rng)
                     : params.length.b * std::pow(unit(rng), -1.0 / params.length.a);
    double w = 0.0;
    if (params.weight.dist == weight_spec::kind::gaussian) {
      w = params.weight.b > 0.0 ? gauss(rng) : params.weight.a;
    } else {
      w = params.weight.a + (params.weight.b - params.weight.a) * unit(rng);
    }
    l = snap_to(l, params.snap);
    len = snap_to(len, params.snap);
    records.push_back(record{static_cast<std::uint64_t>(i + 1), l, l + len, w});
  }
  return records;
}

workload generate_workload(const dataset& data, std::size_t count, std::size_t k, std::uint64_t seed) {
  if (data.empty()) {
    throw std::invalid_argument("cannot generate queries for an empty dataset");
  }
  if (k == 0) {
    throw std::invalid_argument("k must be >= 1");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> s_dist(data.domain_min, data.domain_max);
  workload wl;
  wl.queries.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    wl.queries.push_back(query{s_dist(rng), k});
  }
  return wl;
}

}  // namespace stabq
