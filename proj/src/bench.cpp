#include "stabq/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <random>
#include <stdexcept>

#include "stabq/interval_forest.hpp"
#include "stabq/interval_tree.hpp"
#include "stabq/segment_tree.hpp"

namespace stabq {

namespace {

using clock_type = std::chrono::steady_clock;

double elapsed_ms(clock_type::time_point start) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - start).count();
}

struct instance {
  std::function<topk_result(const query&, query_stats*)> run;
  double build_ms = 0.0;
  std::size_t copies = 0;
  // Hard per-query bounds, 0 = not applicable.
  std::size_t node_bound = 0;   // ST-PSA: visited nodes <= tree height
  bool touch_bound_k = false;   // ST-PSA: intervals touched <= k
  std::size_t tree_bound = 0;   // IF: trees visited <= p
};

instance build_instance(const std::string& name, const dataset& data) {
  instance inst;
  const auto start = clock_type::now();
  if (name == "ss") {
    auto ss = std::make_shared<seq_scan>(data);
    inst.build_ms = elapsed_ms(start);
    inst.copies = ss->stored_copies();
    inst.run = [ss](const query& q, query_stats* st) { return ss->topk(q, st); };
  } else if (name == "it") {
    auto tree = std::make_shared<interval_tree>(data);
    inst.build_ms = elapsed_ms(start);
    inst.copies = tree->stored_copies();
    inst.run = [tree](const query& q, query_stats* st) { return tree->topk(q, st); };
  } else if (name == "if") {
    auto forest = std::make_shared<interval_forest>(data);
    inst.build_ms = elapsed_ms(start);
    inst.copies = forest->stored_copies();
    inst.tree_bound = std::max<std::size_t>(forest->p(), 1);
    inst.run = [forest](const query& q, query_stats* st) { return forest->topk(q, st); };
  } else if (name == "st" || name == "sst") {
    auto seg = std::make_shared<segment_tree>(data);
    inst.build_ms = elapsed_ms(start);
    inst.copies = seg->stored_copies();
    if (name == "st") {
      inst.run = [seg](const query& q, query_stats* st) { return seg->topk(q, st); };
    } else {
      inst.run = [seg](const query& q, query_stats* st) { return seg->sorted_topk(q, st); };
    }
  } else if (name == "stpsa") {
    auto seg = std::make_shared<segment_tree>(data);
    seg->build_path_arrays(/*drop_canonical=*/true);
    inst.build_ms = elapsed_ms(start);
    inst.copies = seg->stored_copies();
    inst.node_bound = std::max<std::size_t>(seg->height(), 1);
    inst.touch_bound_k = true;
    inst.run = [seg](const query& q, query_stats* st) { return seg->psa_topk(q, st); };
  } else {
    std::string valid;
    for (const std::string& n : bench_algo_names()) {
      valid += valid.empty() ? n : "," + n;
    }
    throw std::invalid_argument("unknown algorithm: " + name + " (valid: " + valid + ")");
  }
  return inst;
}

dataset sample_dataset(const dataset& data, double rate, std::uint64_t seed) {
  if (rate >= 1.0) {
    return data;
  }
  dataset out;
  out.order = data.order;
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution keep(rate);
  bool first = true;
  for (const interval& x : data.intervals) {
    if (!keep(rng)) {
      continue;
    }
    out.intervals.push_back(x);
    if (first) {
      out.domain_min = x.l;
      out.domain_max = x.r;
      first = false;
    } else {
      out.domain_min = std::min(out.domain_min, x.l);
      out.domain_max = std::max(out.domain_max, x.r);
    }
  }
  return out;
}

double percentile(std::vector<double>& sorted_values, double p) {
  const std::size_t n = sorted_values.size();
  const std::size_t rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
  return sorted_values[std::min(n - 1, rank == 0 ? 0 : rank - 1)];
}

}  // namespace

std::vector<bench_row> run_bench(const dataset& data, const workload& wl, const bench_options& options) {
  if (wl.queries.empty()) {
    throw std::invalid_argument("workload is empty");
  }
  if (options.algos.empty()) {
    throw std::invalid_argument("no algorithms selected");
  }
  if (!(options.sample_rate > 0.0) || options.sample_rate > 1.0) {
    throw std::invalid_argument("sample rate must be in (0, 1]");
  }

  const dataset sampled = sample_dataset(data, options.sample_rate, options.seed);
  if (sampled.empty()) {
    throw std::invalid_argument("sampling produced an empty dataset");
  }

  std::vector<bench_row> rows;
  rows.reserve(options.algos.size());
  const std::size_t q_count = wl.queries.size();
  std::size_t sink = 0;

  for (const std::string& name : options.algos) {
    instance inst = build_instance(name, sampled);

    // Warm-up pass: collects counters and enforces the per-query bounds.
    query_stats stats;
    std::size_t nodes_total = 0;
    std::size_t touches_total = 0;
    std::size_t trees_total = 0;
    for (const query& q : wl.queries) {
      const topk_result result = inst.run(q, &stats);
      sink += result.size();
      nodes_total += stats.nodes_visited;
      touches_total += stats.intervals_touched;
      trees_total += stats.trees_visited;
      if (inst.node_bound != 0 && stats.nodes_visited > inst.node_bound) {
        throw std::logic_error("instrumentation bound violated: " + name + " visited " +
                               std::to_string(stats.nodes_visited) + " nodes, bound " +
                               std::to_string(inst.node_bound));
      }
      if (inst.touch_bound_k && stats.intervals_touched > q.k) {
        throw std::logic_error("instrumentation bound violated: " + name + " touched " +
                               std::to_string(stats.intervals_touched) + " intervals, bound k=" +
                               std::to_string(q.k));
      }
      if (inst.tree_bound != 0 && stats.trees_visited > inst.tree_bound) {
        throw std::logic_error("instrumentation bound violated: " + name + " visited " +
                               std::to_string(stats.trees_visited) + " trees, bound p=" +
                               std::to_string(inst.tree_bound));
      }
    }

    // Timed pass, counters off.
    const std::size_t repeats = std::max<std::size_t>(options.repeats, 1);
    std::vector<double> latencies_us;
    latencies_us.reserve(q_count);
    for (const query& q : wl.queries) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t rep = 0; rep < repeats; ++rep) {
        const auto start = clock_type::now();
        const topk_result result = inst.run(q, nullptr);
        const auto stop = clock_type::now();
        sink += result.size();
        best = std::min(best, std::chrono::duration<double, std::micro>(stop - start).count());
      }
      latencies_us.push_back(best);
    }

    bench_row row;
    row.algo = name;
    row.n = sampled.size();
    row.k = wl.queries.front().k;
    row.build_ms = inst.build_ms;
    row.copies = inst.copies;
    double sum = 0.0;
    for (double v : latencies_us) {
      sum += v;
    }
    row.mean_us = sum / static_cast<double>(q_count);
    std::sort(latencies_us.begin(), latencies_us.end());
    row.p50_us = percentile(latencies_us, 0.50);
    row.p99_us = percentile(latencies_us, 0.99);
    row.nodes_mean = static_cast<double>(nodes_total) / static_cast<double>(q_count);
    row.touches_mean = static_cast<double>(touches_total) / static_cast<double>(q_count);
    row.trees_mean = static_cast<double>(trees_total) / static_cast<double>(q_count);
    rows.push_back(std::move(row));
  }

  volatile std::size_t guard = sink;  // keep query results observable
  (void)guard;
  return rows;
}

std::string report_csv_header() {
  return "algo,n,k,build_ms,copies,mean_us,p50_us,p99_us,nodes_mean,touches_mean,trees_mean";
}

void write_report(std::ostream& out, std::span<const bench_row> rows) {
  out << report_csv_header() << '\n';
  for (const bench_row& row : rows) {
    out << row.algo << ',' << row.n << ',' << row.k << ',' << format_double(row.build_ms) << ','
        << row.copies << ',' << format_double(row.mean_us) << ',' << format_double(row.p50_us) << ','
        << format_double(row.p99_us) << ',' << format_double(row.nodes_mean) << ','
        << format_double(row.touches_mean) << ',' << format_double(row.trees_mean) << '\n';
  }
}

void write_report_csv(const std::string& path, std::span<const bench_row> rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path);
  }
  write_report(out, rows);
}

}  // namespace stabq
