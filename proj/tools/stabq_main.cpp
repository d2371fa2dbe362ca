// stabq: generate, verify, benchmark, and query top-k weighted stabbing
// indexes over interval CSV files.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error.

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stabq/bench.hpp"
#include "stabq/core.hpp"
#include "stabq/csv.hpp"
#include "stabq/generate.hpp"
#include "stabq/interval_forest.hpp"
#include "stabq/interval_tree.hpp"
#include "stabq/segment_tree.hpp"
#include "stabq/verify.hpp"

namespace {

stabq::weight_order parse_order(const std::string& text) {
  if (text == "max") {
    return stabq::weight_order::max;
  }
  if (text == "min") {
    return stabq::weight_order::min;
  }
  throw std::invalid_argument("order must be max or min");
}

int cmd_gen(const std::string& out, std::size_t n, double domain, const std::string& length_text,
            const std::string& weight_text, double snap, std::uint64_t seed) {
  stabq::gen_params params;
  params.n = n;
  params.domain = domain;
  params.length = stabq::parse_length_spec(length_text);
  params.weight = stabq::parse_weight_spec(weight_text);
  params.snap = snap;
  params.seed = seed;
  const std::vector<stabq::record> records = stabq::generate_records(params);
  stabq::write_dataset_csv(out, records);
  return 0;
}

int cmd_queries(const std::string& dataset_path, const std::string& out, std::size_t count, std::size_t k,
                std::uint64_t seed) {
  const stabq::dataset data = stabq::load_dataset_csv(dataset_path);
  const stabq::workload wl = stabq::generate_workload(data, count, k, seed);
  stabq::write_workload_csv(out, wl);
  return 0;
}

int cmd_verify(const std::string& dataset_path, const std::string& workload_path) {
  const stabq::dataset data = stabq::load_dataset_csv(dataset_path);
  const stabq::workload wl = stabq::load_workload_csv(workload_path);
  const stabq::verify_report report = stabq::run_verify(data, wl);
  std::cout << stabq::describe(report, data.size()) << '\n';
  return report.ok() ? 0 : 1;
}

int cmd_bench(const std::string& dataset_path, const std::string& workload_path, const std::string& algos_text,
              double sample_rate, const std::string& order_text, std::uint64_t seed, std::size_t repeats,
              const std::string& out) {
  const stabq::dataset data = stabq::load_dataset_csv(dataset_path, parse_order(order_text));
  const stabq::workload wl = stabq::load_workload_csv(workload_path);

  stabq::bench_options options;
  options.sample_rate = sample_rate;
  options.seed = seed;
  options.repeats = repeats;
  options.algos.clear();
  std::size_t start = 0;
  while (start <= algos_text.size()) {
    const std::size_t comma = algos_text.find(',', start);
    const std::string name =
        comma == std::string::npos ? algos_text.substr(start) : algos_text.substr(start, comma - start);
    if (!name.empty()) {
      options.algos.push_back(name);
    }
    if (comma == std::string::npos) {
      break;
    }
    start = comma + 1;
  }

  const std::vector<stabq::bench_row> rows = stabq::run_bench(data, wl, options);
  if (out.empty()) {
    stabq::write_report(std::cout, rows);
  } else {
    stabq::write_report_csv(out, rows);
  }
  return 0;
}

int cmd_query(const std::string& dataset_path, const std::string& algo, double s, std::size_t k,
              const std::string& order_text) {
  if (k == 0) {
    throw std::invalid_argument("k must be >= 1");
  }
  const stabq::dataset data = stabq::load_dataset_csv(dataset_path, parse_order(order_text));
  const stabq::query q{s, k};
  stabq::topk_result result;
  if (algo == "ss") {
    result = stabq::seq_scan(data).topk(q);
  } else if (algo == "it") {
    result = stabq::interval_tree(data).topk(q);
  } else if (algo == "if") {
    result = stabq::interval_forest(data).topk(q);
  } else if (algo == "st") {
    result = stabq::segment_tree(data).topk(q);
  } else if (algo == "sst") {
    result = stabq::segment_tree(data).sorted_topk(q);
  } else if (algo == "stpsa") {
    stabq::segment_tree seg(data);
    seg.build_path_arrays(true);
    result = seg.psa_topk(q);
  } else {
    throw std::invalid_argument("unknown algorithm: " + algo + " (valid: ss,it,if,st,sst,stpsa)");
  }
  for (const stabq::interval& x : result) {
    std::cout << x.id << ',' << stabq::format_double(x.l) << ',' << stabq::format_double(x.r) << ','
              << stabq::format_double(data.display_weight(x)) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"top-k weighted stabbing queries over interval CSV files"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a synthetic dataset CSV");
  std::size_t gen_n = 0;
  double gen_domain = 0.0;
  std::string gen_length;
  std::string gen_weight = "gaussian:5000,1500";
  double gen_snap = 0.0;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  gen->add_option("--n", gen_n, "number of intervals")->required();
  gen->add_option("--domain", gen_domain, "left endpoints drawn uniformly from [0, domain]")->required();
  gen->add_option("--length-dist", gen_length, "uniform:a,b or pareto:alpha,xmin")->required();
  gen->add_option("--weight-dist", gen_weight, "gaussian:mean,stddev or uniform:a,b");
  gen->add_option("--snap", gen_snap, "round endpoints to multiples of this step (0 = off)");
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("-o,--out", gen_out, "output dataset CSV")->required();

  // queries
  auto* queries = app.add_subcommand("queries", "generate a workload CSV for a dataset");
  std::string q_dataset;
  std::size_t q_count = 1000;
  std::size_t q_k = 25;
  std::uint64_t q_seed = 1;
  std::string q_out;
  queries->add_option("--dataset", q_dataset, "dataset CSV")->required();
  queries->add_option("--count", q_count, "number of queries");
  queries->add_option("--k", q_k, "result size per query");
  queries->add_option("--seed", q_seed, "RNG seed");
  queries->add_option("-o,--out", q_out, "output workload CSV")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "check every algorithm against the brute-force oracle");
  std::string v_dataset;
  std::string v_workload;
  verify->add_option("--dataset", v_dataset, "dataset CSV")->required();
  verify->add_option("--workload", v_workload, "workload CSV")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "benchmark algorithms over a workload");
  std::string b_dataset;
  std::string b_workload;
  std::string b_algos = "ss,it,if,st,sst,stpsa";
  double b_rate = 1.0;
  std::string b_order = "max";
  std::uint64_t b_seed = 1;
  std::size_t b_repeats = 1;
  std::string b_out;
  bench->add_option("--dataset", b_dataset, "dataset CSV")->required();
  bench->add_option("--workload", b_workload, "workload CSV")->required();
  bench->add_option("--algos", b_algos, "comma-separated subset of ss,it,if,st,sst,stpsa");
  bench->add_option("--sample-rate", b_rate, "Bernoulli sampling rate in (0,1]");
  bench->add_option("--order", b_order, "max or min weight preference");
  bench->add_option("--seed", b_seed, "sampling seed");
  bench->add_option("--repeats", b_repeats, "timing samples per query (min is recorded)");
  bench->add_option("-o,--out", b_out, "output report CSV (stdout if omitted)");

  // query
  auto* one = app.add_subcommand("query", "run a single top-k weighted stabbing query");
  std::string o_dataset;
  std::string o_algo = "stpsa";
  double o_s = 0.0;
  std::size_t o_k = 1;
  std::string o_order = "max";
  one->add_option("--dataset", o_dataset, "dataset CSV")->required();
  one->add_option("--algo", o_algo, "one of ss,it,if,st,sst,stpsa");
  one->add_option("--s", o_s, "stabbing value")->required();
  one->add_option("--k", o_k, "result size");
  one->add_option("--order", o_order, "max or min weight preference");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) {
      return cmd_gen(gen_out, gen_n, gen_domain, gen_length, gen_weight, gen_snap, gen_seed);
    }
    if (queries->parsed()) {
      return cmd_queries(q_dataset, q_out, q_count, q_k, q_seed);
    }
    if (verify->parsed()) {
      return cmd_verify(v_dataset, v_workload);
    }
    if (bench->parsed()) {
      return cmd_bench(b_dataset, b_workload, b_algos, b_rate, b_order, b_seed, b_repeats, b_out);
    }
    if (one->parsed()) {
      return cmd_query(o_dataset, o_algo, o_s, o_k, o_order);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
