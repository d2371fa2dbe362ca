#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "stabq/bench.hpp"
#include "stabq/csv.hpp"
#include "stabq/generate.hpp"
#include "stabq/verify.hpp"
#include "test_support.hpp"

using namespace stabq;
using testsup::d1;
using testsup::d1_records;
using testsup::ids_of;

namespace {

namespace fs = std::filesystem;

struct temp_dir {
  fs::path path;
  temp_dir() {
    path = fs::temp_directory_path() / ("stabq_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~temp_dir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  [[nodiscard]] std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

#ifdef STABQ_CLI_PATH
// Runs the CLI, returns its exit code; stdout/stderr captured into files.
int run_cli(const temp_dir& dir, const std::string& args) {
  const std::string cmd = std::string(STABQ_CLI_PATH) + " " + args + " > " + dir.file("stdout.txt") + " 2> " +
                          dir.file("stderr.txt");
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}
#endif

}  // namespace

TEST_CASE("dataset CSV round-trips awkward doubles") {
  temp_dir dir;
  const std::vector<record> recs = {
      {1, 0.1, 0.30000000000000004, 1e-9},
      {2, -1.5, 2.25, 12345.6789},
      {3, 3.0, 3.0, -7.0},
  };
  write_dataset_csv(dir.file("d.csv"), recs);
  const dataset ds = load_dataset_csv(dir.file("d.csv"));
  REQUIRE(ds.size() == 3);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK(ds.intervals[i].id == recs[i].id);
    CHECK(ds.intervals[i].l == recs[i].l);
    CHECK(ds.intervals[i].r == recs[i].r);
    CHECK(ds.intervals[i].w == recs[i].w);
  }
}

TEST_CASE("dataset CSV errors carry line numbers") {
  temp_dir dir;
  SUBCASE("corrupted row with l > r") {
    write_text(dir.file("bad.csv"), "id,l,r,w\n1,1,5,10\n2,5,1,10\n");
    try {
      static_cast<void>(load_dataset_csv(dir.file("bad.csv")));
      FAIL("expected csv_error");
    } catch (const csv_error& e) {
      CHECK(e.line() == 3);
      CHECK(std::string(e.what()).find("l > r at id 2") != std::string::npos);
    }
  }
  SUBCASE("malformed field") {
    write_text(dir.file("bad.csv"), "id,l,r,w\n1,1,zap,10\n");
    CHECK_THROWS_AS(static_cast<void>(load_dataset_csv(dir.file("bad.csv"))), csv_error);
  }
  SUBCASE("bad header") {
    write_text(dir.file("bad.csv"), "id,left,right,w\n");
    CHECK_THROWS_AS(static_cast<void>(load_dataset_csv(dir.file("bad.csv"))), csv_error);
  }
  SUBCASE("duplicate id") {
    write_text(dir.file("bad.csv"), "id,l,r,w\n1,1,5,10\n1,0,2,3\n");
    try {
      static_cast<void>(load_dataset_csv(dir.file("bad.csv")));
      FAIL("expected csv_error");
    } catch (const csv_error& e) {
      CHECK(e.line() == 3);
    }
  }
}

TEST_CASE("workload CSV: round trip and validation") {
  temp_dir dir;
  workload wl;
  wl.queries = {{1.5, 25}, {-3.0, 1}};
  write_workload_csv(dir.file("w.csv"), wl);
  const workload back = load_workload_csv(dir.file("w.csv"));
  REQUIRE(back.queries.size() == 2);
  CHECK(back.queries[0].s == 1.5);
  CHECK(back.queries[0].k == 25);
  CHECK(back.queries[1].s == -3.0);

  write_text(dir.file("bad.csv"), "s,k\n1.0,0\n");
  CHECK_THROWS_AS(static_cast<void>(load_workload_csv(dir.file("bad.csv"))), csv_error);
  write_text(dir.file("bad2.csv"), "s,k\nnan,4\n");
  CHECK_THROWS_AS(static_cast<void>(load_workload_csv(dir.file("bad2.csv"))), csv_error);
}

TEST_CASE("generation is seed-deterministic, byte for byte") {
  temp_dir dir;
  gen_params params;
  params.n = 500;
  params.domain = 1000.0;
  params.length = parse_length_spec("pareto:1.5,2");
  params.weight = parse_weight_spec("gaussian:5000,1500");
  params.seed = 77;

  write_dataset_csv(dir.file("a.csv"), generate_records(params));
  write_dataset_csv(dir.file("b.csv"), generate_records(params));
  CHECK(slurp(dir.file("a.csv")) == slurp(dir.file("b.csv")));

  const dataset ds = load_dataset_csv(dir.file("a.csv"));
  write_workload_csv(dir.file("qa.csv"), generate_workload(ds, 200, 25, 5));
  write_workload_csv(dir.file("qb.csv"), generate_workload(ds, 200, 25, 5));
  CHECK(slurp(dir.file("qa.csv")) == slurp(dir.file("qb.csv")));
}

TEST_CASE("generator distributions") {
  SUBCASE("gaussian weight mean lands near 5000 at n=1e5") {
    gen_params params;
    params.n = 100000;
    params.domain = 1000.0;
    params.length = parse_length_spec("uniform:0,10");
    params.seed = 3;
    const auto recs = generate_records(params);
    double sum = 0.0;
    for (const record& rec : recs) {
      sum += rec.w;
    }
    const double mean = sum / static_cast<double>(recs.size());
    CHECK(mean > 4950.0);
    CHECK(mean < 5050.0);
  }
  SUBCASE("gaussian with zero stddev gives constant weights") {
    gen_params params;
    params.n = 20;
    params.domain = 10.0;
    params.length = parse_length_spec("uniform:0,1");
    params.weight = parse_weight_spec("gaussian:42,0");
    params.seed = 8;
    for (const record& rec : generate_records(params)) {
      CHECK(rec.w == 42.0);
    }
  }
  SUBCASE("uniform:0,0 lengths give degenerate intervals") {
    gen_params params;
    params.n = 50;
    params.domain = 10.0;
    params.length = parse_length_spec("uniform:0,0");
    params.seed = 4;
    for (const record& rec : generate_records(params)) {
      CHECK(rec.l == rec.r);
    }
  }
  SUBCASE("snap places endpoints on the grid") {
    gen_params params;
    params.n = 200;
    params.domain = 1000.0;
    params.length = parse_length_spec("pareto:2,10");
    params.snap = 5.0;
    params.seed = 9;
    for (const record& rec : generate_records(params)) {
      CHECK(rec.l == 5.0 * std::round(rec.l / 5.0));
      CHECK(rec.r == 5.0 * std::round(rec.r / 5.0));
    }
  }
  SUBCASE("bad distribution specs are usage errors") {
    CHECK_THROWS_AS(static_cast<void>(parse_length_spec("zipf:1,2")), std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(parse_length_spec("uniform:5")), std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(parse_length_spec("pareto:0,5")), std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(parse_weight_spec("gaussian:1,-2")), std::invalid_argument);
  }
}

TEST_CASE("workload generation stays inside the domain") {
  const dataset ds = d1();
  const workload wl = generate_workload(ds, 1000, 25, 11);
  REQUIRE(wl.queries.size() == 1000);
  for (const query& q : wl.queries) {
    CHECK(q.s >= 1.0);
    CHECK(q.s <= 9.0);
    CHECK(q.k == 25);
  }

  const workload none = generate_workload(ds, 0, 25, 11);
  CHECK(none.queries.empty());

  const dataset empty;
  CHECK_THROWS_AS(static_cast<void>(generate_workload(empty, 10, 25, 11)), std::invalid_argument);
}

TEST_CASE("verify agrees on D1 and catches an injected fault") {
  const dataset ds = d1();
  workload wl;
  for (double s : {0.0, 1.0, 3.5, 4.0, 5.0, 6.0, 7.0, 8.5, 9.0, 100.0}) {
    wl.queries.push_back(query{s, 3});
  }
  const verify_report good = run_verify(ds, wl);
  CHECK(good.ok());
  CHECK(good.queries == wl.queries.size());
  CHECK(good.algorithms == 5);
  CHECK(describe(good, ds.size()).find("OK") == 0);

  // Fault hook: one algorithm built on a dataset missing x2.
  std::vector<record> tampered_records = d1_records();
  tampered_records.erase(tampered_records.begin() + 1);
  const dataset tampered = ingest(tampered_records);
  const std::vector<algo_run> algos = {
      {"broken", [&tampered](const query& q, query_stats*) { return oracle_topk(tampered, q); }},
  };
  const verify_report bad = verify_against(ds, wl, algos);
  REQUIRE(!bad.ok());
  CHECK(bad.first_divergence->algo == "broken");
  CHECK(bad.first_divergence->query_index == 2);  // s=3.5 is the first query stabbing x2
  CHECK(describe(bad, ds.size()).find("MISMATCH") == 0);
}

TEST_CASE("bench reports rows with sane instrumentation") {
  std::mt19937_64 rng(401);
  const dataset ds = testsup::random_dataset(rng, 400);
  workload wl;
  std::uniform_real_distribution<double> s_dist(ds.domain_min, ds.domain_max);
  for (int i = 0; i < 50; ++i) {
    wl.queries.push_back(query{s_dist(rng), 10});
  }

  bench_options options;
  const auto rows = run_bench(ds, wl, options);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].algo == "ss");
  CHECK(rows[5].algo == "stpsa");
  for (const bench_row& row : rows) {
    CHECK(row.n == 400);
    CHECK(row.k == 10);
    CHECK(row.copies > 0);
    CHECK(row.mean_us >= 0.0);
    CHECK(row.p99_us >= row.p50_us);
  }
  // forest is the only row with tree visits
  CHECK(rows[2].trees_mean >= 1.0);
  CHECK(rows[1].trees_mean == 0.0);

  SUBCASE("sample_rate 1.0 uses the full dataset") { CHECK(rows[0].n == ds.size()); }
  SUBCASE("unknown algorithm is a usage error") {
    bench_options bad;
    bad.algos = {"quadtree"};
    CHECK_THROWS_AS(static_cast<void>(run_bench(ds, wl, bad)), std::invalid_argument);
  }
  SUBCASE("empty sample is a usage error") {
    bench_options tiny;
    tiny.sample_rate = 1e-300;
    CHECK_THROWS_AS(static_cast<void>(run_bench(ds, wl, tiny)), std::invalid_argument);
  }
  SUBCASE("report CSV has the fixed header") {
    temp_dir dir;
    write_report_csv(dir.file("r.csv"), rows);
    const std::string text = slurp(dir.file("r.csv"));
    CHECK(text.find("algo,n,k,build_ms,copies,mean_us,p50_us,p99_us,nodes_mean,touches_mean,trees_mean\n") == 0);
  }
}

#ifdef STABQ_CLI_PATH

TEST_CASE("CLI end-to-end on the D1 file") {
  temp_dir dir;
  write_dataset_csv(dir.file("d1.csv"), d1_records());

  SUBCASE("query stpsa returns the top two lines") {
    const int rc = run_cli(dir, "query --dataset " + dir.file("d1.csv") + " --algo stpsa --s 4 --k 2");
    CHECK(rc == 0);
    CHECK(slurp(dir.file("stdout.txt")) == "2,3,7,20\n4,2,8,15\n");
  }
  SUBCASE("query ss with nothing stabbed prints nothing, exit 0") {
    const int rc = run_cli(dir, "query --dataset " + dir.file("d1.csv") + " --algo ss --s 100 --k 1");
    CHECK(rc == 0);
    CHECK(slurp(dir.file("stdout.txt")).empty());
  }
  SUBCASE("min order prefers the smallest weights") {
    const int rc = run_cli(dir, "query --dataset " + dir.file("d1.csv") + " --algo if --s 4 --k 2 --order min");
    CHECK(rc == 0);
    CHECK(slurp(dir.file("stdout.txt")) == "1,1,5,10\n4,2,8,15\n");
  }
  SUBCASE("unknown algorithm exits 2 and lists valid names") {
    const int rc = run_cli(dir, "query --dataset " + dir.file("d1.csv") + " --algo btree --s 4 --k 2");
    CHECK(rc == 2);
    CHECK(slurp(dir.file("stderr.txt")).find("ss,it,if,st,sst,stpsa") != std::string::npos);
  }
  SUBCASE("k=0 is a usage error") {
    const int rc = run_cli(dir, "query --dataset " + dir.file("d1.csv") + " --algo it --s 4 --k 0");
    CHECK(rc == 2);
  }
  SUBCASE("corrupted dataset exits 2 naming the row") {
    write_text(dir.file("bad.csv"), "id,l,r,w\n1,5,1,10\n");
    const int rc = run_cli(dir, "verify --dataset " + dir.file("bad.csv") + " --workload nowhere.csv");
    CHECK(rc == 2);
    CHECK(slurp(dir.file("stderr.txt")).find("l > r at id 1") != std::string::npos);
  }
  SUBCASE("gen/queries/verify pipeline exits 0") {
    int rc = run_cli(dir, "gen --n 300 --domain 500 --length-dist pareto:1.5,5 --seed 21 -o " + dir.file("g.csv"));
    CHECK(rc == 0);
    rc = run_cli(dir, "queries --dataset " + dir.file("g.csv") + " --count 80 --k 7 --seed 22 -o " +
                          dir.file("q.csv"));
    CHECK(rc == 0);
    rc = run_cli(dir, "verify --dataset " + dir.file("g.csv") + " --workload " + dir.file("q.csv"));
    CHECK(rc == 0);
    CHECK(slurp(dir.file("stdout.txt")).find("OK") == 0);
  }
}

#endif  // STABQ_CLI_PATH
