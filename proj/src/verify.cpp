#include "stabq/verify.hpp"

#include <sstream>

#include "stabq/interval_forest.hpp"
#include "stabq/interval_tree.hpp"
#include "stabq/segment_tree.hpp"

namespace stabq {

struct algorithm_suite::impl {
  seq_scan ss;
  interval_tree it;
  interval_forest forest;
  segment_tree seg;

  explicit impl(const dataset& data) : ss(data), it(data), forest(data), seg(data) {
    seg.build_path_arrays(/*drop_canonical=*/false);
  }
};

algorithm_suite::algorithm_suite(const dataset& data) : impl_(std::make_unique<impl>(data)) {
  impl* p = impl_.get();
  runs_ = {
      {"ss", [p](const query& q, query_stats* st) { return p->ss.topk(q, st); }},
      {"it", [p](const query& q, query_stats* st) { return p->it.topk(q, st); }},
      {"if", [p](const query& q, query_stats* st) { return p->forest.topk(q, st); }},
      {"sst", [p](const query& q, query_stats* st) { return p->seg.sorted_topk(q, st); }},
      {"stpsa", [p](const query& q, query_stats* st) { return p->seg.psa_topk(q, st); }},
  };
}

algorithm_suite::~algorithm_suite() = default;
algorithm_suite::algorithm_suite(algorithm_suite&&) noexcept = default;
algorithm_suite& algorithm_suite::operator=(algorithm_suite&&) noexcept = default;

const seq_scan& algorithm_suite::ss() const noexcept { return impl_->ss; }
const interval_tree& algorithm_suite::it() const noexcept { return impl_->it; }
const interval_forest& algorithm_suite::forest() const noexcept { return impl_->forest; }
const segment_tree& algorithm_suite::seg() const noexcept { return impl_->seg; }

namespace {

std::vector<std::uint64_t> ids_of(const topk_result& result) {
  std::vector<std::uint64_t> ids;
  ids.reserve(result.size());
  for (const interval& x : result) {
    ids.push_back(x.id);
  }
  return ids;
}

}  // namespace

verify_report verify_against(const dataset& data, const workload& wl, std::span<const algo_run> algorithms) {
  verify_report report;
  report.queries = wl.queries.size();
  report.algorithms = algorithms.size();
  for (std::size_t qi = 0; qi < wl.queries.size(); ++qi) {
    const query& q = wl.queries[qi];
    const std::vector<std::uint64_t> expected = ids_of(oracle_topk(data, q));
    for (const algo_run& algo : algorithms) {
      const std::vector<std::uint64_t> got = ids_of(algo.run(q, nullptr));
      if (got != expected) {
        report.first_divergence = divergence{algo.name, qi, q, expected, got};
        return report;
      }
    }
  }
  return report;
}

verify_report run_verify(const dataset& data, const workload& wl) {
  algorithm_suite suite(data);
  return verify_against(data, wl, suite.runs());
}

std::string describe(const verify_report& report, std::size_t dataset_size) {
  std::ostringstream out;
  if (report.ok()) {
    out << "OK: " << report.algorithms << " algorithms agree with the oracle on " << report.queries
        << " queries (n=" << dataset_size << ")";
    return out.str();
  }
  const divergence& d = *report.first_divergence;
  out << "MISMATCH: algo=" << d.algo << " query#" << d.query_index << " s=" << format_double(d.q.s)
      << " k=" << d.q.k << "\n  expected:";
  for (std::uint64_t id : d.expected_ids) {
    out << ' ' << id;
  }
  out << "\n  got:     ";
  for (std::uint64_t id : d.got_ids) {
    out << ' ' << id;
  }
  return out.str();
}

}  // namespace stabq
