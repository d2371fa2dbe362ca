#include "stabq/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace stabq {

dataset ingest(std::span<const record> records, weight_order order) {
  dataset out;
  out.order = order;
  out.intervals.reserve(records.size());

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(records.size() * 2);

  bool first = true;
  for (const record& rec : records) {
    if (!std::isfinite(rec.l) || !std::isfinite(rec.r)) {
      throw std::invalid_argument("non-finite endpoint at id " + std::to_string(rec.id));
    }
    if (!std::isfinite(rec.w)) {
      throw std::invalid_argument("non-finite weight at id " + std::to_string(rec.id));
    }
    if (rec.l > rec.r) {
      throw std::invalid_argument("l > r at id " + std::to_string(rec.id));
    }
    if (!seen.insert(rec.id).second) {
      throw std::invalid_argument("duplicate id " + std::to_string(rec.id));
    }
    const double w = order == weight_order::min ? -rec.w : rec.w;
    out.intervals.push_back(interval{rec.id, rec.l, rec.r, w});
    if (first) {
      out.domain_min = rec.l;
      out.domain_max = rec.r;
      first = false;
    } else {
      out.domain_min = std::min(out.domain_min, rec.l);
      out.domain_max = std::max(out.domain_max, rec.r);
    }
  }
  return out;
}

topk_result oracle_topk(const dataset& data, const query& q) {
  topk_result stabbed;
  for (const interval& x : data.intervals) {
    if (x.stabbed_by(q.s)) {
      stabbed.push_back(x);
    }
  }
  std::sort(stabbed.begin(), stabbed.end(), result_order{});
  if (stabbed.size() > q.k) {
    stabbed.resize(q.k);
  }
  return stabbed;
}

seq_scan::seq_scan(const dataset& data) : sorted_(data.intervals) {
  std::sort(sorted_.begin(), sorted_.end(), result_order{});
}

topk_result seq_scan::topk(const query& q, query_stats* stats) const {
  topk_result out;
  out.reserve(q.k);
  std::size_t scanned = 0;
  for (const interval& x : sorted_) {
    ++scanned;
    if (x.stabbed_by(q.s)) {
      out.push_back(x);
      if (out.size() == q.k) {
        break;
      }
    }
  }
  if (stats != nullptr) {
    stats->reset();
    stats->intervals_touched = scanned;
  }
  return out;
}

}  // namespace stabq
