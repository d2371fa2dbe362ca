#pragma once

// Core domain model for top-k weighted stabbing queries: weighted closed
// intervals, the deterministic result order, dataset ingestion, the
// brute-force reference search, and the weight-sorted sequential scan.

#include <algorithm>
#include <cassert>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace stabq {

// A weighted closed interval [l, r].
struct interval {
  std::uint64_t id = 0;
  double l = 0.0;
  double r = 0.0;
  double w = 0.0;

  [[nodiscard]] bool stabbed_by(double s) const noexcept { return l <= s && s <= r; }
};

// A stabbing value plus requested result size.
struct query {
  double s = 0.0;
  std::size_t k = 1;
};

// Result order: weight descending, id ascending on ties. The id tiebreak makes
// the order total, so every algorithm returns the exact same sequence.
[[nodiscard]] inline std::strong_ordering compare(const interval& a, const interval& b) noexcept {
  if (a.w != b.w) {
    return a.w > b.w ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (a.id != b.id) {
    return a.id < b.id ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

// True when a precedes b in result order.
[[nodiscard]] inline bool before(const interval& a, const interval& b) noexcept {
  return compare(a, b) == std::strong_ordering::less;
}

// Comparator object for sorting containers into result order.
struct result_order {
  bool operator()(const interval& a, const interval& b) const noexcept { return before(a, b); }
};

using topk_result = std::vector<interval>;

enum class weight_order { max, min };

// A raw input record, prior to validation.
struct record {
  std::uint64_t id = 0;
  double l = 0.0;
  double r = 0.0;
  double w = 0.0;
};

// Validated, immutable interval collection. With weight_order::min the stored
// weights are negated at ingestion so every index stays max-oriented; use
// display_weight() when presenting results.
struct dataset {
  std::vector<interval> intervals;
  weight_order order = weight_order::max;
  double domain_min = 0.0;
  double domain_max = 0.0;

  [[nodiscard]] std::size_t size() const noexcept { return intervals.size(); }
  [[nodiscard]] bool empty() const noexcept { return intervals.empty(); }
  [[nodiscard]] double display_weight(const interval& x) const noexcept {
    return order == weight_order::min ? -x.w : x.w;
  }
};

// Validates and adopts records. Throws std::invalid_argument on l > r,
// non-finite endpoints/weights, or duplicate ids, naming the offending id.
[[nodiscard]] dataset ingest(std::span<const record> records, weight_order order = weight_order::max);

// Per-query instrumentation. Counters are exact counts of work performed,
// not estimates: a "node" is one tree node examined, a "touch" is one
// interval element examined or copied.
struct query_stats {
  std::size_t nodes_visited = 0;
  std::size_t intervals_touched = 0;
  std::size_t trees_visited = 0;
  std::vector<std::size_t> per_tree_stabbed;  // interval forest only

  void reset() noexcept {
    nodes_visited = 0;
    intervals_touched = 0;
    trees_visited = 0;
    per_tree_stabbed.clear();
  }
};

// Retains the best k intervals seen under result order: a flat binary heap
// whose root is the weakest retained element, with the eviction bar cached so
// a losing candidate costs one comparison. Evictions replace the root and
// sift down in a single pass.
class bounded_topk {
 public:
  explicit bounded_topk(std::size_t k) : k_(k) {
    assert(k_ >= 1);
    heap_.reserve(std::min<std::size_t>(k, 1024));
  }

  [[nodiscard]] std::size_t size() const noexcept { return heap_.size(); }
  [[nodiscard]] bool full() const noexcept { return heap_.size() >= k_; }
  [[nodiscard]] const interval& weakest() const { return weakest_; }

  void offer(const interval& x) {
    if (heap_.size() < k_) {
      heap_.push_back(x);
      std::push_heap(heap_.begin(), heap_.end(), result_order{});
      if (heap_.size() == k_) {
        weakest_ = heap_.front();
      }
      return;
    }
    if (!before(x, weakest_)) {
      return;
    }
    replace_weakest(x);
    weakest_ = heap_.front();
  }

  // Hands the retained intervals over in result order (best first).
  [[nodiscard]] topk_result take_sorted() {
    std::sort(heap_.begin(), heap_.end(), result_order{});
    return std::move(heap_);
  }

 private:
  void replace_weakest(const interval& x) {
    std::size_t i = 0;
    const std::size_t n = heap_.size();
    for (;;) {
      std::size_t child = 2 * i + 1;
      if (child >= n) {
        break;
      }
      if (child + 1 < n && before(heap_[child], heap_[child + 1])) {
        ++child;  // the worse of the two children
      }
      if (!before(x, heap_[child])) {
        break;
      }
      heap_[i] = heap_[child];
      i = child;
    }
    heap_[i] = x;
  }

  std::size_t k_;
  std::vector<interval> heap_;
  interval weakest_;
};

// Reference answer by exhaustive filter and sort. Every index in this library
// is required to reproduce its output exactly, id for id.
[[nodiscard]] topk_result oracle_topk(const dataset& data, const query& q);

// SS baseline: scan a weight-sorted copy of the dataset and stop as soon as k
// stabbed intervals have been found.
class seq_scan {
 public:
  explicit seq_scan(const dataset& data);

  [[nodiscard]] topk_result topk(const query& q, query_stats* stats = nullptr) const;

  [[nodiscard]] std::size_t stored_copies() const noexcept { return sorted_.size(); }

 private:
  std::vector<interval> sorted_;
};

}  // namespace stabq
