#pragma once

// Interval forest: the dataset is sorted into result order and cut into
// p = ceil(sqrt(n)) consecutive chunks, one interval tree per chunk. Every
// interval in chunk i outranks every interval in chunk i+1, so a query can
// stop as soon as k stabbed intervals have been collected: nothing in the
// remaining chunks can displace them.

#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "stabq/core.hpp"
#include "stabq/interval_tree.hpp"

namespace stabq {

class interval_forest {
 public:
  interval_forest() = default;

  explicit interval_forest(const dataset& data) {
    std::vector<interval> sorted = data.intervals;
    std::sort(sorted.begin(), sorted.end(), result_order{});
    const std::size_t n = sorted.size();
    if (n == 0) {
      return;
    }
    p_ = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    chunk_size_ = (n + p_ - 1) / p_;
    trees_.reserve(p_);
    bounds_.reserve(p_);
    for (std::size_t begin = 0; begin < n; begin += chunk_size_) {
      const std::size_t end = std::min(begin + chunk_size_, n);
      std::span<const interval> chunk(sorted.data() + begin, end - begin);
      trees_.emplace_back(chunk);
      bounds_.emplace_back(chunk.front().w, chunk.back().w);
    }
  }

  [[nodiscard]] std::size_t p() const noexcept { return p_; }
  [[nodiscard]] std::size_t chunk_size() const noexcept { return chunk_size_; }
  [[nodiscard]] const std::vector<interval_tree>& trees() const noexcept { return trees_; }

  // Per-chunk (max weight, min weight) in stored (max-oriented) units.
  [[nodiscard]] const std::vector<std::pair<double, double>>& chunk_bounds() const noexcept { return bounds_; }

  [[nodiscard]] std::size_t stored_copies() const noexcept {
    std::size_t total = 0;
    for (const interval_tree& tree : trees_) {
      total += tree.stored_copies();
    }
    return total;
  }

  // Queries trees in weight order, sharing one size-k accumulator. The
  // |R| = k early-exit check runs only between trees.
  [[nodiscard]] topk_result topk(const query& q, query_stats* stats = nullptr) const {
    if (stats != nullptr) {
      stats->reset();
    }
    bounded_topk acc(q.k);
    for (const interval_tree& tree : trees_) {
      query_stats tree_stats;
      const std::size_t stabbed =
          tree.stab(q.s, [&acc](const interval& x) { acc.offer(x); }, stats != nullptr ? &tree_stats : nullptr);
      if (stats != nullptr) {
        ++stats->trees_visited;
        stats->nodes_visited += tree_stats.nodes_visited;
        stats->intervals_touched += tree_stats.intervals_touched;
        stats->per_tree_stabbed.push_back(stabbed);
      }
      if (acc.size() == q.k) {
        break;
      }
    }
    return acc.take_sorted();
  }

 private:
  std::vector<interval_tree> trees_;
  std::vector<std::pair<double, double>> bounds_;
  std::size_t p_ = 0;
  std::size_t chunk_size_ = 0;
};

}  // namespace stabq
