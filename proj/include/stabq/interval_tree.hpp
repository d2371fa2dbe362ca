#pragma once

// Interval tree with center-point decomposition. Each node keeps the
// intervals crossing its center in two sorted arrays (ascending left
// endpoint / ascending right endpoint); intervals entirely below the center
// go to the left subtree, entirely above to the right. A stabbing query
// walks one root-to-leaf path and scans each crossing array only as far as
// it keeps producing stabbed intervals, so it runs in O(log n + m).

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "stabq/core.hpp"

namespace stabq {

class interval_tree {
 public:
  struct node {
    double center = 0.0;
    std::vector<interval> by_left;   // crossing set, ascending (l, id)
    std::vector<interval> by_right;  // same set, ascending (r, id)
    std::int32_t left = -1;
    std::int32_t right = -1;
  };

  interval_tree() = default;

  explicit interval_tree(const dataset& data) : interval_tree(std::span<const interval>(data.intervals)) {}

  explicit interval_tree(std::span<const interval> xs) {
    if (xs.empty()) {
      return;
    }
    nodes_.reserve(xs.size());
    root_ = build(std::vector<interval>(xs.begin(), xs.end()));
    height_ = levels(root_);
  }

  [[nodiscard]] bool empty() const noexcept { return root_ < 0; }
  [[nodiscard]] std::int32_t root() const noexcept { return root_; }
  [[nodiscard]] const std::vector<node>& nodes() const noexcept { return nodes_; }

  // Longest root-to-leaf path, counted in nodes.
  [[nodiscard]] std::size_t height() const noexcept { return height_; }

  [[nodiscard]] std::size_t stored_copies() const noexcept {
    std::size_t total = 0;
    for (const node& nd : nodes_) {
      total += nd.by_left.size() + nd.by_right.size();
    }
    return total;
  }

  // Emits exactly the intervals stabbed by s, each once; returns their count.
  // At a node: s below the center scans by_left forward while l <= s, s above
  // scans by_right backward while r >= s, and s equal to the center owns the
  // whole crossing set with nothing stabbed deeper on either side.
  template <typename Sink>
  std::size_t stab(double s, Sink&& emit, query_stats* stats = nullptr) const {
    std::size_t emitted = 0;
    std::size_t visited = 0;
    std::size_t touched = 0;
    std::int32_t cur = root_;
    while (cur >= 0) {
      const node& nd = nodes_[cur];
      ++visited;
      if (s < nd.center) {
        for (const interval& x : nd.by_left) {
          ++touched;
          if (x.l > s) {
            break;
          }
          emit(x);
          ++emitted;
        }
        cur = nd.left;
      } else if (s > nd.center) {
        for (auto it = nd.by_right.rbegin(); it != nd.by_right.rend(); ++it) {
          ++touched;
          if (it->r < s) {
            break;
          }
          emit(*it);
          ++emitted;
        }
        cur = nd.right;
      } else if (s == nd.center) {
        touched += nd.by_left.size();
        for (const interval& x : nd.by_left) {
          emit(x);
        }
        emitted += nd.by_left.size();
        break;
      } else {
        break;  // NaN stabs nothing
      }
    }
    if (stats != nullptr) {
      stats->reset();
      stats->nodes_visited = visited;
      stats->intervals_touched = touched;
    }
    return emitted;
  }

  // Stab-all filtered through a size-k accumulator (the state-of-the-art
  // baseline: O(log n + m log k)).
  [[nodiscard]] topk_result topk(const query& q, query_stats* stats = nullptr) const {
    bounded_topk acc(q.k);
    stab(q.s, [&acc](const interval& x) { acc.offer(x); }, stats);
    return acc.take_sorted();
  }

 private:
  // Center = lower median of the subset's endpoint multiset. The interval
  // owning the median endpoint always crosses it, so recursion strictly
  // shrinks and every node holds at least one interval.
  std::int32_t build(std::vector<interval>&& xs) {
    if (xs.empty()) {
      return -1;
    }
    std::vector<double> endpoints;
    endpoints.reserve(xs.size() * 2);
    for (const interval& x : xs) {
      endpoints.push_back(x.l);
      endpoints.push_back(x.r);
    }
    auto median = endpoints.begin() + static_cast<std::ptrdiff_t>((endpoints.size() - 1) / 2);
    std::nth_element(endpoints.begin(), median, endpoints.end());
    const double center = *median;

    node nd;
    nd.center = center;
    std::vector<interval> below;
    std::vector<interval> above;
    for (interval& x : xs) {
      if (x.r < center) {
        below.push_back(x);
      } else if (x.l > center) {
        above.push_back(x);
      } else {
        nd.by_left.push_back(x);
      }
    }
    xs.clear();
    xs.shrink_to_fit();

    std::sort(nd.by_left.begin(), nd.by_left.end(),
              [](const interval& a, const interval& b) { return a.l != b.l ? a.l < b.l : a.id < b.id; });
    nd.by_right = nd.by_left;
    std::sort(nd.by_right.begin(), nd.by_right.end(),
              [](const interval& a, const interval& b) { return a.r != b.r ? a.r < b.r : a.id < b.id; });

    nd.left = build(std::move(below));
    nd.right = build(std::move(above));
    nodes_.push_back(std::move(nd));
    return static_cast<std::int32_t>(nodes_.size() - 1);
  }

  [[nodiscard]] std::size_t levels(std::int32_t idx) const {
    if (idx < 0) {
      return 0;
    }
    const node& nd = nodes_[idx];
    return 1 + std::max(levels(nd.left), levels(nd.right));
  }

  std::vector<node> nodes_;
  std::int32_t root_ = -1;
  std::size_t height_ = 0;
};

}  // namespace stabq
