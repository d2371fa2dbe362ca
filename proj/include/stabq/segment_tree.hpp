#pragma once

// Segment tree over the elementary intervals of the dataset's endpoint grid:
// for distinct endpoints e1 < ... < em the leaves are
//   (-inf,e1), [e1,e1], (e1,e2), [e2,e2], ..., [em,em], (em,+inf),
// 2m+1 in total. Each interval is stored at its canonical nodes (the nodes
// whose range it covers while not covering the parent's range), at most two
// per level. A stabbing query walks the single root-to-leaf path whose leaf
// contains s; the canonical sets met on the way are exactly the stabbed set.
//
// Three query strategies share the structure:
//   topk()        stab-all through a size-k accumulator,
//   sorted_topk() best-head selection across the path's sorted canonical
//                 lists, touching at most k heads per list,
//   psa_topk()    after build_path_arrays(), each leaf keeps every interval
//                 canonical anywhere on its path in one weight-sorted array,
//                 so the answer is the array's k-prefix.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "stabq/core.hpp"

namespace stabq {

class segment_tree {
 public:
  struct node {
    std::uint32_t lo = 0;  // leaf-grid span, inclusive
    std::uint32_t hi = 0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::vector<std::uint32_t> canonical;  // dataset indices, result order
    std::size_t path_off = 0;              // leaves, after build_path_arrays()
    std::uint32_t path_len = 0;
  };

  enum class elem_kind { below_all, point, gap, above_all };

  // One elementary interval of the endpoint grid.
  struct elementary {
    elem_kind kind = elem_kind::point;
    double lo = 0.0;  // unused for below_all
    double hi = 0.0;  // unused for above_all
  };

  segment_tree() = default;

  explicit segment_tree(const dataset& data) : data_(data.intervals) {
    if (data_.empty()) {
      return;
    }
    endpoints_.reserve(data_.size() * 2);
    for (const interval& x : data_) {
      endpoints_.push_back(x.l);
      endpoints_.push_back(x.r);
    }
    std::sort(endpoints_.begin(), endpoints_.end());
    endpoints_.erase(std::unique(endpoints_.begin(), endpoints_.end()), endpoints_.end());

    const std::uint32_t leaves = static_cast<std::uint32_t>(2 * endpoints_.size() + 1);
    nodes_.reserve(2 * static_cast<std::size_t>(leaves) - 1);
    root_ = build(0, leaves - 1);
    height_ = levels(root_);

    for (std::uint32_t idx = 0; idx < data_.size(); ++idx) {
      const std::uint32_t a = grid_pos(data_[idx].l);
      const std::uint32_t b = grid_pos(data_[idx].r);
      insert(root_, a, b, idx);
    }
    for (node& nd : nodes_) {
      std::sort(nd.canonical.begin(), nd.canonical.end(), [this](std::uint32_t a, std::uint32_t b) {
        return before(data_[a], data_[b]);
      });
      canonical_copies_ += nd.canonical.size();
    }
  }

  [[nodiscard]] bool empty() const noexcept { return root_ < 0; }
  [[nodiscard]] std::int32_t root() const noexcept { return root_; }
  [[nodiscard]] const std::vector<node>& nodes() const noexcept { return nodes_; }
  [[nodiscard]] std::size_t height() const noexcept { return height_; }
  [[nodiscard]] std::size_t leaf_count() const noexcept {
    return endpoints_.empty() ? 0 : 2 * endpoints_.size() + 1;
  }

  [[nodiscard]] std::size_t canonical_copies() const noexcept { return canonical_copies_; }
  [[nodiscard]] std::size_t path_copies() const noexcept { return arena_.size(); }
  [[nodiscard]] std::size_t dedup_dropped() const noexcept { return dedup_dropped_; }
  [[nodiscard]] bool has_path_arrays() const noexcept { return path_built_; }
  [[nodiscard]] bool has_canonical() const noexcept { return has_canonical_; }

  [[nodiscard]] std::size_t stored_copies() const noexcept {
    return (has_canonical_ ? canonical_copies_ : 0) + arena_.size();
  }

  // Grid position of s among the elementary intervals: even = gap, odd = point.
  [[nodiscard]] std::uint32_t leaf_pos_of(double s) const {
    auto it = std::lower_bound(endpoints_.begin(), endpoints_.end(), s);
    const std::size_t i = static_cast<std::size_t>(it - endpoints_.begin());
    if (i == endpoints_.size()) {
      return static_cast<std::uint32_t>(2 * endpoints_.size());
    }
    if (*it == s) {
      return static_cast<std::uint32_t>(2 * i + 1);
    }
    return static_cast<std::uint32_t>(2 * i);
  }

  [[nodiscard]] elementary elementary_of(std::uint32_t pos) const {
    const std::size_t m = endpoints_.size();
    if (pos == 0) {
      return {elem_kind::below_all, 0.0, endpoints_.front()};
    }
    if (pos == 2 * m) {
      return {elem_kind::above_all, endpoints_.back(), 0.0};
    }
    if (pos % 2 == 1) {
      const double e = endpoints_[(pos - 1) / 2];
      return {elem_kind::point, e, e};
    }
    return {elem_kind::gap, endpoints_[pos / 2 - 1], endpoints_[pos / 2]};
  }

  // Walks to the leaf containing s, emitting every canonical interval at each
  // visited node (exactly the stabbed set). Returns the terminal leaf's node
  // index, -1 on an empty tree.
  template <typename Sink>
  std::int32_t stab(double s, Sink&& emit, query_stats* stats = nullptr) const {
    require_canonical();
    std::size_t visited = 0;
    std::size_t touched = 0;
    std::int32_t cur = root_;
    if (cur >= 0) {
      const std::uint32_t target = leaf_pos_of(s);
      for (;;) {
        const node& nd = nodes_[cur];
        ++visited;
        touched += nd.canonical.size();
        for (std::uint32_t idx : nd.canonical) {
          emit(data_[idx]);
        }
        if (nd.left < 0) {
          break;
        }
        cur = target <= nodes_[nd.left].hi ? nd.left : nd.right;
      }
    }
    if (stats != nullptr) {
      stats->reset();
      stats->nodes_visited = visited;
      stats->intervals_touched = touched;
    }
    return cur;
  }

  // Plain segment tree: stab-all filtered through a size-k accumulator.
  [[nodiscard]] topk_result topk(const query& q, query_stats* stats = nullptr) const {
    bounded_topk acc(q.k);
    stab(q.s, [&acc](const interval& x) { acc.offer(x); }, stats);
    return acc.take_sorted();
  }

  // Sorted segment tree: collect the path, then repeatedly extract the best
  // head across the path's canonical lists. O(k log n).
  [[nodiscard]] topk_result sorted_topk(const query& q, query_stats* stats = nullptr) const;

  // Materializes the per-leaf path arrays. Canonical sets may be dropped
  // afterwards (the path arrays replace them); topk()/sorted_topk() then
  // become unavailable on this instance.
  void build_path_arrays(bool drop_canonical = false);

  // ST-PSA: walk to the leaf, copy the k-prefix of its path array.
  [[nodiscard]] topk_result psa_topk(const query& q, query_stats* stats = nullptr) const {
    if (!path_built_) {
      throw std::logic_error("psa_topk requires build_path_arrays()");
    }
    std::size_t visited = 0;
    topk_result out;
    std::int32_t cur = root_;
    if (cur >= 0) {
      const std::uint32_t target = leaf_pos_of(q.s);
      for (;;) {
        const node& nd = nodes_[cur];
        ++visited;
        if (nd.left < 0) {
          break;
        }
        cur = target <= nodes_[nd.left].hi ? nd.left : nd.right;
      }
      const node& leaf = nodes_[cur];
      const std::size_t take = std::min<std::size_t>(q.k, leaf.path_len);
      out.assign(arena_.begin() + static_cast<std::ptrdiff_t>(leaf.path_off),
                 arena_.begin() + static_cast<std::ptrdiff_t>(leaf.path_off + take));
    }
    if (stats != nullptr) {
      stats->reset();
      stats->nodes_visited = visited;
      stats->intervals_touched = out.size();
    }
    return out;
  }

 private:
  std::int32_t build(std::uint32_t lo, std::uint32_t hi) {
    node nd;
    nd.lo = lo;
    nd.hi = hi;
    if (lo < hi) {
      const std::uint32_t mid = lo + (hi - lo) / 2;
      nd.left = build(lo, mid);
      nd.right = build(mid + 1, hi);
    }
    nodes_.push_back(std::move(nd));
    return static_cast<std::int32_t>(nodes_.size() - 1);
  }

  // Canonical assignment: store where covered, recurse where merely crossed.
  void insert(std::int32_t at, std::uint32_t a, std::uint32_t b, std::uint32_t idx) {
    node& nd = nodes_[at];
    if (a <= nd.lo && nd.hi <= b) {
      nd.canonical.push_back(idx);
      return;
    }
    if (nd.left >= 0 && a <= nodes_[nd.left].hi) {
      insert(nd.left, a, b, idx);
    }
    if (nd.right >= 0 && b >= nodes_[nd.right].lo) {
      insert(nd.right, a, b, idx);
    }
  }

  // Grid position of an endpoint value (always a point leaf).
  [[nodiscard]] std::uint32_t grid_pos(double v) const {
    auto it = std::lower_bound(endpoints_.begin(), endpoints_.end(), v);
    return static_cast<std::uint32_t>(2 * (it - endpoints_.begin()) + 1);
  }

  [[nodiscard]] std::size_t levels(std::int32_t idx) const {
    if (idx < 0) {
      return 0;
    }
    const node& nd = nodes_[idx];
    return 1 + std::max(levels(nd.left), levels(nd.right));
  }

  void require_canonical() const {
    if (!has_canonical_) {
      throw std::logic_error("canonical sets were dropped by build_path_arrays()");
    }
  }

  void merge_step(const std::vector<std::uint32_t>& upper, const std::vector<std::uint32_t>& own,
                  std::vector<std::uint32_t>& out);

  void path_dfs(std::int32_t at, std::size_t depth, std::vector<std::vector<std::uint32_t>>& stack);

  std::vector<interval> data_;
  std::vector<double> endpoints_;  // distinct, ascending
  std::vector<node> nodes_;
  std::vector<interval> arena_;  // concatenated leaf path arrays
  std::int32_t root_ = -1;
  std::size_t height_ = 0;
  std::size_t canonical_copies_ = 0;
  std::size_t dedup_dropped_ = 0;
  bool path_built_ = false;
  bool has_canonical_ = true;
};

inline topk_result segment_tree::sorted_topk(const query& q, query_stats* stats) const {
  require_canonical();
  std::size_t visited = 0;
  std::size_t touched = 0;
  topk_result out;
  if (root_ >= 0) {
    // Collect the path's non-empty canonical lists.
    struct cursor {
      const std::uint32_t* pos;
      const std::uint32_t* end;
    };
    std::vector<cursor> heads;
    const std::uint32_t target = leaf_pos_of(q.s);
    std::int32_t cur = root_;
    for (;;) {
      const node& nd = nodes_[cur];
      ++visited;
      if (!nd.canonical.empty()) {
        heads.push_back({nd.canonical.data(), nd.canonical.data() + nd.canonical.size()});
        ++touched;  // reading each list's first head
      }
      if (nd.left < 0) {
        break;
      }
      cur = target <= nodes_[nd.left].hi ? nd.left : nd.right;
    }
    // Best-head selection: each list is already in result order, so the
    // global next-best is always some list's head.
    const auto better = [this](const cursor& a, const cursor& b) {
      return before(data_[*b.pos], data_[*a.pos]);  // heap top = best head
    };
    std::make_heap(heads.begin(), heads.end(), better);
    out.reserve(std::min<std::size_t>(q.k, 16));
    while (!heads.empty() && out.size() < q.k) {
      std::pop_heap(heads.begin(), heads.end(), better);
      cursor& top = heads.back();
      out.push_back(data_[*top.pos]);
      if (out.size() == q.k) {
        break;
      }
      ++top.pos;
      if (top.pos == top.end) {
        heads.pop_back();
      } else {
        ++touched;
        std::push_heap(heads.begin(), heads.end(), better);
      }
    }
  }
  if (stats != nullptr) {
    stats->reset();
    stats->nodes_visited = visited;
    stats->intervals_touched = touched;
  }
  return out;
}

inline void segment_tree::merge_step(const std::vector<std::uint32_t>& upper,
                                     const std::vector<std::uint32_t>& own,
                                     std::vector<std::uint32_t>& out) {
  out.clear();
  out.reserve(upper.size() + own.size());
  auto a = upper.begin();
  auto b = own.begin();
  while (a != upper.end() && b != own.end()) {
    if (*a == *b) {
      // Same interval canonical twice on one path: impossible under the
      // canonical rule; kept as a guarded dedup and counted.
      out.push_back(*a);
      ++a;
      ++b;
      ++dedup_dropped_;
    } else if (before(data_[*a], data_[*b])) {
      out.push_back(*a);
      ++a;
    } else {
      out.push_back(*b);
      ++b;
    }
  }
  out.insert(out.end(), a, upper.end());
  out.insert(out.end(), b, own.end());
}

inline void segment_tree::path_dfs(std::int32_t at, std::size_t depth,
                                   std::vector<std::vector<std::uint32_t>>& stack) {
  node& nd = nodes_[at];
  static const std::vector<std::uint32_t> kEmpty;
  const std::vector<std::uint32_t>& upper = depth == 0 ? kEmpty : stack[depth - 1];
  merge_step(upper, nd.canonical, stack[depth]);
  if (nd.left < 0) {
    nd.path_off = arena_.size();
    nd.path_len = static_cast<std::uint32_t>(stack[depth].size());
    for (std::uint32_t idx : stack[depth]) {
      arena_.push_back(data_[idx]);
    }
    return;
  }
  path_dfs(nd.left, depth + 1, stack);
  path_dfs(nd.right, depth + 1, stack);
}

inline void segment_tree::build_path_arrays(bool drop_canonical) {
  if (path_built_) {
    return;
  }
  if (root_ < 0) {
    path_built_ = true;
    return;
  }
  require_canonical();
  dedup_dropped_ = 0;

  // Path lengths are additive along each root-to-leaf path (no duplicates
  // under the canonical rule), which gives the exact arena size up front.
  std::size_t total = 0;
  std::vector<std::size_t> prefix(nodes_.size(), 0);
  for (std::size_t i = nodes_.size(); i-- > 0;) {  // parents follow children
    const node& nd = nodes_[i];
    prefix[i] += nd.canonical.size();
    if (nd.left >= 0) {
      prefix[static_cast<std::size_t>(nd.left)] += prefix[i];
      prefix[static_cast<std::size_t>(nd.right)] += prefix[i];
    } else {
      total += prefix[i];
    }
  }
  arena_.reserve(total);

  std::vector<std::vector<std::uint32_t>> stack(height_);
  path_dfs(root_, 0, stack);
  assert(dedup_dropped_ == 0);  // canonical assignment stores each interval once per path
  path_built_ = true;

  if (drop_canonical) {
    for (node& nd : nodes_) {
      nd.canonical.clear();
      nd.canonical.shrink_to_fit();
    }
    has_canonical_ = false;
  }
}

}  // namespace stabq
