#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <vector>

#include "tad/model/time.h"
#include "tad/model/types.h"

namespace tad {

// Binary min-heap over vertex ids with decrease-key. Ties on the key are
// broken by vertex id so extraction order is deterministic.
class IndexedHeap {
public:
  explicit IndexedHeap(std::size_t vertex_count = 0) { resize(vertex_count); }

  void resize(std::size_t vertex_count) {
    clear();
    pos_.assign(vertex_count, kAbsent);
  }

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  bool contains(VertexId v) const { return pos_[v] != kAbsent; }

  Time min_key() const { return heap_.front().key; }
  VertexId min_vertex() const { return heap_.front().vertex; }

  // Inserts v or lowers its key; a larger key than the current one is
  // ignored.
  void update(VertexId v, Time key) {
    auto p = pos_[v];
    if (p == kAbsent) {
      p = static_cast<std::uint32_t>(heap_.size());
      heap_.push_back({key, v});
      pos_[v] = p;
    } else if (key < heap_[p].key) {
      heap_[p].key = key;
    } else {
      return;
    }
    sift_up(p);
  }

  VertexId pop() {
    assert(!heap_.empty());
    auto const top = heap_.front().vertex;
    pos_[top] = kAbsent;
    auto const last = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
      heap_[0] = last;
      pos_[last.vertex] = 0;
      sift_down(0);
    }
    return top;
  }

  void clear() {
    for (auto const& e : heap_) {
      pos_[e.vertex] = kAbsent;
    }
    heap_.clear();
  }

private:
  static constexpr std::uint32_t kAbsent =
      std::numeric_limits<std::uint32_t>::max();

  struct Entry {
    Time key;
    VertexId vertex;
    bool operator<(Entry const& o) const {
      return key < o.key || (key == o.key && vertex < o.vertex);
    }
  };

  void place(std::uint32_t p, Entry const& e) {
    heap_[p] = e;
    pos_[e.vertex] = p;
  }

  void sift_up(std::uint32_t p) {
    auto const e = heap_[p];
    while (p > 0) {
      auto const parent = (p - 1) / 2;
      if (!(e < heap_[parent])) {
        break;
      }
      place(p, heap_[parent]);
      p = parent;
    }
    place(p, e);
  }

  void sift_down(std::uint32_t p) {
    auto const e = heap_[p];
    auto const n = static_cast<std::uint32_t>(heap_.size());
    while (true) {
      auto child = 2 * p + 1;
      if (child >= n) {
        break;
      }
      if (child + 1 < n && heap_[child + 1] < heap_[child]) {
        ++child;
      }
      if (!(heap_[child] < e)) {
        break;
      }
      place(p, heap_[child]);
      p = child;
    }
    place(p, e);
  }

  std::vector<Entry> heap_;
  std::vector<std::uint32_t> pos_;
};

// Per-vertex Time array with O(1) reset: entries written in an older
// generation read as unreachable.
class StampedTimes {
public:
  explicit StampedTimes(std::size_t n = 0) { resize(n); }

  void resize(std::size_t n) {
    values_.assign(n, kUnreachable);
    stamps_.assign(n, 0);
    generation_ = 1;
  }

  std::size_t size() const { return values_.size(); }

  void reset() {
    if (++generation_ == 0) {
      std::fill(stamps_.begin(), stamps_.end(), 0);
      generation_ = 1;
    }
  }

  Time get(VertexId v) const {
    return stamps_[v] == generation_ ? values_[v] : kUnreachable;
  }
  Time operator[](VertexId v) const { return get(v); }

  void set(VertexId v, Time t) {
    values_[v] = t;
    stamps_[v] = generation_;
  }

private:
  std::vector<Time> values_;
  std::vector<std::uint32_t> stamps_;
  std::uint32_t generation_{1};
};

}  // namespace tad
