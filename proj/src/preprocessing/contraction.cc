#include "tad/preprocessing/contraction.h"

#include <algorithm>
#include <cassert>
#include <queue>
#include <tuple>

#include "fmt/core.h"

namespace tad {

std::size_t ContractionHierarchy::shortcut_count() const {
  auto const is_shortcut = [](HierarchyEdge const& e) {
    return e.via != kNoVertex;
  };
  return static_cast<std::size_t>(std::count_if(begin(up_), end(up_), is_shortcut) +
                                  std::count_if(begin(down_), end(down_), is_shortcut));
}

ContractionHierarchy ContractionHierarchy::reversed() const {
  auto r = *this;
  std::swap(r.up_offsets_, r.down_offsets_);
  std::swap(r.up_, r.down_);
  return r;
}

std::string ContractionHierarchy::dump() const {
  std::string out;
  for (VertexId v = 0; v < vertex_count(); ++v) {
    out += fmt::format("rank {} {}\n", v, rank_[v]);
  }
  for (VertexId v = 0; v < vertex_count(); ++v) {
    for (auto const& e : up(v)) {
      out += fmt::format("up {} {} {} {}\n", v, e.target, e.weight.seconds(),
                         e.via == kNoVertex ? -1 : static_cast<long long>(e.via));
    }
    for (auto const& e : down(v)) {
      out += fmt::format("down {} {} {} {}\n", e.target, v, e.weight.seconds(),
                         e.via == kNoVertex ? -1 : static_cast<long long>(e.via));
    }
  }
  return out;
}

ContractionHierarchy ContractionHierarchy::from_lists(
    std::vector<std::uint32_t> rank,
    std::vector<std::vector<HierarchyEdge>> const& up,
    std::vector<std::vector<HierarchyEdge>> const& down) {
  ContractionHierarchy ch;
  ch.rank_ = std::move(rank);
  auto const flatten = [](std::vector<std::vector<HierarchyEdge>> const& lists,
                          std::vector<std::size_t>& offsets,
                          std::vector<HierarchyEdge>& edges) {
    offsets.assign(lists.size() + 1, 0);
    for (std::size_t v = 0; v < lists.size(); ++v) {
      offsets[v + 1] = offsets[v] + lists[v].size();
      edges.insert(end(edges), begin(lists[v]), end(lists[v]));
    }
  };
  flatten(up, ch.up_offsets_, ch.up_);
  flatten(down, ch.down_offsets_, ch.down_);
  return ch;
}

namespace {

struct Neighbor {
  VertexId v;
  Time weight;
  VertexId via;
};

struct Shortcut {
  VertexId from;
  VertexId to;
  Time weight;
};

class Contractor {
public:
  Contractor(TransferGraph const& graph, ContractionOptions options)
      : options_{options},
        out_(graph.vertex_count()),
        in_(graph.vertex_count()),
        contracted_(graph.vertex_count(), false),
        contracted_neighbors_(graph.vertex_count(), 0),
        witness_dist_(graph.vertex_count()),
        target_limit_(graph.vertex_count()),
        witness_heap_(graph.vertex_count()),
        rank_(graph.vertex_count(), 0),
        up_(graph.vertex_count()),
        down_(graph.vertex_count()) {
    for (auto const& a : graph.arcs()) {
      if (a.from != a.to) {
        add_arc(a.from, a.to, a.weight, kNoVertex);
      }
    }
  }

  void run(std::vector<std::uint8_t> const& protect,
           std::optional<double> max_avg_degree,
           std::vector<VertexId> const& order) {
    auto const n = static_cast<VertexId>(out_.size());
    if (!order.empty()) {
      for (auto const v : order) {
        if (v >= n || protect[v] || contracted_[v]) {
          continue;
        }
        if (degree_exceeded(max_avg_degree)) {
          break;
        }
        contract(v);
      }
    }
    using Key = std::pair<long long, VertexId>;
    std::priority_queue<Key, std::vector<Key>, std::greater<>> queue;
    std::vector<long long> priority(n, 0);
    for (VertexId v = 0; v < n; ++v) {
      if (!protect[v] && !contracted_[v]) {
        priority[v] = compute_priority(v);
        queue.emplace(priority[v], v);
      }
    }

    while (!queue.empty()) {
      auto const [p, v] = queue.top();
      queue.pop();
      if (contracted_[v] || p != priority[v]) {
        continue;
      }
      auto const fresh = compute_priority(v);
      if (fresh != p) {
        priority[v] = fresh;
        queue.emplace(fresh, v);
        continue;
      }
      if (degree_exceeded(max_avg_degree)) {
        break;
      }
      // Neighbour priorities go stale here; they are refreshed lazily when
      // they reach the top of the queue.
      auto const neighbors = neighbor_set(v);
      contract(v);
      for (auto const u : neighbors) {
        ++contracted_neighbors_[u];
      }
    }

    assign_core_ranks();
  }

  bool degree_exceeded(std::optional<double> max_avg_degree) const {
    return max_avg_degree.has_value() && remaining_vertices() > 0 &&
           static_cast<double>(remaining_arcs_) /
                   static_cast<double>(remaining_vertices()) >
               *max_avg_degree;
  }

  void assign_core_ranks() {
    auto next = next_rank_;
    for (VertexId v = 0; v < out_.size(); ++v) {
      if (!contracted_[v]) {
        rank_[v] = next++;
      }
    }
  }

  ContractionHierarchy hierarchy() {
    for (auto& lists : {&up_, &down_}) {
      for (auto& l : *lists) {
        std::sort(begin(l), end(l), [](HierarchyEdge const& a, HierarchyEdge const& b) {
          return a.target < b.target;
        });
      }
    }
    return ContractionHierarchy::from_lists(rank_, up_, down_);
  }

  std::vector<std::uint8_t> core_flags() const {
    std::vector<std::uint8_t> flags(out_.size());
    for (std::size_t v = 0; v < out_.size(); ++v) {
      flags[v] = contracted_[v] ? 0 : 1;
    }
    return flags;
  }

  TransferGraph core_graph() const {
    std::vector<Arc> arcs;
    for (VertexId u = 0; u < out_.size(); ++u) {
      if (contracted_[u]) {
        continue;
      }
      for (auto const& nb : out_[u]) {
        arcs.push_back({u, nb.v, nb.weight});
      }
    }
    return TransferGraph{out_.size(), std::move(arcs)};
  }

  std::size_t remaining_vertices() const { return out_.size() - contracted_count_; }

private:
  static std::vector<Neighbor>::iterator find(std::vector<Neighbor>& list, VertexId v) {
    return std::find_if(begin(list), end(list),
                        [&](Neighbor const& n) { return n.v == v; });
  }

  // Inserts u->v or improves an existing, heavier u->v.
  void add_arc(VertexId u, VertexId v, Time w, VertexId via) {
    auto it = find(out_[u], v);
    if (it == end(out_[u])) {
      out_[u].push_back({v, w, via});
      in_[v].push_back({u, w, via});
      ++remaining_arcs_;
    } else if (w < it->weight) {
      *it = {v, w, via};
      *find(in_[v], u) = {u, w, via};
    }
  }

  std::vector<VertexId> neighbor_set(VertexId v) const {
    std::vector<VertexId> result;
    for (auto const& n : out_[v]) {
      result.push_back(n.v);
    }
    for (auto const& n : in_[v]) {
      result.push_back(n.v);
    }
    std::sort(begin(result), end(result));
    result.erase(std::unique(begin(result), end(result)), end(result));
    return result;
  }

  // Dijkstra from `source` in the remaining graph without `avoid`, cut off
  // at `bound`, the settle limit, or once every target in target_limit_ is
  // reached within its limit. Results live in witness_dist_.
  void witness_search(VertexId source, VertexId avoid, Time bound,
                      std::size_t pending) {
    witness_dist_.reset();
    witness_heap_.clear();
    witness_dist_.set(source, Time::zero());
    witness_heap_.update(source, Time::zero());
    std::size_t settled = 0;
    while (!witness_heap_.empty() && pending > 0) {
      auto const d = witness_heap_.min_key();
      if (d > bound || settled >= options_.witness_settle_limit) {
        break;
      }
      auto const u = witness_heap_.pop();
      ++settled;
      for (auto const& nb : out_[u]) {
        if (nb.v == avoid) {
          continue;
        }
        auto const nd = d + nb.weight;
        auto const old = witness_dist_.get(nb.v);
        if (nd < old) {
          auto const limit = target_limit_.get(nb.v);
          if (old > limit && nd <= limit) {
            --pending;
          }
          witness_dist_.set(nb.v, nd);
          witness_heap_.update(nb.v, nd);
        }
      }
    }
  }

  std::vector<Shortcut> shortcuts_for(VertexId v) {
    std::vector<Shortcut> result;
    if (out_[v].empty()) {
      return result;
    }
    auto max_out = Time::zero();
    for (auto const& o : out_[v]) {
      max_out = std::max(max_out, o.weight);
    }
    for (auto const& i : in_[v]) {
      target_limit_.reset();
      std::size_t pending = 0;
      for (auto const& o : out_[v]) {
        if (o.v != i.v) {
          target_limit_.set(o.v, i.weight + o.weight);
          ++pending;
        }
      }
      witness_search(i.v, v, i.weight + max_out, pending);
      for (auto const& o : out_[v]) {
        if (o.v == i.v) {
          continue;
        }
        auto const via_v = i.weight + o.weight;
        if (witness_dist_.get(o.v) > via_v) {
          result.push_back({i.v, o.v, via_v});
        }
      }
    }
    return result;
  }

  long long compute_priority(VertexId v) {
    auto const shortcuts = static_cast<long long>(shortcuts_for(v).size());
    auto const removed = static_cast<long long>(out_[v].size() + in_[v].size());
    return shortcuts - removed + contracted_neighbors_[v];
  }

  void contract(VertexId v) {
    auto const shortcuts = shortcuts_for(v);
    rank_[v] = next_rank_++;
    for (auto const& o : out_[v]) {
      up_[v].push_back({o.v, o.weight, o.via});
    }
    for (auto const& i : in_[v]) {
      down_[v].push_back({i.v, i.weight, i.via});
    }
    for (auto const& o : out_[v]) {
      auto& list = in_[o.v];
      list.erase(find(list, v));
    }
    for (auto const& i : in_[v]) {
      auto& list = out_[i.v];
      list.erase(find(list, v));
    }
    remaining_arcs_ -= out_[v].size() + in_[v].size();
    out_[v].clear();
    in_[v].clear();
    contracted_[v] = true;
    ++contracted_count_;
    for (auto const& s : shortcuts) {
      add_arc(s.from, s.to, s.weight, v);
    }
  }

  ContractionOptions options_;
  std::vector<std::vector<Neighbor>> out_;
  std::vector<std::vector<Neighbor>> in_;
  std::vector<bool> contracted_;
  std::vector<std::uint32_t> contracted_neighbors_;
  StampedTimes witness_dist_;
  StampedTimes target_limit_;
  IndexedHeap witness_heap_;
  std::vector<std::uint32_t> rank_;
  std::uint32_t next_rank_{0};
  std::vector<std::vector<HierarchyEdge>> up_;
  std::vector<std::vector<HierarchyEdge>> down_;
  std::size_t remaining_arcs_{0};
  std::size_t contracted_count_{0};
};

}  // namespace

ContractionHierarchy build_ch(TransferGraph const& graph,
                              ContractionOptions options) {
  Contractor c{graph, options};
  c.run(std::vector<std::uint8_t>(graph.vertex_count(), 0), std::nullopt, options.order);
  return c.hierarchy();
}

CoreCH build_core_ch(TransferGraph const& graph,
                     std::span<VertexId const> protected_vertices,
                     double max_avg_core_degree, ContractionOptions options) {
  std::vector<std::uint8_t> protect(graph.vertex_count(), 0);
  for (auto const v : protected_vertices) {
    protect[v] = 1;
  }
  Contractor c{graph, options};
  c.run(protect, max_avg_core_degree, options.order);
  CoreCH result;
  result.is_core = c.core_flags();
  result.core_graph = c.core_graph();
  result.core_vertex_count = c.remaining_vertices();
  result.hierarchy = c.hierarchy();
  return result;
}

CHQuery::CHQuery(ContractionHierarchy const& ch)
    : ch_{ch},
      fwd_dist_(ch.vertex_count()),
      bwd_dist_(ch.vertex_count()),
      fwd_parent_(ch.vertex_count(), kNoVertex),
      fwd_parent_via_(ch.vertex_count(), kNoVertex),
      bwd_parent_(ch.vertex_count(), kNoVertex),
      bwd_parent_via_(ch.vertex_count(), kNoVertex),
      fwd_heap_(ch.vertex_count()),
      bwd_heap_(ch.vertex_count()) {}

void CHQuery::run(VertexId s, VertexId t) {
  fwd_dist_.reset();
  bwd_dist_.reset();
  fwd_heap_.clear();
  bwd_heap_.clear();
  best_ = kUnreachable;
  meeting_ = kNoVertex;

  fwd_dist_.set(s, Time::zero());
  fwd_parent_[s] = kNoVertex;
  fwd_heap_.update(s, Time::zero());
  bwd_dist_.set(t, Time::zero());
  bwd_parent_[t] = kNoVertex;
  bwd_heap_.update(t, Time::zero());

  auto const step = [&](IndexedHeap& heap, StampedTimes& dist,
                        StampedTimes const& other, std::vector<VertexId>& parent,
                        std::vector<VertexId>& parent_via, bool forward) {
    auto const d = heap.min_key();
    auto const u = heap.pop();
    auto const meet = d + other.get(u);
    if (meet < best_) {
      best_ = meet;
      meeting_ = u;
    }
    for (auto const& e : forward ? ch_.up(u) : ch_.down(u)) {
      auto const nd = d + e.weight;
      if (nd < dist.get(e.target)) {
        dist.set(e.target, nd);
        parent[e.target] = u;
        parent_via[e.target] = e.via;
        heap.update(e.target, nd);
      }
    }
  };

  while (true) {
    auto const fwd_open = !fwd_heap_.empty() && fwd_heap_.min_key() < best_;
    auto const bwd_open = !bwd_heap_.empty() && bwd_heap_.min_key() < best_;
    if (!fwd_open && !bwd_open) {
      break;
    }
    if (fwd_open && (!bwd_open || fwd_heap_.min_key() <= bwd_heap_.min_key())) {
      step(fwd_heap_, fwd_dist_, bwd_dist_, fwd_parent_, fwd_parent_via_, true);
    } else {
      step(bwd_heap_, bwd_dist_, fwd_dist_, bwd_parent_, bwd_parent_via_, false);
    }
  }
}

Time CHQuery::distance(VertexId s, VertexId t) {
  run(s, t);
  return best_;
}

void CHQuery::unpack(VertexId from, VertexId to, VertexId via,
                     std::vector<VertexId>& out) const {
  if (via == kNoVertex) {
    out.push_back(to);
    return;
  }
  // from -> via is a downward arc stored at via; via -> to an upward one.
  auto const first = std::find_if(ch_.down(via).begin(), ch_.down(via).end(),
                                  [&](HierarchyEdge const& e) { return e.target == from; });
  auto const second = std::find_if(ch_.up(via).begin(), ch_.up(via).end(),
                                   [&](HierarchyEdge const& e) { return e.target == to; });
  assert(first != ch_.down(via).end() && second != ch_.up(via).end());
  unpack(from, via, first->via, out);
  unpack(via, to, second->via, out);
}

std::vector<VertexId> CHQuery::path(VertexId s, VertexId t) {
  run(s, t);
  if (!best_.is_finite()) {
    return {};
  }
  std::vector<std::pair<VertexId, VertexId>> up_hops;  // (vertex, via) toward s
  for (auto v = meeting_; v != s; v = fwd_parent_[v]) {
    up_hops.emplace_back(v, fwd_parent_via_[v]);
  }
  std::vector<VertexId> result{s};
  auto prev = s;
  for (auto it = up_hops.rbegin(); it != up_hops.rend(); ++it) {
    unpack(prev, it->first, it->second, result);
    prev = it->first;
  }
  for (auto v = meeting_; v != t; v = bwd_parent_[v]) {
    auto const next = bwd_parent_[v];
    unpack(v, next, bwd_parent_via_[v], result);
  }
  return result;
}

Time ch_query(ContractionHierarchy const& ch, VertexId s, VertexId t) {
  return CHQuery{ch}.distance(s, t);
}

Buckets build_buckets(ContractionHierarchy const& ch,
                      std::span<VertexId const> targets) {
  auto const n = ch.vertex_count();
  std::vector<std::vector<Buckets::Entry>> lists(n);
  StampedTimes dist(n);
  IndexedHeap heap(n);
  for (std::uint32_t i = 0; i < targets.size(); ++i) {
    dist.reset();
    heap.clear();
    dist.set(targets[i], Time::zero());
    heap.update(targets[i], Time::zero());
    while (!heap.empty()) {
      auto const d = heap.min_key();
      auto const v = heap.pop();
      lists[v].push_back({i, d});
      for (auto const& e : ch.down(v)) {
        auto const nd = d + e.weight;
        if (nd < dist.get(e.target)) {
          dist.set(e.target, nd);
          heap.update(e.target, nd);
        }
      }
    }
  }
  Buckets b;
  b.targets.assign(begin(targets), end(targets));
  b.offsets.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    b.offsets[v + 1] = b.offsets[v] + lists[v].size();
    b.entries.insert(end(b.entries), begin(lists[v]), end(lists[v]));
  }
  return b;
}

BucketQuery::BucketQuery(ContractionHierarchy const& ch, Buckets const& buckets)
    : ch_{ch},
      buckets_{buckets},
      dist_(ch.vertex_count()),
      heap_(ch.vertex_count()),
      result_(buckets.targets.size(), kUnreachable) {}

std::vector<Time> const& BucketQuery::run(VertexId source) {
  std::fill(begin(result_), end(result_), kUnreachable);
  dist_.reset();
  heap_.clear();
  settled_ = 0;
  dist_.set(source, Time::zero());
  heap_.update(source, Time::zero());
  while (!heap_.empty()) {
    auto const d = heap_.min_key();
    auto const v = heap_.pop();
    ++settled_;
    for (auto const& entry : buckets_.at(v)) {
      auto const candidate = d + entry.distance;
      if (candidate < result_[entry.target_index]) {
        result_[entry.target_index] = candidate;
      }
    }
    for (auto const& e : ch_.up(v)) {
      auto const nd = d + e.weight;
      if (nd < dist_.get(e.target)) {
        dist_.set(e.target, nd);
        heap_.update(e.target, nd);
      }
    }
  }
  return result_;
}

std::vector<Time> bucket_one_to_many(ContractionHierarchy const& ch,
                                     Buckets const& buckets, VertexId source) {
  BucketQuery q{ch, buckets};
  return q.run(source);
}

}  // namespace tad
