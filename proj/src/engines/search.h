#pragma once

#include <chrono>
#include <optional>
#include <vector>

#include "tad/engines/query.h"
#include "tad/model/network.h"
#include "tad/preprocessing/contraction.h"
#include "tad/util/indexed_heap.h"

namespace tad::detail {

// Each transfer policy decides how walking is seeded, relaxed and how a
// settled vertex reaches the target on foot:
//   prepare(request, improve)   seeds labels from the source
//   relax(u, tau, improve)      walking from a settled vertex
//   target_leg(u, tau)          arrival at the target walking from u
//   direct()                    walk-only arrival computed in prepare

class PlainTransfers {
public:
  explicit PlainTransfers(TransferGraph const& graph) : graph_{graph} {}

  template <typename Improve>
  void prepare(QueryRequest const& r, Improve&& improve) {
    improve(r.source, r.departure);
  }

  template <typename Improve>
  void relax(VertexId u, Time tau, Improve&& improve) {
    for (auto const& e : graph_.out(u)) {
      improve(e.target, tau + e.weight);
    }
  }

  Time target_leg(VertexId, Time) const { return kUnreachable; }
  Time direct() const { return kUnreachable; }

private:
  TransferGraph const& graph_;
};

class CoreTransfers {
public:
  CoreTransfers(Network const& network, CoreCH const& core)
      : core_{core},
        up_dist_(network.vertex_count()),
        down_dist_(network.vertex_count()),
        heap_(network.vertex_count()) {}

  template <typename Improve>
  void prepare(QueryRequest const& r, Improve&& improve) {
    direct_ = kUnreachable;
    up_dist_.reset();
    down_dist_.reset();
    up_space_.clear();
    if (core_.core(r.source)) {
      improve(r.source, r.departure);
    } else {
      search(r.source, true, [&](VertexId v, Time d) {
        up_space_.push_back(v);
        if (core_.core(v)) {
          improve(v, r.departure + d);
        }
      });
    }
    if (r.target != kNoVertex && !core_.core(r.target)) {
      search(r.target, false, [](VertexId, Time) {});
      auto best = kUnreachable;
      for (auto const v : up_space_) {
        best = std::min(best, up_dist_.get(v) + down_dist_.get(v));
      }
      direct_ = r.departure + best;
    }
  }

  template <typename Improve>
  void relax(VertexId u, Time tau, Improve&& improve) {
    for (auto const& e : core_.core_graph.out(u)) {
      improve(e.target, tau + e.weight);
    }
  }

  Time target_leg(VertexId u, Time tau) const { return tau + down_dist_.get(u); }
  Time direct() const { return direct_; }

private:
  template <typename OnSettle>
  void search(VertexId from, bool upward, OnSettle&& on_settle) {
    auto& dist = upward ? up_dist_ : down_dist_;
    heap_.clear();
    dist.set(from, Time::zero());
    heap_.update(from, Time::zero());
    while (!heap_.empty()) {
      auto const d = heap_.min_key();
      auto const v = heap_.pop();
      on_settle(v, d);
      auto const edges = upward ? core_.hierarchy.up(v) : core_.hierarchy.down(v);
      for (auto const& e : edges) {
        auto const nd = d + e.weight;
        if (nd < dist.get(e.target)) {
          dist.set(e.target, nd);
          heap_.update(e.target, nd);
        }
      }
    }
  }

  CoreCH const& core_;
  StampedTimes up_dist_;
  StampedTimes down_dist_;
  IndexedHeap heap_;
  std::vector<VertexId> up_space_;
  Time direct_{kUnreachable};
};

class BucketTransfers {
public:
  // Rows of stop-to-stop distances are cached per engine up to this many
  // stops; larger networks recompute rows on demand.
  static constexpr std::size_t kRowCacheStopLimit = 8192;

  BucketTransfers(Network const& network, BucketCHData const& data)
      : network_{network},
        forward_{data.ch, data.to_stops},
        backward_{data.reversed, data.from_stops},
        direct_query_{data.ch},
        to_target_(network.stops().size(), kUnreachable),
        row_cache_(network.stops().size() <= kRowCacheStopLimit
                       ? network.stops().size()
                       : 0) {}

  template <typename Improve>
  void prepare(QueryRequest const& r, Improve&& improve) {
    auto const& rows = forward_.run(r.source);
    for (StopIdx s = 0; s < rows.size(); ++s) {
      improve(network_.vertex_of_stop(s), r.departure + rows[s]);
    }
    direct_ = kUnreachable;
    if (r.target != kNoVertex) {
      to_target_ = backward_.run(r.target);
      direct_ = r.departure + direct_query_.distance(r.source, r.target);
    } else {
      std::fill(begin(to_target_), end(to_target_), kUnreachable);
    }
  }

  template <typename Improve>
  void relax(VertexId u, Time tau, Improve&& improve) {
    auto const stop = network_.stop_of_vertex(u);
    if (stop == kNoStop) {
      return;
    }
    auto const& distances = row(stop);
    for (StopIdx s = 0; s < distances.size(); ++s) {
      if (s != stop) {
        improve(network_.vertex_of_stop(s), tau + distances[s]);
      }
    }
  }

  Time target_leg(VertexId u, Time tau) const {
    auto const stop = network_.stop_of_vertex(u);
    return stop == kNoStop ? kUnreachable : tau + to_target_[stop];
  }
  Time direct() const { return direct_; }

private:
  std::vector<Time> const& row(StopIdx stop) {
    if (stop < row_cache_.size()) {
      auto& cached = row_cache_[stop];
      if (cached.empty()) {
        cached = forward_.run(network_.vertex_of_stop(stop));
      }
      return cached;
    }
    return forward_.run(network_.vertex_of_stop(stop));
  }

  Network const& network_;
  BucketQuery forward_;
  BucketQuery backward_;
  CHQuery direct_query_;
  std::vector<Time> to_target_;
  std::vector<std::vector<Time>> row_cache_;
  Time direct_{kUnreachable};
};

// Labels, queue and transfer policies shared by the Dijkstra-style engines.
class SearchState {
public:
  SearchState(Network const& network, TransferData data)
      : network_{network},
        data_{data},
        labels_(network.vertex_count()),
        heap_(network.vertex_count()),
        plain_{network.graph()} {
    if (data.core != nullptr) {
      core_.emplace(network, *data.core);
    }
    if (data.bucket != nullptr) {
      bucket_.emplace(network, *data.bucket);
    }
  }

  Labels& labels() { return labels_; }
  Labels const& labels() const { return labels_; }
  IndexedHeap& heap() { return heap_; }

  // relax_stop(stop, tau, improve, stats) performs the transit relaxation of
  // a settled stop.
  template <typename RelaxStop>
  QueryResult run(QueryRequest const& r, RelaxStop&& relax_stop) {
    check_request(network_, r, data_);
    auto const start = std::chrono::steady_clock::now();
    QueryResult result;
    switch (r.mode) {
      case TransferMode::kPlain: result = run_with(plain_, r, relax_stop); break;
      case TransferMode::kCoreCH: result = run_with(*core_, r, relax_stop); break;
      case TransferMode::kBucketCH: result = run_with(*bucket_, r, relax_stop); break;
    }
    result.stats.wall = std::chrono::steady_clock::now() - start;
    return result;
  }

private:
  template <typename Transfers, typename RelaxStop>
  QueryResult run_with(Transfers& transfers, QueryRequest const& r,
                       RelaxStop& relax_stop) {
    QueryResult result;
    auto& stats = result.stats;
    labels_.reset();
    heap_.clear();

    auto improve = [&](VertexId v, Time t) {
      ++stats.relaxed_edges;
      if (labels_.improve(v, t)) {
        heap_.update(v, t);
      }
    };

    transfers.prepare(r, improve);
    auto best_leg = transfers.direct();
    auto const target = r.target;
    auto const best = [&] {
      return target == kNoVertex ? best_leg : std::min(best_leg, labels_[target]);
    };

    while (!heap_.empty()) {
      if (heap_.min_key() >= best()) {
        break;
      }
      auto const tau = heap_.min_key();
      auto const u = heap_.pop();
      ++stats.settled;
      if (u == target) {
        break;
      }
      best_leg = std::min(best_leg, transfers.target_leg(u, tau));
      auto const stop = network_.stop_of_vertex(u);
      if (stop != kNoStop) {
        relax_stop(stop, tau, improve, stats);
      }
      transfers.relax(u, tau, improve);
    }
    result.arrival = best();
    return result;
  }

  Network const& network_;
  TransferData data_;
  Labels labels_;
  IndexedHeap heap_;
  PlainTransfers plain_;
  std::optional<CoreTransfers> core_;
  std::optional<BucketTransfers> bucket_;
};

}  // namespace tad::detail
