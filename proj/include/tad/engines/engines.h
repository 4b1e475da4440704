#pragma once

#include <memory>
#include <span>
#include <vector>

#include "tad/engines/query.h"
#include "tad/model/network.h"
#include "tad/preprocessing/filter.h"

namespace tad {

namespace detail {
class SearchState;
}

// Relaxes every stop of `trip` after `start_index` at its timetable arrival.
// Returns the number of labels improved; improved vertices are (re)queued.
std::size_t scan_trip(Network const& network, TripIdx trip,
                      std::size_t start_index, Labels& labels,
                      IndexedHeap& queue);

// Transfer Aware Dijkstra: boarding a trip scans its whole remainder, so
// seated passengers never pay intermediate buffers.
class TadEngine {
public:
  explicit TadEngine(Network const& network, TransferData data = {});
  ~TadEngine();
  TadEngine(TadEngine&&) noexcept;

  QueryResult query(QueryRequest const& request);

  // Label of v after the last query (one-to-all results in plain mode).
  Time arrival_at(VertexId v) const;

  // Test hook: prune without the destination buffer term. Breaks exactness
  // on buffered networks.
  void inject_pruning_fault(bool on) { pruning_fault_ = on; }

private:
  Network const& network_;
  std::unique_ptr<detail::SearchState> state_;
  bool pruning_fault_{false};
};

// Time-dependent Dijkstra over dominance-filtered departure boards: one
// binary search per transit edge. Exact only when no stop has a buffer.
class TdEngine {
public:
  explicit TdEngine(Network const& network, TransferData data = {});
  TdEngine(Network const& network,
           std::vector<std::vector<Connection>> filtered_boards,
           TransferData data = {});
  ~TdEngine();
  TdEngine(TdEngine&&) noexcept;

  QueryResult query(QueryRequest const& request);
  Time arrival_at(VertexId v) const;

private:
  Network const& network_;
  std::vector<std::vector<Connection>> filtered_;
  std::unique_ptr<detail::SearchState> state_;
};

// Connection scan with per-trip boarded flags. Requires stop-to-stop
// walking distances to be realized by direct arcs; the constructor verifies
// that and throws Error otherwise. Source and target walks use plain
// Dijkstra on the full transfer graph.
class CsaEngine {
public:
  explicit CsaEngine(Network const& network);

  QueryResult query(QueryRequest const& request);

private:
  struct Conn {
    Time departure;
    Time arrival;
    StopIdx from;
    StopIdx to;
    TripIdx trip;
  };
  struct Footpath {
    StopIdx to;
    Time weight;
  };

  void walk(TransferGraph const& g, VertexId source);

  Network const& network_;
  TransferGraph reversed_;
  std::vector<Conn> connections_;
  std::vector<std::vector<Footpath>> footpaths_;
  std::vector<Time> stop_arrival_;
  std::vector<Time> to_target_;
  std::vector<std::uint8_t> boarded_;
  StampedTimes walk_dist_;
  IndexedHeap walk_heap_;
};

struct MrOptions {
  std::size_t max_rounds{16};
};

// Round-based search: trip-aware route scans alternate with multi-source
// Dijkstra on the Core-CH core graph. Initial and final walks through
// contracted vertices use the hierarchy's upward and downward graphs.
class MrEngine {
public:
  MrEngine(Network const& network, CoreCH const& core, MrOptions options = {});

  QueryResult query(QueryRequest const& request);

  // True if the last query stopped at max_rounds with stops still marked.
  bool round_cap_hit() const { return round_cap_hit_; }
  std::size_t route_count() const { return routes_.size(); }

private:
  // Trips sharing one stop sequence where no trip overtakes another.
  struct Route {
    std::vector<StopIdx> stops;
    std::vector<TripIdx> trips;  // ordered; times non-decreasing per position
    std::vector<Time> arrival;   // [trip * stops.size() + position]
    std::vector<Time> departure;
  };

  void build_routes();
  void transfer_phase(std::vector<VertexId> const& seeds, Time target_bound,
                      QueryStats& stats);
  Time target_arrival(VertexId target) const;

  Network const& network_;
  CoreCH const& core_;
  MrOptions options_;
  std::vector<Route> routes_;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> routes_at_stop_;

  std::vector<Time> arrival_;
  std::vector<Time> previous_;
  std::vector<std::uint8_t> improved_;
  std::vector<VertexId> touched_;
  IndexedHeap heap_;
  StampedTimes up_dist_;
  StampedTimes down_dist_;
  std::vector<VertexId> down_core_;
  std::vector<std::uint32_t> route_start_;
  bool round_cap_hit_{false};
};

// Single-query conveniences; they build a throwaway engine.
QueryResult tad_query(Network const& network, QueryRequest const& request,
                      TransferData data = {});
QueryResult td_query(Network const& network, QueryRequest const& request,
                     TransferData data = {});
QueryResult csa_query(Network const& network, QueryRequest const& request);
QueryResult mr_query(Network const& network, CoreCH const& core,
                     QueryRequest const& request);

enum class PruneDecision { kScanned, kSkipped };

struct PruneStep {
  TripIdx trip;
  PruneDecision decision;
};

// Replays the per-edge boarding loop on one board: every departure at or
// after `boarding_time`, scanned until the pruning rule fires.
std::vector<PruneStep> trip_pruning_trace(DepartureBoard const& board,
                                          Time boarding_time,
                                          Time buffer_at_next);
std::vector<PruneStep> trip_pruning_trace(Network const& network,
                                          BoardIdx board, Time boarding_time);

}  // namespace tad
