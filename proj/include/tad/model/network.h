#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tad/model/time.h"
#include "tad/model/timetable.h"
#include "tad/model/transfer_graph.h"
#include "tad/model/types.h"

namespace tad {

// All departures of every trip running directly from stop `from` to stop
// `to`, index-aligned and ordered by (departure, arrival_next, trip).
struct DepartureBoard {
  StopIdx from{kNoStop};
  StopIdx to{kNoStop};

  std::vector<Time> departure;
  // departure - buffer(from), signed so the boarding test
  // `boarding_adjusted_departure[i] >= arrival` is exact for every arrival.
  std::vector<Time::rep> boarding_adjusted_departure;
  std::vector<Time> arrival_next;
  std::vector<TripIdx> trip;
  std::vector<std::uint32_t> position;
  // min(arrival_next[i..]).
  std::vector<Time> suffix_min_arrival;

  std::size_t size() const { return departure.size(); }

  // First index whose departure can be boarded by a passenger standing at
  // `from` since `arrival` (buffer already folded in).
  std::size_t first_boardable(Time arrival) const;
};

struct AssembleOptions {
  // Declares that stop-to-stop walking distances are realized by direct
  // arcs. Only recorded here; CSA verifies it before use.
  bool footpaths_closed{false};
};

class Network;

// Builds departure boards and the stop/vertex index. `mapping[i]` is the
// vertex of stop i; without a mapping each stop keeps its own vertex, or
// gets vertex i when it has none. Throws Error when two stops share
// a vertex or a trip uses a stop without a vertex. Other invariant
// violations are left to validate_network.
Network assemble_network(Timetable timetable, TransferGraph graph,
                         std::optional<std::vector<VertexId>> mapping = {},
                         AssembleOptions options = {});

class Network {
public:
  Network() = default;

  std::vector<Stop> const& stops() const { return stops_; }
  std::vector<Trip> const& trips() const { return trips_; }
  TransferGraph const& graph() const { return graph_; }
  std::vector<DepartureBoard> const& boards() const { return boards_; }

  std::size_t vertex_count() const { return graph_.vertex_count(); }

  std::span<BoardIdx const> boards_from(StopIdx s) const {
    return {board_ids_.data() + board_offsets_[s],
            board_ids_.data() + board_offsets_[s + 1]};
  }
  std::optional<BoardIdx> find_board(StopIdx from, StopIdx to) const;

  StopIdx stop_of_vertex(VertexId v) const {
    return v < stop_of_vertex_.size() ? stop_of_vertex_[v] : kNoStop;
  }
  VertexId vertex_of_stop(StopIdx s) const { return stops_[s].vertex; }
  Time buffer(StopIdx s) const { return stops_[s].buffer; }

  // Flattened trip legs: vertex and timetable arrival per stop event.
  std::span<VertexId const> trip_vertices(TripIdx t) const {
    return {leg_vertex_.data() + leg_offsets_[t],
            leg_vertex_.data() + leg_offsets_[t + 1]};
  }
  std::span<Time const> trip_arrivals(TripIdx t) const {
    return {leg_arrival_.data() + leg_offsets_[t],
            leg_arrival_.data() + leg_offsets_[t + 1]};
  }

  bool footpaths_closed() const { return footpaths_closed_; }
  bool has_buffers() const;
  std::optional<StopIdx> find_stop(std::string_view id) const;

  Timetable timetable() const { return {stops_, trips_}; }

  friend Network assemble_network(Timetable timetable, TransferGraph graph,
                                  std::optional<std::vector<VertexId>> mapping,
                                  AssembleOptions options);

private:
  std::vector<Stop> stops_;
  std::vector<Trip> trips_;
  TransferGraph graph_;
  std::vector<DepartureBoard> boards_;
  std::vector<std::size_t> board_offsets_;
  std::vector<BoardIdx> board_ids_;
  std::vector<StopIdx> stop_of_vertex_;
  std::vector<std::size_t> leg_offsets_;
  std::vector<VertexId> leg_vertex_;
  std::vector<Time> leg_arrival_;
  bool footpaths_closed_{false};
};

// Every invariant violation found, one message each; empty iff valid.
std::vector<std::string> validate_network(Network const& network);

}  // namespace tad
