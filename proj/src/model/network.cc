#include "tad/model/network.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>
#include <utility>

#include "fmt/core.h"

#include "tad/model/error.h"

namespace tad {

std::size_t DepartureBoard::first_boardable(Time arrival) const {
  if (!arrival.is_finite()) {
    return size();
  }
  auto const it = std::lower_bound(begin(boarding_adjusted_departure),
                                   end(boarding_adjusted_departure),
                                   arrival.seconds());
  return static_cast<std::size_t>(it - begin(boarding_adjusted_departure));
}

std::optional<BoardIdx> Network::find_board(StopIdx from, StopIdx to) const {
  if (from >= stops_.size()) {
    return std::nullopt;
  }
  for (auto const b : boards_from(from)) {
    if (boards_[b].to == to) {
      return b;
    }
  }
  return std::nullopt;
}

bool Network::has_buffers() const {
  return std::any_of(begin(stops_), end(stops_),
                     [](Stop const& s) { return s.buffer > Time::zero(); });
}

std::optional<StopIdx> Network::find_stop(std::string_view id) const {
  for (StopIdx s = 0; s < stops_.size(); ++s) {
    if (stops_[s].id == id) {
      return s;
    }
  }
  return std::nullopt;
}

namespace {

struct BoardEntry {
  Time departure;
  Time arrival_next;
  TripIdx trip;
  std::uint32_t position;
};

}  // namespace

Network assemble_network(Timetable timetable, TransferGraph graph,
                         std::optional<std::vector<VertexId>> mapping,
                         AssembleOptions options) {
  Network n;
  n.stops_ = std::move(timetable.stops);
  n.trips_ = std::move(timetable.trips);
  n.graph_ = std::move(graph);
  n.footpaths_closed_ = options.footpaths_closed;

  auto const vertex_count = n.graph_.vertex_count();
  if (mapping.has_value() && mapping->size() != n.stops_.size()) {
    throw Error{fmt::format("stop mapping has {} entries for {} stops",
                            mapping->size(), n.stops_.size())};
  }
  for (StopIdx s = 0; s < n.stops_.size(); ++s) {
    if (mapping.has_value()) {
      n.stops_[s].vertex = (*mapping)[s];
    } else if (n.stops_[s].vertex == kNoVertex) {
      n.stops_[s].vertex = VertexId{s};
    }
  }

  n.stop_of_vertex_.assign(vertex_count, kNoStop);
  for (StopIdx s = 0; s < n.stops_.size(); ++s) {
    auto const v = n.stops_[s].vertex;
    if (v >= vertex_count) {
      continue;  // reported by validate_network
    }
    if (n.stop_of_vertex_[v] != kNoStop) {
      throw Error{fmt::format("stops {} and {} both map to vertex {}",
                              n.stops_[n.stop_of_vertex_[v]].id,
                              n.stops_[s].id, v)};
    }
    n.stop_of_vertex_[v] = s;
  }

  std::map<std::pair<StopIdx, StopIdx>, std::vector<BoardEntry>> by_edge;
  n.leg_offsets_.reserve(n.trips_.size() + 1);
  n.leg_offsets_.push_back(0);
  for (TripIdx t = 0; t < n.trips_.size(); ++t) {
    auto const& events = n.trips_[t].events;
    for (std::uint32_t i = 0; i < events.size(); ++i) {
      auto const s = events[i].stop;
      if (s >= n.stops_.size() || n.stops_[s].vertex == kNoVertex) {
        throw Error{fmt::format("trip {} references unmapped stop index {}",
                                n.trips_[t].id, s)};
      }
      n.leg_vertex_.push_back(n.stops_[s].vertex);
      n.leg_arrival_.push_back(events[i].arrival);
      if (i + 1 < events.size()) {
        by_edge[{s, events[i + 1].stop}].push_back(
            {events[i].departure, events[i + 1].arrival, t, i});
      }
    }
    n.leg_offsets_.push_back(n.leg_vertex_.size());
  }

  n.boards_.reserve(by_edge.size());
  for (auto& [edge, entries] : by_edge) {
    std::sort(begin(entries), end(entries),
              [](BoardEntry const& a, BoardEntry const& b) {
                return std::tie(a.departure, a.arrival_next, a.trip,
                                a.position) < std::tie(b.departure,
                                                       b.arrival_next, b.trip,
                                                       b.position);
              });
    DepartureBoard board;
    board.from = edge.first;
    board.to = edge.second;
    auto const buffer = n.stops_[edge.first].buffer.seconds();
    for (auto const& e : entries) {
      board.departure.push_back(e.departure);
      board.boarding_adjusted_departure.push_back(e.departure.seconds() -
                                                  buffer);
      board.arrival_next.push_back(e.arrival_next);
      board.trip.push_back(e.trip);
      board.position.push_back(e.position);
    }
    board.suffix_min_arrival.resize(entries.size());
    auto running = kUnreachable;
    for (auto i = entries.size(); i-- > 0;) {
      running = std::min(running, board.arrival_next[i]);
      board.suffix_min_arrival[i] = running;
    }
    n.boards_.push_back(std::move(board));
  }

  n.board_offsets_.assign(n.stops_.size() + 1, 0);
  for (auto const& b : n.boards_) {
    ++n.board_offsets_[b.from + 1];
  }
  std::partial_sum(begin(n.board_offsets_), end(n.board_offsets_),
                   begin(n.board_offsets_));
  n.board_ids_.resize(n.boards_.size());
  // boards_ is ordered by (from, to), so ids per stop are contiguous.
  std::iota(begin(n.board_ids_), end(n.board_ids_), BoardIdx{0});
  return n;
}

std::vector<std::string> validate_network(Network const& network) {
  std::vector<std::string> report;
  auto const vertex_count = network.vertex_count();
  auto const& stops = network.stops();

  for (StopIdx s = 0; s < stops.size(); ++s) {
    auto const& stop = stops[s];
    if (stop.buffer < Time::zero() || !stop.buffer.is_finite()) {
      report.push_back(fmt::format("stop {}: invalid buffer {}", stop.id,
                                   stop.buffer.seconds()));
    }
    if (stop.vertex >= vertex_count) {
      report.push_back(fmt::format("stop {}: vertex {} out of range ({} vertices)",
                                   stop.id, stop.vertex, vertex_count));
    } else if (network.stop_of_vertex(stop.vertex) != s) {
      report.push_back(fmt::format("stop {}: vertex {} does not map back",
                                   stop.id, stop.vertex));
    }
  }

  auto const& trips = network.trips();
  for (auto const& trip : trips) {
    if (trip.events.size() < 2) {
      report.push_back(fmt::format("trip {}: fewer than two stop events", trip.id));
      continue;
    }
    for (std::size_t i = 0; i < trip.events.size(); ++i) {
      auto const& e = trip.events[i];
      if (e.arrival < Time::zero() || !e.departure.is_finite()) {
        report.push_back(fmt::format("trip {}: event {} has invalid time",
                                     trip.id, i));
      } else if (e.departure < e.arrival) {
        report.push_back(fmt::format(
            "trip {}: event {} departs {} before arriving {}", trip.id, i,
            format_gtfs_time(e.departure), format_gtfs_time(e.arrival)));
      }
      if (i + 1 < trip.events.size() &&
          trip.events[i + 1].arrival < e.departure) {
        report.push_back(fmt::format(
            "trip {}: arrives at event {} ({}) before leaving event {} ({})",
            trip.id, i + 1, format_gtfs_time(trip.events[i + 1].arrival), i,
            format_gtfs_time(e.departure)));
      }
    }
  }

  for (auto const& board : network.boards()) {
    auto const label = fmt::format("board {}->{}", stops[board.from].id,
                                   stops[board.to].id);
    if (board.size() == 0) {
      report.push_back(label + ": empty");
      continue;
    }
    for (std::size_t i = 0; i < board.size(); ++i) {
      if (i > 0 && board.departure[i] < board.departure[i - 1]) {
        report.push_back(label + ": departures not sorted");
      }
      auto const expected_min =
          i + 1 < board.size()
              ? std::min(board.arrival_next[i], board.suffix_min_arrival[i + 1])
              : board.arrival_next[i];
      if (board.suffix_min_arrival[i] != expected_min) {
        report.push_back(fmt::format("{}: bad suffix minimum at {}", label, i));
      }
      auto const& events = trips[board.trip[i]].events;
      auto const p = board.position[i];
      if (p + 1 >= events.size() || events[p].stop != board.from ||
          events[p + 1].stop != board.to) {
        report.push_back(fmt::format("{}: entry {} not backed by its trip",
                                     label, i));
      }
    }
  }
  return report;
}

}  // namespace tad
