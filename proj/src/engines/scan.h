#pragma once

#include "tad/model/network.h"

namespace tad::detail {

// Relaxes the stops of `trip` after event `start` at their timetable
// arrival.
template <typename Improve>
void scan_trip_with(Network const& network, TripIdx trip, std::size_t start,
                    Improve&& improve) {
  auto const vertices = network.trip_vertices(trip);
  auto const arrivals = network.trip_arrivals(trip);
  for (auto j = start + 1; j < vertices.size(); ++j) {
    improve(vertices[j], arrivals[j]);
  }
}

}  // namespace tad::detail
