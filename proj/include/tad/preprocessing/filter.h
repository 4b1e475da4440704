#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tad/model/network.h"
#include "tad/model/time.h"
#include "tad/model/types.h"

namespace tad {

// One departure on a transit edge.
struct Connection {
  Time departure;
  Time arrival;
  TripIdx trip{kNoTrip};
  std::uint32_t position{0};

  friend bool operator==(Connection const&, Connection const&) = default;
};

// Drops every connection that another one dominates (departs no earlier and
// arrives no later, one of them strictly). Of several identical
// (departure, arrival) pairs only the first is kept. Input must be sorted by
// departure; the result is strictly increasing in departure and arrival.
//
// Only sound when no stop has a buffer time.
std::vector<Connection> filter_dominated(std::span<Connection const> sorted);

std::vector<Connection> board_connections(DepartureBoard const& board);

// filter_dominated applied to every departure board, indexed like
// Network::boards().
std::vector<std::vector<Connection>> filter_boards(Network const& network);

}  // namespace tad
