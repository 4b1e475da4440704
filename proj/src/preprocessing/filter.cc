#include "tad/preprocessing/filter.h"

#include <algorithm>
#include <cassert>

namespace tad {

std::vector<Connection> filter_dominated(std::span<Connection const> sorted) {
  assert(std::is_sorted(begin(sorted), end(sorted),
                        [](Connection const& a, Connection const& b) {
                          return a.departure < b.departure;
                        }));
  std::vector<Connection> kept;
  auto later_min = kUnreachable;  // best arrival among strictly later departures
  auto group_end = sorted.size();
  while (group_end > 0) {
    auto group_begin = group_end - 1;
    while (group_begin > 0 &&
           sorted[group_begin - 1].departure == sorted[group_end - 1].departure) {
      --group_begin;
    }
    std::size_t best = group_begin;
    for (auto i = group_begin + 1; i < group_end; ++i) {
      if (sorted[i].arrival < sorted[best].arrival) {
        best = i;
      }
    }
    if (sorted[best].arrival < later_min) {
      kept.push_back(sorted[best]);
      later_min = sorted[best].arrival;
    }
    group_end = group_begin;
  }
  std::reverse(begin(kept), end(kept));
  return kept;
}

std::vector<Connection> board_connections(DepartureBoard const& board) {
  std::vector<Connection> result;
  result.reserve(board.size());
  for (std::size_t i = 0; i < board.size(); ++i) {
    result.push_back({board.departure[i], board.arrival_next[i], board.trip[i],
                      board.position[i]});
  }
  return result;
}

std::vector<std::vector<Connection>> filter_boards(Network const& network) {
  std::vector<std::vector<Connection>> result;
  result.reserve(network.boards().size());
  for (auto const& board : network.boards()) {
    result.push_back(filter_dominated(board_connections(board)));
  }
  return result;
}

}  // namespace tad
