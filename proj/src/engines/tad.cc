#include "tad/engines/engines.h"

#include "scan.h"
#include "search.h"

namespace tad {

std::size_t scan_trip(Network const& network, TripIdx trip,
                      std::size_t start_index, Labels& labels,
                      IndexedHeap& queue) {
  std::size_t improved = 0;
  detail::scan_trip_with(network, trip, start_index, [&](VertexId v, Time t) {
    if (labels.improve(v, t)) {
      queue.update(v, t);
      ++improved;
    }
  });
  return improved;
}

TadEngine::TadEngine(Network const& network, TransferData data)
    : network_{network},
      state_{std::make_unique<detail::SearchState>(network, data)} {}

TadEngine::~TadEngine() = default;
TadEngine::TadEngine(TadEngine&&) noexcept = default;

QueryResult TadEngine::query(QueryRequest const& request) {
  auto const pruning = request.pruning;
  auto const fault = pruning_fault_;
  auto const& network = network_;
  return state_->run(request, [&](StopIdx stop, Time tau, auto& improve,
                                  QueryStats& stats) {
    for (auto const b : network.boards_from(stop)) {
      auto const& board = network.boards()[b];
      auto const slack = fault ? Time::zero() : network.buffer(board.to);
      auto best = kUnreachable;
      for (auto i = board.first_boardable(tau); i < board.size(); ++i) {
        // Every remaining trip reaches the next stop so late that a
        // passenger already there could board it after the buffer.
        if (pruning && best.is_finite() &&
            board.suffix_min_arrival[i] > best + slack) {
          break;
        }
        ++stats.scanned_trips;
        detail::scan_trip_with(network, board.trip[i], board.position[i],
                               improve);
        best = std::min(best, board.arrival_next[i]);
      }
    }
  });
}

Time TadEngine::arrival_at(VertexId v) const { return state_->labels()[v]; }

QueryResult tad_query(Network const& network, QueryRequest const& request,
                      TransferData data) {
  return TadEngine{network, data}.query(request);
}

std::vector<PruneStep> trip_pruning_trace(DepartureBoard const& board,
                                          Time boarding_time,
                                          Time buffer_at_next) {
  std::vector<PruneStep> steps;
  auto best = kUnreachable;
  bool pruned = false;
  for (std::size_t i = 0; i < board.size(); ++i) {
    if (board.departure[i] < boarding_time) {
      continue;
    }
    if (!pruned && best.is_finite() &&
        board.suffix_min_arrival[i] > best + buffer_at_next) {
      pruned = true;
    }
    if (pruned) {
      steps.push_back({board.trip[i], PruneDecision::kSkipped});
    } else {
      steps.push_back({board.trip[i], PruneDecision::kScanned});
      best = std::min(best, board.arrival_next[i]);
    }
  }
  return steps;
}

std::vector<PruneStep> trip_pruning_trace(Network const& network,
                                          BoardIdx board, Time boarding_time) {
  auto const& b = network.boards().at(board);
  return trip_pruning_trace(b, boarding_time, network.buffer(b.to));
}

}  // namespace tad
