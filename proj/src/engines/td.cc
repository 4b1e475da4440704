#include "tad/engines/engines.h"

#include <algorithm>

#include "search.h"
#include "tad/model/error.h"

namespace tad {

TdEngine::TdEngine(Network const& network, TransferData data)
    : TdEngine{network, filter_boards(network), data} {}

TdEngine::TdEngine(Network const& network,
                   std::vector<std::vector<Connection>> filtered_boards,
                   TransferData data)
    : network_{network},
      filtered_{std::move(filtered_boards)},
      state_{std::make_unique<detail::SearchState>(network, data)} {
  if (filtered_.size() != network.boards().size()) {
    throw Error{"filtered boards do not match the network"};
  }
}

TdEngine::~TdEngine() = default;
TdEngine::TdEngine(TdEngine&&) noexcept = default;

QueryResult TdEngine::query(QueryRequest const& request) {
  auto const& network = network_;
  auto const& filtered = filtered_;
  return state_->run(request, [&](StopIdx stop, Time tau, auto& improve,
                                  QueryStats& stats) {
    auto const ready = tau + network.buffer(stop);
    for (auto const b : network.boards_from(stop)) {
      auto const& conns = filtered[b];
      // Departures and arrivals both increase, so the first boardable
      // connection arrives earliest.
      auto const it = std::lower_bound(
          begin(conns), end(conns), ready,
          [](Connection const& c, Time t) { return c.departure < t; });
      if (it == end(conns)) {
        continue;
      }
      ++stats.scanned_trips;
      improve(network.vertex_of_stop(network.boards()[b].to), it->arrival);
    }
  });
}

Time TdEngine::arrival_at(VertexId v) const { return state_->labels()[v]; }

QueryResult td_query(Network const& network, QueryRequest const& request,
                     TransferData data) {
  return TdEngine{network, data}.query(request);
}

}  // namespace tad
