#include "tad/engines/engines.h"

#include <algorithm>
#include <chrono>

#include "fmt/core.h"
#include "tad/model/error.h"

namespace tad {

CsaEngine::CsaEngine(Network const& network)
    : network_{network},
      reversed_{network.graph().reversed()},
      footpaths_(network.stops().size()),
      stop_arrival_(network.stops().size(), kUnreachable),
      to_target_(network.stops().size(), kUnreachable),
      boarded_(network.trips().size(), 0),
      walk_dist_(network.vertex_count()),
      walk_heap_(network.vertex_count()) {
  auto const& stops = network.stops();
  for (TripIdx t = 0; t < network.trips().size(); ++t) {
    auto const& ev = network.trips()[t].events;
    for (std::size_t p = 0; p + 1 < ev.size(); ++p) {
      if (!(ev[p].departure < ev[p + 1].arrival)) {
        throw Error{fmt::format(
            "trip {} has a non-positive connection duration at event {}",
            network.trips()[t].id, p)};
      }
      connections_.push_back(
          {ev[p].departure, ev[p + 1].arrival, ev[p].stop, ev[p + 1].stop, t});
    }
  }
  std::stable_sort(begin(connections_), end(connections_),
                   [](Conn const& a, Conn const& b) {
                     return std::tie(a.departure, a.arrival) <
                            std::tie(b.departure, b.arrival);
                   });

  // Direct stop-to-stop arcs; each must already be a shortest walk.
  std::vector<Time> direct(stops.size(), kUnreachable);
  for (StopIdx s = 0; s < stops.size(); ++s) {
    std::fill(begin(direct), end(direct), kUnreachable);
    for (auto const& e : network.graph().out(stops[s].vertex)) {
      auto const to = network.stop_of_vertex(e.target);
      if (to != kNoStop && to != s) {
        direct[to] = std::min(direct[to], e.weight);
      }
    }
    walk(network.graph(), stops[s].vertex);
    for (StopIdx o = 0; o < stops.size(); ++o) {
      if (o == s) {
        continue;
      }
      auto const shortest = walk_dist_.get(stops[o].vertex);
      if (shortest != direct[o]) {
        throw Error{fmt::format(
            "footpaths are not transitively closed: walking {} -> {} takes {}s "
            "but the direct arc takes {}",
            stops[s].id, stops[o].id,
            shortest.is_finite() ? std::to_string(shortest.seconds()) : "inf",
            direct[o].is_finite() ? std::to_string(direct[o].seconds()) + "s"
                                  : "no arc")};
      }
      if (direct[o].is_finite()) {
        footpaths_[s].push_back({o, direct[o]});
      }
    }
  }
}

void CsaEngine::walk(TransferGraph const& g, VertexId source) {
  walk_dist_.reset();
  walk_heap_.clear();
  walk_dist_.set(source, Time::zero());
  walk_heap_.update(source, Time::zero());
  while (!walk_heap_.empty()) {
    auto const d = walk_heap_.min_key();
    auto const u = walk_heap_.pop();
    for (auto const& e : g.out(u)) {
      auto const nd = d + e.weight;
      if (nd < walk_dist_.get(e.target)) {
        walk_dist_.set(e.target, nd);
        walk_heap_.update(e.target, nd);
      }
    }
  }
}

QueryResult CsaEngine::query(QueryRequest const& r) {
  auto const start = std::chrono::steady_clock::now();
  check_request(network_, r, {});
  if (r.target == kNoVertex) {
    throw Error{"CSA needs a target vertex"};
  }
  QueryResult result;
  auto& stats = result.stats;
  auto const& stops = network_.stops();

  walk(network_.graph(), r.source);
  for (StopIdx s = 0; s < stops.size(); ++s) {
    stop_arrival_[s] = r.departure + walk_dist_.get(stops[s].vertex);
  }
  walk(reversed_, r.target);
  for (StopIdx s = 0; s < stops.size(); ++s) {
    to_target_[s] = walk_dist_.get(stops[s].vertex);
  }
  auto best = r.departure + walk_dist_.get(r.source);
  std::fill(begin(boarded_), end(boarded_), 0);

  auto const first = std::lower_bound(
      begin(connections_), end(connections_), r.departure,
      [](Conn const& c, Time t) { return c.departure < t; });
  for (auto it = first; it != end(connections_); ++it) {
    auto const& c = *it;
    if (c.departure >= best) {
      break;
    }
    ++stats.relaxed_edges;
    if (boarded_[c.trip] == 0) {
      if (!(stop_arrival_[c.from] + network_.buffer(c.from) <= c.departure)) {
        continue;
      }
      boarded_[c.trip] = 1;
      ++stats.scanned_trips;
    }
    if (c.arrival < stop_arrival_[c.to]) {
      stop_arrival_[c.to] = c.arrival;
      best = std::min(best, c.arrival + to_target_[c.to]);
      for (auto const& f : footpaths_[c.to]) {
        auto const t = c.arrival + f.weight;
        if (t < stop_arrival_[f.to]) {
          stop_arrival_[f.to] = t;
          best = std::min(best, t + to_target_[f.to]);
        }
      }
    }
  }
  result.arrival = best;
  stats.wall = std::chrono::steady_clock::now() - start;
  return result;
}

QueryResult csa_query(Network const& network, QueryRequest const& request) {
  return CsaEngine{network}.query(request);
}

}  // namespace tad
