#include "tad/oracle/oracle.h"

#include <deque>
#include <functional>

#include "fmt/core.h"
#include "tad/model/error.h"

namespace tad {

namespace {

std::size_t departure_count(Network const& network) {
  std::size_t n = 0;
  for (auto const& t : network.trips()) {
    n += t.events.empty() ? 0 : t.events.size() - 1;
  }
  return n;
}

void check_vertices(Network const& network, VertexId source, VertexId target) {
  if (source >= network.vertex_count() || target >= network.vertex_count()) {
    throw Error{"oracle: vertex out of range"};
  }
}

// (trip, event index) pairs boarding at each stop, read off the trips.
std::vector<std::vector<std::pair<TripIdx, std::size_t>>> boardings(
    Network const& network) {
  std::vector<std::vector<std::pair<TripIdx, std::size_t>>> at(
      network.stops().size());
  for (TripIdx t = 0; t < network.trips().size(); ++t) {
    auto const& ev = network.trips()[t].events;
    for (std::size_t i = 0; i + 1 < ev.size(); ++i) {
      at[ev[i].stop].push_back({t, i});
    }
  }
  return at;
}

}  // namespace

Time oracle_query(Network const& network, VertexId source, VertexId target,
                  Time departure) {
  if (network.vertex_count() > kOracleMaxVertices ||
      departure_count(network) > kOracleMaxDepartures) {
    throw Error{fmt::format(
        "oracle: instance too large ({} vertices, {} departures)",
        network.vertex_count(), departure_count(network))};
  }
  check_vertices(network, source, target);

  auto const at_stop = boardings(network);
  auto const& stops = network.stops();
  std::vector<StopIdx> stop_of(network.vertex_count(), kNoStop);
  for (StopIdx s = 0; s < stops.size(); ++s) {
    stop_of[stops[s].vertex] = s;
  }

  std::vector<Time> label(network.vertex_count(), kUnreachable);
  std::vector<char> queued(network.vertex_count(), 0);
  std::deque<VertexId> work;
  auto lower = [&](VertexId v, Time t) {
    if (t < label[v]) {
      label[v] = t;
      if (!queued[v]) {
        queued[v] = 1;
        work.push_back(v);
      }
    }
  };

  lower(source, departure);
  while (!work.empty()) {
    auto const u = work.front();
    work.pop_front();
    queued[u] = 0;
    auto const tau = label[u];
    for (auto const& e : network.graph().out(u)) {
      lower(e.target, tau + e.weight);
    }
    auto const s = stop_of[u];
    if (s == kNoStop) {
      continue;
    }
    auto const ready = tau + stops[s].buffer;
    for (auto const& [t, i] : at_stop[s]) {
      auto const& ev = network.trips()[t].events;
      if (ev[i].departure < ready) {
        continue;
      }
      for (auto j = i + 1; j < ev.size(); ++j) {
        lower(stops[ev[j].stop].vertex, ev[j].arrival);
      }
    }
  }
  return label[target];
}

std::vector<EnumeratedJourney> enumerate_journeys(Network const& network,
                                                  VertexId source,
                                                  VertexId target,
                                                  Time departure,
                                                  std::size_t max_trips) {
  std::size_t events = 0;
  for (auto const& t : network.trips()) {
    events += t.events.size();
  }
  auto const n = network.vertex_count();
  if (n > kEnumerationMaxVertices || events > kEnumerationMaxEvents) {
    throw Error{fmt::format(
        "enumerate_journeys: instance too large ({} vertices, {} stop events)",
        n, events)};
  }
  check_vertices(network, source, target);

  // All-pairs shortest walks by Bellman-Ford rounds.
  std::vector<std::vector<Time>> walk(n, std::vector<Time>(n, kUnreachable));
  auto const arcs = network.graph().arcs();
  for (VertexId s = 0; s < n; ++s) {
    auto& d = walk[s];
    d[s] = Time::zero();
    for (std::size_t round = 0; round < n; ++round) {
      bool changed = false;
      for (auto const& a : arcs) {
        if (d[a.from] + a.weight < d[a.to]) {
          d[a.to] = d[a.from] + a.weight;
          changed = true;
        }
      }
      if (!changed) {
        break;
      }
    }
  }

  auto const& stops = network.stops();
  auto const& trips = network.trips();
  std::vector<EnumeratedJourney> out;
  std::vector<std::string> legs;

  auto join = [&](std::string const& last) {
    std::string text;
    for (auto const& l : legs) {
      text += l;
      text += "; ";
    }
    return text + last;
  };

  std::function<void(VertexId, Time, std::size_t)> visit =
      [&](VertexId at, Time tau, std::size_t used) {
        if (auto const arrival = tau + walk[at][target]; arrival.is_finite()) {
          out.push_back({join(fmt::format("walk to {}", target)), arrival, used});
        }
        if (used == max_trips) {
          return;
        }
        for (TripIdx t = 0; t < trips.size(); ++t) {
          auto const& ev = trips[t].events;
          for (std::size_t i = 0; i + 1 < ev.size(); ++i) {
            auto const& board = stops[ev[i].stop];
            auto const reach = tau + walk[at][board.vertex];
            if (!reach.is_finite() || ev[i].departure < reach + board.buffer) {
              continue;
            }
            for (auto j = i + 1; j < ev.size(); ++j) {
              auto const& alight = stops[ev[j].stop];
              legs.push_back(fmt::format("{} {} -> {}", trips[t].id, board.id,
                                         alight.id));
              visit(alight.vertex, ev[j].arrival, used + 1);
              legs.pop_back();
            }
          }
        }
      };
  visit(source, departure, 0);
  return out;
}

}  // namespace tad
