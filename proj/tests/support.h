#pragma once

// Helpers shared by the test binaries: independent shortest-path oracles,
// hand-rolled random generators and query sampling.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <random>
#include <vector>

#include "tad/model/network.h"
#include "tad/netgen/netgen.h"
#include "tad/preprocessing/filter.h"

namespace tad::test {

// Textbook Dijkstra on an arc list, written independently of the library.
inline std::vector<Time> reference_distances(std::size_t n,
                                             std::vector<Arc> const& arcs,
                                             VertexId source) {
  std::vector<std::vector<std::pair<VertexId, Time>>> adj(n);
  for (auto const& a : arcs) {
    adj[a.from].push_back({a.to, a.weight});
  }
  std::vector<Time> dist(n, kUnreachable);
  using Item = std::pair<Time::rep, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[source] = Time::zero();
  pq.push({0, source});
  while (!pq.empty()) {
    auto const [d, u] = pq.top();
    pq.pop();
    if (d != dist[u].seconds()) {
      continue;
    }
    for (auto const& [v, w] : adj[u]) {
      auto const nd = Time{d} + w;
      if (nd < dist[v]) {
        dist[v] = nd;
        pq.push({nd.seconds(), v});
      }
    }
  }
  return dist;
}

inline std::vector<Time> reference_distances(TransferGraph const& g,
                                             VertexId source) {
  return reference_distances(g.vertex_count(), g.arcs(), source);
}

// Random geometric-ish graph: random points, each linked to a few random
// near vertices, plus some one-way arcs so the graph is not symmetric.
inline TransferGraph random_graph(std::mt19937_64& rng, std::size_t n,
                                  std::size_t degree = 3) {
  std::uniform_real_distribution<double> coord(0.0, 1000.0);
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = coord(rng);
    y[i] = coord(rng);
  }
  std::vector<Arc> arcs;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t k = 0; k < degree; ++k) {
      auto const w = pick(rng);
      if (w == v) {
        continue;
      }
      auto const d = Time{1 + static_cast<Time::rep>(
                                  std::hypot(x[v] - x[w], y[v] - y[w]))};
      arcs.push_back({static_cast<VertexId>(v), static_cast<VertexId>(w), d});
      if (rng() % 4 != 0) {
        arcs.push_back({static_cast<VertexId>(w), static_cast<VertexId>(v), d});
      }
    }
  }
  return TransferGraph{n, std::move(arcs)};
}

struct Query {
  VertexId source;
  VertexId target;
  Time departure;
};

// Sources and targets uniform over vertices, departures uniform over the
// first `horizon` seconds.
inline std::vector<Query> random_queries(Network const& network,
                                         std::uint64_t seed, std::size_t count,
                                         Time horizon = Time::hms(24, 0)) {
  std::mt19937_64 rng{seed};
  std::uniform_int_distribution<VertexId> vertex(
      0, static_cast<VertexId>(network.vertex_count() - 1));
  std::uniform_int_distribution<Time::rep> time(0, horizon.seconds() - 1);
  std::vector<Query> out;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back({vertex(rng), vertex(rng), Time{time(rng)}});
  }
  return out;
}

// Queries between stops, where transit matters most.
inline std::vector<Query> random_stop_queries(Network const& network,
                                              std::uint64_t seed,
                                              std::size_t count,
                                              Time horizon = Time::hms(24, 0)) {
  std::mt19937_64 rng{seed};
  std::uniform_int_distribution<StopIdx> stop(
      0, static_cast<StopIdx>(network.stops().size() - 1));
  std::uniform_int_distribution<Time::rep> time(0, horizon.seconds() - 1);
  std::vector<Query> out;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back({network.vertex_of_stop(stop(rng)),
                   network.vertex_of_stop(stop(rng)), Time{time(rng)}});
  }
  return out;
}

// Small dense instance: few stops, short horizon so that trips interact.
inline GenParams small_params(std::uint64_t seed) {
  std::mt19937_64 rng{seed * 7919 + 17};
  GenParams p;
  p.seed = seed;
  p.stop_count = 4 + rng() % 20;
  p.extra_vertex_count = rng() % 15;
  p.trip_count = 2 + rng() % 40;
  p.min_trip_length = 2;
  p.max_trip_length = std::min<std::size_t>(p.stop_count, 2 + rng() % 5);
  p.horizon = Time::hms(3, 0);
  p.non_fifo_rate = 0.3;
  p.buffer_rate = 0.5;
  p.walk_degree = 1 + rng() % 3;
  p.area_km = 1.0 + static_cast<double>(rng() % 4);
  return p;
}

// Quadratic reference: keep c unless some other connection dominates it or
// an identical earlier one already represents it.
inline std::vector<Connection> brute_force_filter(std::vector<Connection> const& in) {
  std::vector<Connection> out;
  for (std::size_t i = 0; i < in.size(); ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < in.size() && !drop; ++j) {
      if (i == j) {
        continue;
      }
      auto const& a = in[j];
      auto const& c = in[i];
      bool const dominates = a.departure >= c.departure &&
                             a.arrival <= c.arrival &&
                             (a.departure > c.departure || a.arrival < c.arrival);
      bool const duplicate = j < i && a.departure == c.departure &&
                             a.arrival == c.arrival;
      drop = dominates || duplicate;
    }
    if (!drop) {
      out.push_back(in[i]);
    }
  }
  return out;
}

inline std::vector<Connection> random_connections(std::mt19937_64& rng,
                                           std::size_t n) {
  std::uniform_int_distribution<Time::rep> dep(0, 40);
  std::uniform_int_distribution<Time::rep> dur(1, 30);
  std::vector<Connection> c;
  for (std::size_t i = 0; i < n; ++i) {
    auto const d = dep(rng);
    c.push_back({Time{d}, Time{d + dur(rng)}, static_cast<TripIdx>(i), 0});
  }
  std::stable_sort(begin(c), end(c), [](auto const& a, auto const& b) {
    return a.departure < b.departure;
  });
  return c;
}

}  // namespace tad::test
