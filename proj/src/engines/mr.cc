#include "tad/engines/engines.h"

#include <algorithm>
#include <chrono>
#include <limits>
#include <map>

#include "tad/model/error.h"

namespace tad {

namespace {

constexpr std::uint32_t kNotScanned = std::numeric_limits<std::uint32_t>::max();

}  // namespace

MrEngine::MrEngine(Network const& network, CoreCH const& core,
                   MrOptions options)
    : network_{network},
      core_{core},
      options_{options},
      routes_at_stop_(network.stops().size()),
      arrival_(network.vertex_count(), kUnreachable),
      previous_(network.stops().size(), kUnreachable),
      improved_(network.stops().size(), 0),
      heap_(network.vertex_count()),
      up_dist_(network.vertex_count()),
      down_dist_(network.vertex_count()) {
  if (core.is_core.size() != network.vertex_count()) {
    throw Error{"Core-CH data was built for a different graph"};
  }
  for (auto const& s : network.stops()) {
    if (!core.core(s.vertex)) {
      throw Error{"every stop must be a core vertex"};
    }
  }
  build_routes();
  route_start_.assign(routes_.size(), kNotScanned);
}

void MrEngine::build_routes() {
  std::map<std::vector<StopIdx>, std::vector<TripIdx>> by_sequence;
  for (TripIdx t = 0; t < network_.trips().size(); ++t) {
    std::vector<StopIdx> seq;
    for (auto const& e : network_.trips()[t].events) {
      seq.push_back(e.stop);
    }
    by_sequence[seq].push_back(t);
  }
  for (auto& [seq, trips] : by_sequence) {
    auto const& all = network_.trips();
    std::sort(begin(trips), end(trips), [&](TripIdx a, TripIdx b) {
      auto const& ea = all[a].events;
      auto const& eb = all[b].events;
      return std::tie(ea[0].departure, ea[0].arrival, a) <
             std::tie(eb[0].departure, eb[0].arrival, b);
    });
    // Greedy split: a trip joins the first group whose last trip it never
    // overtakes; pointwise order is transitive along each group.
    std::vector<Route> groups;
    auto const n = seq.size();
    for (auto const t : trips) {
      auto const& ev = all[t].events;
      auto fits = [&](Route const& g) {
        auto const last = g.trips.size() - 1;
        for (std::size_t p = 0; p < n; ++p) {
          if (ev[p].arrival < g.arrival[last * n + p] ||
              ev[p].departure < g.departure[last * n + p]) {
            return false;
          }
        }
        return true;
      };
      auto g = std::find_if(begin(groups), end(groups), fits);
      if (g == end(groups)) {
        groups.push_back({seq, {}, {}, {}});
        g = std::prev(end(groups));
      }
      g->trips.push_back(t);
      for (auto const& e : ev) {
        g->arrival.push_back(e.arrival);
        g->departure.push_back(e.departure);
      }
    }
    for (auto& g : groups) {
      routes_.push_back(std::move(g));
    }
  }
  for (std::uint32_t r = 0; r < routes_.size(); ++r) {
    auto const& stops = routes_[r].stops;
    for (std::uint32_t p = 0; p + 1 < stops.size(); ++p) {
      routes_at_stop_[stops[p]].push_back({r, p});
    }
  }
}

QueryResult MrEngine::query(QueryRequest const& r) {
  auto const start = std::chrono::steady_clock::now();
  check_request(network_, r, {&core_, nullptr});
  if (r.target == kNoVertex) {
    throw Error{"MR needs a target vertex"};
  }
  QueryResult result;
  auto& stats = result.stats;
  round_cap_hit_ = false;

  std::fill(begin(arrival_), end(arrival_), kUnreachable);
  std::fill(begin(improved_), end(improved_), 0);
  touched_.clear();

  auto const& ch = core_.hierarchy;
  auto const target = r.target;
  auto const target_in_core = core_.core(target);

  // Walking from contracted vertices up into the core and from the core down
  // to the target.
  auto climb = [&](VertexId from, StampedTimes& dist, bool upward,
                   std::vector<VertexId>& space) {
    dist.reset();
    space.clear();
    heap_.clear();
    dist.set(from, Time::zero());
    heap_.update(from, Time::zero());
    while (!heap_.empty()) {
      auto const d = heap_.min_key();
      auto const v = heap_.pop();
      space.push_back(v);
      for (auto const& e : upward ? ch.up(v) : ch.down(v)) {
        auto const nd = d + e.weight;
        if (nd < dist.get(e.target)) {
          dist.set(e.target, nd);
          heap_.update(e.target, nd);
        }
      }
    }
  };

  std::vector<VertexId> up_space;
  if (core_.core(r.source)) {
    up_dist_.reset();
    up_dist_.set(r.source, Time::zero());
    up_space = {r.source};
  } else {
    climb(r.source, up_dist_, true, up_space);
  }
  down_core_.clear();
  if (target_in_core) {
    down_dist_.reset();
    down_dist_.set(target, Time::zero());
    down_core_.push_back(target);
  } else {
    climb(target, down_dist_, false, down_core_);
  }

  auto best = kUnreachable;
  for (auto const v : up_space) {
    best = std::min(best, r.departure + up_dist_.get(v) + down_dist_.get(v));
  }

  auto improve = [&](VertexId v, Time t) {
    ++stats.relaxed_edges;
    if (t < arrival_[v] && t < best) {
      arrival_[v] = t;
      best = std::min(best, t + down_dist_.get(v));
      return true;
    }
    return false;
  };
  auto mark = [&](VertexId v) {
    auto const s = network_.stop_of_vertex(v);
    if (s != kNoStop && improved_[s] == 0) {
      improved_[s] = 1;
      touched_.push_back(v);
    }
  };

  std::vector<VertexId> seeds;
  for (auto const v : up_space) {
    if (core_.core(v) && improve(v, r.departure + up_dist_.get(v))) {
      seeds.push_back(v);
      mark(v);
    }
  }
  transfer_phase(seeds, best, stats);
  // transfer_phase lowers labels directly; refresh the target bound.
  best = std::min(best, target_arrival(target));

  std::size_t round = 0;
  while (!touched_.empty()) {
    if (round == options_.max_rounds) {
      round_cap_hit_ = true;
      break;
    }
    ++round;

    // Snapshot of the previous round and the routes to scan.
    for (StopIdx s = 0; s < previous_.size(); ++s) {
      previous_[s] = arrival_[network_.vertex_of_stop(s)];
    }
    std::vector<std::uint32_t> queued;
    for (auto const v : touched_) {
      auto const s = network_.stop_of_vertex(v);
      improved_[s] = 0;
      for (auto const& [route, pos] : routes_at_stop_[s]) {
        if (route_start_[route] == kNotScanned) {
          queued.push_back(route);
          route_start_[route] = pos;
        } else {
          route_start_[route] = std::min(route_start_[route], pos);
        }
      }
    }
    touched_.clear();

    seeds.clear();
    for (auto const id : queued) {
      auto const& route = routes_[id];
      auto const n = route.stops.size();
      auto const begin_pos = route_start_[id];
      route_start_[id] = kNotScanned;
      ++stats.scanned_trips;
      auto current = route.trips.size();  // none
      for (auto p = begin_pos; p < n; ++p) {
        auto const stop = route.stops[p];
        auto const v = network_.vertex_of_stop(stop);
        if (current != route.trips.size() &&
            improve(v, route.arrival[current * n + p])) {
          seeds.push_back(v);
          mark(v);
        }
        if (p + 1 == n || !previous_[stop].is_finite()) {
          continue;
        }
        auto const ready = previous_[stop] + network_.buffer(stop);
        // Departures at p are non-decreasing along the route's trips.
        std::size_t lo = 0;
        std::size_t hi = current;
        while (lo < hi) {
          auto const mid = (lo + hi) / 2;
          if (route.departure[mid * n + p] < ready) {
            lo = mid + 1;
          } else {
            hi = mid;
          }
        }
        current = lo;
      }
    }
    transfer_phase(seeds, best, stats);
    best = std::min(best, target_arrival(target));
  }
  stats.rounds = round;
  for (auto const v : touched_) {
    improved_[network_.stop_of_vertex(v)] = 0;
  }
  touched_.clear();

  result.arrival = best;
  stats.wall = std::chrono::steady_clock::now() - start;
  return result;
}

void MrEngine::transfer_phase(std::vector<VertexId> const& seeds,
                              Time target_bound, QueryStats& stats) {
  heap_.clear();
  for (auto const v : seeds) {
    heap_.update(v, arrival_[v]);
  }
  auto bound = target_bound;
  while (!heap_.empty()) {
    auto const tau = heap_.min_key();
    if (tau >= bound) {
      break;
    }
    auto const u = heap_.pop();
    ++stats.settled;
    bound = std::min(bound, tau + down_dist_.get(u));
    for (auto const& e : core_.core_graph.out(u)) {
      ++stats.relaxed_edges;
      auto const t = tau + e.weight;
      if (t < arrival_[e.target] && t < bound) {
        arrival_[e.target] = t;
        heap_.update(e.target, t);
        auto const s = network_.stop_of_vertex(e.target);
        if (s != kNoStop && improved_[s] == 0) {
          improved_[s] = 1;
          touched_.push_back(e.target);
        }
      }
    }
  }
  heap_.clear();
}

Time MrEngine::target_arrival(VertexId target) const {
  auto best = arrival_[target];
  for (auto const v : down_core_) {
    best = std::min(best, arrival_[v] + down_dist_.get(v));
  }
  return best;
}

QueryResult mr_query(Network const& network, CoreCH const& core,
                     QueryRequest const& request) {
  return MrEngine{network, core}.query(request);
}

}  // namespace tad
