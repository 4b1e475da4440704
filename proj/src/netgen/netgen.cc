#include "tad/netgen/netgen.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

#include "fmt/core.h"
#include "tad/model/error.h"
#include "tad/model/gtfs.h"

namespace tad {

namespace {

constexpr double kWalkSpeed = 4.5 / 3.6;  // m/s

// mt19937_64 output is fixed by the standard; the distributions are not, so
// draws are derived by hand for reproducibility across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_{seed} {}

  // Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
    auto const span = hi - lo + 1;
    if (span == 0) {
      return engine_();
    }
    auto const limit = std::numeric_limits<std::uint64_t>::max() -
                       std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return lo + x % span;
  }

  Time::rep between(Time lo, Time hi) {
    return lo.seconds() +
           static_cast<Time::rep>(between(0, static_cast<std::uint64_t>(
                                                 hi.seconds() - lo.seconds())));
  }

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return unit() < p; }

private:
  std::mt19937_64 engine_;
};

struct Line {
  std::vector<StopIdx> stops;
  std::vector<Time::rep> hops;   // travel time to the next stop
  std::vector<Time::rep> dwell;  // wait at each intermediate stop
};

}  // namespace

void check_params(GenParams const& p) {
  auto fail = [](std::string const& msg) { throw Error{"netgen: " + msg}; };
  if (p.non_fifo_rate < 0.0 || p.non_fifo_rate > 1.0) {
    fail("non_fifo_rate must lie in [0, 1]");
  }
  if (p.buffer_rate < 0.0 || p.buffer_rate > 1.0) {
    fail("buffer_rate must lie in [0, 1]");
  }
  if (p.min_buffer < Time::zero() || p.max_buffer < p.min_buffer) {
    fail("buffer range is empty or negative");
  }
  if (p.min_trip_length < 2 || p.max_trip_length < p.min_trip_length) {
    fail("trip length range must be non-empty with at least 2 stops");
  }
  if (p.trip_count > 0 && p.max_trip_length > p.stop_count) {
    fail(fmt::format("trip length {} exceeds the {} stops available",
                     p.max_trip_length, p.stop_count));
  }
  if (p.horizon <= Time::zero() || !p.horizon.is_finite()) {
    fail("horizon must be positive");
  }
  if (!(p.area_km > 0.0)) {
    fail("area_km must be positive");
  }
}

Network generate(GenParams const& p) {
  check_params(p);
  Rng rng{p.seed};
  auto const n = p.stop_count + p.extra_vertex_count;

  // Vertices scattered over the square, each linked both ways to its
  // nearest neighbours.
  std::vector<double> x(n);
  std::vector<double> y(n);
  for (std::size_t v = 0; v < n; ++v) {
    x[v] = rng.unit() * p.area_km * 1000.0;
    y[v] = rng.unit() * p.area_km * 1000.0;
  }
  auto seconds = [&](std::size_t a, std::size_t b) {
    auto const d = std::hypot(x[a] - x[b], y[a] - y[b]);
    return std::max<Time::rep>(1, static_cast<Time::rep>(std::ceil(d / kWalkSpeed)));
  };
  std::vector<Arc> arcs;
  {
    std::vector<std::pair<Time::rep, std::size_t>> near;
    std::vector<std::vector<char>> linked(n, std::vector<char>(n, 0));
    for (std::size_t v = 0; v < n; ++v) {
      near.clear();
      for (std::size_t w = 0; w < n; ++w) {
        if (w != v) {
          near.push_back({seconds(v, w), w});
        }
      }
      auto const k = std::min(p.walk_degree, near.size());
      std::partial_sort(begin(near), begin(near) + static_cast<std::ptrdiff_t>(k),
                        end(near));
      for (std::size_t i = 0; i < k; ++i) {
        auto const w = near[i].second;
        if (!linked[v][w]) {
          linked[v][w] = linked[w][v] = 1;
          auto const wt = Time{near[i].first};
          arcs.push_back({static_cast<VertexId>(v), static_cast<VertexId>(w), wt});
          arcs.push_back({static_cast<VertexId>(w), static_cast<VertexId>(v), wt});
        }
      }
    }
  }

  // Stops sit on a random subset of vertices.
  std::vector<VertexId> perm(n);
  std::iota(begin(perm), end(perm), VertexId{0});
  for (std::size_t i = n; i > 1; --i) {
    std::swap(perm[i - 1], perm[rng.between(0, i - 1)]);
  }
  Timetable tt;
  for (std::size_t s = 0; s < p.stop_count; ++s) {
    Stop stop;
    stop.id = fmt::format("S{}", s);
    stop.vertex = perm[s];
    if (rng.chance(p.buffer_rate)) {
      stop.buffer = Time{rng.between(p.min_buffer, p.max_buffer)};
    }
    stop.lat = y[perm[s]] / 111320.0;
    stop.lon = x[perm[s]] / 111320.0;
    tt.stops.push_back(std::move(stop));
  }

  if (p.closure_mode) {
    TransferGraph const g{n, arcs};
    for (StopIdx s = 0; s < p.stop_count; ++s) {
      auto const dist = walk_distances(g, perm[s]);
      for (StopIdx o = 0; o < p.stop_count; ++o) {
        if (o != s && dist[perm[o]].is_finite()) {
          arcs.push_back({perm[s], perm[o], dist[perm[o]]});
        }
      }
    }
  }

  // Lines give trips shared stop sequences and therefore shared edges.
  std::vector<Line> lines;
  auto const line_count = std::max<std::size_t>(1, (p.trip_count + 3) / 4);
  if (p.trip_count > 0) {
    std::vector<StopIdx> pool(p.stop_count);
    for (std::size_t l = 0; l < line_count; ++l) {
      std::iota(begin(pool), end(pool), StopIdx{0});
      auto const len = rng.between(p.min_trip_length, p.max_trip_length);
      Line line;
      std::size_t fixed = 0;
      // Branch lines run along part of an earlier line and then diverge, so
      // trips on a shared edge continue to different places.
      if (l > 0 && rng.chance(0.5)) {
        auto const& base = lines[rng.between(0, l - 1)];
        auto const k = rng.between(2, std::min<std::uint64_t>(len, base.stops.size()));
        auto const from = rng.between(0, base.stops.size() - k);
        for (std::size_t i = 0; i < k; ++i) {
          auto const s = base.stops[from + i];
          std::swap(pool[i], *std::find(begin(pool), end(pool), s));
        }
        fixed = k;
      }
      for (std::size_t i = 0; i < len; ++i) {
        if (i >= fixed) {
          std::swap(pool[i], pool[rng.between(i, pool.size() - 1)]);
        }
        line.stops.push_back(pool[i]);
      }
      for (std::size_t i = 0; i + 1 < len; ++i) {
        line.hops.push_back(static_cast<Time::rep>(rng.between(120, 900)));
        line.dwell.push_back(static_cast<Time::rep>(rng.between(0, 60)));
      }
      lines.push_back(std::move(line));
    }
  }

  auto make_trip = [&](std::size_t idx) {
    auto const l = rng.between(0, lines.size() - 1);
    auto const& line = lines[l];
    Trip trip;
    trip.id = fmt::format("T{}", idx);
    trip.route_id = fmt::format("L{}", l);
    // Some trips short-turn and serve only part of their line.
    std::size_t first = 0;
    std::size_t last = line.stops.size() - 1;
    if (last >= 2 && rng.chance(0.25)) {
      first = rng.between(0, last - 1);
      last = rng.between(first + 1, last);
    }
    auto t = static_cast<Time::rep>(rng.between(0, static_cast<std::uint64_t>(
                                                       p.horizon.seconds() - 1)));
    for (auto i = first; i <= last; ++i) {
      StopEvent e{line.stops[i], Time{t}, Time{t}};
      if (i > first && i < last) {
        t += line.dwell[i];
        e.departure = Time{t};
      }
      if (i < last) {
        t += line.hops[i] + static_cast<Time::rep>(rng.between(0, 120));
      }
      trip.events.push_back(e);
    }
    return trip;
  };
  // Departs `delta` later, then runs `delta` ahead of the original for the
  // rest of the way: the clone overtakes it on the first hop.
  auto clone = [&](Trip const& orig, std::size_t idx) {
    Trip c = orig;
    c.id = fmt::format("T{}", idx);
    auto const hop = orig.events[1].arrival.seconds() -
                     orig.events[0].departure.seconds();
    auto const delta = static_cast<Time::rep>(
        rng.between(1, static_cast<std::uint64_t>((hop - 1) / 2)));
    c.events[0].arrival = c.events[0].departure = Time{
        orig.events[0].departure.seconds() + delta};
    for (std::size_t i = 1; i < c.events.size(); ++i) {
      c.events[i].arrival = Time{orig.events[i].arrival.seconds() - delta};
      c.events[i].departure = Time{orig.events[i].departure.seconds() - delta};
    }
    return c;
  };

  bool cloned = false;
  for (std::size_t i = 0; i < p.trip_count; ++i) {
    if (!tt.trips.empty() && rng.chance(p.non_fifo_rate)) {
      auto const orig = tt.trips[rng.between(0, tt.trips.size() - 1)];
      auto const& ev = orig.events;
      // A clone's first hop shrinks by 2*delta; it needs room for delta >= 1.
      if (ev[1].arrival.seconds() - ev[0].departure.seconds() >= 3) {
        tt.trips.push_back(clone(orig, i));
        cloned = true;
        continue;
      }
    }
    tt.trips.push_back(make_trip(i));
  }
  if (!cloned && p.non_fifo_rate > 0.0 && tt.trips.size() >= 2) {
    tt.trips.back() = clone(tt.trips.front(), tt.trips.size() - 1);
  }

  auto network = assemble_network(std::move(tt), TransferGraph{n, std::move(arcs)},
                                  std::nullopt, {p.closure_mode});
  if (auto const report = validate_network(network); !report.empty()) {
    throw Error{"netgen produced an invalid network: " + report.front()};
  }
  return network;
}

namespace {

Trip fixture_trip(std::string id, std::vector<StopEvent> events) {
  return {std::move(id), "R", std::move(events)};
}

StopEvent ev(StopIdx s, Time at) { return {s, at, at}; }

}  // namespace

Network paper_fixture(std::string_view name) {
  auto const h = [](int hh, int mm) { return Time::hms(hh, mm); };
  Timetable tt;
  if (name == "motivating") {
    tt.stops = {{"A", 0}, {"B", 1, Time{1200}}, {"C", 2}};
    tt.trips = {
        fixture_trip("T1", {ev(0, h(8, 0)), ev(1, h(9, 40)), ev(2, h(10, 30))}),
        fixture_trip("T2", {ev(0, h(8, 30)), ev(1, h(9, 30))}),
    };
  } else if (name == "nonfifo_intro") {
    tt.stops = {{"A", 0}, {"B", 1}};
    tt.trips = {
        fixture_trip("T1", {ev(0, h(8, 0)), ev(1, h(9, 30))}),
        fixture_trip("T2", {ev(0, h(8, 30)), ev(1, h(9, 0))}),
    };
  } else if (name == "pruning") {
    tt.stops = {{"A", 0}, {"B", 1}};
    tt.trips = {
        fixture_trip("T1", {ev(0, h(8, 0)), ev(1, h(9, 30))}),
        fixture_trip("T2", {ev(0, h(8, 10)), ev(1, h(9, 0))}),
        fixture_trip("T3", {ev(0, h(8, 20)), ev(1, h(10, 0))}),
        fixture_trip("T4", {ev(0, h(8, 30)), ev(1, h(9, 30))}),
    };
  } else {
    throw Error{fmt::format(
        "unknown fixture '{}' (expected motivating, pruning or nonfifo_intro)",
        name)};
  }
  auto const n = tt.stops.size();
  return assemble_network(std::move(tt), TransferGraph{n, {}});
}

void write_network_files(Network const& network,
                         std::filesystem::path const& dir) {
  std::filesystem::create_directories(dir);
  write_gtfs(network.timetable(), dir);
  write_transfer_graph(network.graph(), dir / "graph.txt");
  std::ofstream out{dir / "mapping.txt"};
  for (auto const& s : network.stops()) {
    out << s.id << ' ' << s.vertex << '\n';
  }
  if (!out) {
    throw Error{fmt::format("cannot write {}", (dir / "mapping.txt").string())};
  }
}

}  // namespace tad
