#include "tad/cli/artifacts.h"

#include <array>
#include <cstring>
#include <fstream>

#include "fmt/core.h"
#include "json.hpp"
#include "tad/model/error.h"

namespace tad {

namespace {

using json = nlohmann::json;

constexpr std::array<char, 8> kChMagic{'T', 'A', 'D', 'C', 'H', '0', '0', '1'};
constexpr std::array<char, 8> kCoreMagic{'T', 'A', 'D', 'C', 'O', 'R', 'E', '1'};

std::ofstream open_out(std::filesystem::path const& path) {
  std::ofstream out{path, std::ios::binary};
  if (!out) {
    throw Error{fmt::format("cannot write {}", path.string())};
  }
  return out;
}

std::ifstream open_in(std::filesystem::path const& path) {
  std::ifstream in{path, std::ios::binary};
  if (!in) {
    throw Error{fmt::format("cannot read {}", path.string())};
  }
  return in;
}

class Writer {
public:
  explicit Writer(std::ostream& out) : out_{out} {}
  template <typename T>
  void put(T v) {
    out_.write(reinterpret_cast<char const*>(&v), sizeof(T));
  }

private:
  std::ostream& out_;
};

class Reader {
public:
  Reader(std::istream& in, std::filesystem::path path)
      : in_{in}, path_{std::move(path)} {}
  template <typename T>
  T get() {
    T v{};
    if (!in_.read(reinterpret_cast<char*>(&v), sizeof(T))) {
      throw Error{fmt::format("{}: truncated artifact", path_.string())};
    }
    return v;
  }
  // Guards allocations against corrupt counts.
  std::uint64_t count(std::uint64_t limit) {
    auto const n = get<std::uint64_t>();
    if (n > limit) {
      throw Error{fmt::format("{}: corrupt artifact (count {})", path_.string(), n)};
    }
    return n;
  }

private:
  std::istream& in_;
  std::filesystem::path path_;
};

constexpr std::uint64_t kMaxCount = std::uint64_t{1} << 32;

void write_hierarchy(Writer& w, ContractionHierarchy const& ch) {
  auto const n = ch.vertex_count();
  w.put<std::uint64_t>(n);
  for (VertexId v = 0; v < n; ++v) {
    w.put<std::uint32_t>(ch.rank(v));
  }
  for (VertexId v = 0; v < n; ++v) {
    for (auto const edges : {ch.up(v), ch.down(v)}) {
      w.put<std::uint64_t>(edges.size());
      for (auto const& e : edges) {
        w.put<std::uint32_t>(e.target);
        w.put<std::int64_t>(e.weight.seconds());
        w.put<std::uint32_t>(e.via);
      }
    }
  }
}

ContractionHierarchy read_hierarchy(Reader& r) {
  auto const n = r.count(kMaxCount);
  std::vector<std::uint32_t> rank(n);
  for (auto& x : rank) {
    x = r.get<std::uint32_t>();
  }
  std::vector<std::vector<HierarchyEdge>> up(n);
  std::vector<std::vector<HierarchyEdge>> down(n);
  for (std::size_t v = 0; v < n; ++v) {
    for (auto* list : {&up[v], &down[v]}) {
      auto const m = r.count(kMaxCount);
      list->reserve(m);
      for (std::uint64_t i = 0; i < m; ++i) {
        HierarchyEdge e{};
        e.target = r.get<std::uint32_t>();
        e.weight = Time{r.get<std::int64_t>()};
        e.via = r.get<std::uint32_t>();
        list->push_back(e);
      }
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (rank[v] >= n) {
      throw Error{"corrupt hierarchy: rank out of range"};
    }
    for (auto const* list : {&up[v], &down[v]}) {
      for (auto const& e : *list) {
        if (e.target >= n || (e.via != kNoVertex && e.via >= n) ||
            e.weight < Time::zero() || !e.weight.is_finite()) {
          throw Error{"corrupt hierarchy: bad edge"};
        }
      }
    }
  }
  return ContractionHierarchy::from_lists(std::move(rank), up, down);
}

void check_magic(Reader& r, std::array<char, 8> const& magic,
                 std::filesystem::path const& path) {
  std::array<char, 8> got{};
  for (auto& c : got) {
    c = r.get<char>();
  }
  if (got != magic) {
    throw Error{fmt::format("{}: not a {} artifact", path.string(),
                            std::string(magic.data(), magic.size()))};
  }
}

}  // namespace

void save_network(Network const& network, std::filesystem::path const& path) {
  json j;
  j["magic"] = kNetworkMagic;
  j["version"] = kNetworkVersion;
  j["footpaths_closed"] = network.footpaths_closed();
  j["vertex_count"] = network.vertex_count();
  auto& stops = j["stops"] = json::array();
  for (auto const& s : network.stops()) {
    stops.push_back({{"id", s.id},
                     {"vertex", s.vertex},
                     {"buffer", s.buffer.seconds()},
                     {"lat", s.lat},
                     {"lon", s.lon}});
  }
  auto& trips = j["trips"] = json::array();
  for (auto const& t : network.trips()) {
    auto events = json::array();
    for (auto const& e : t.events) {
      events.push_back({e.stop, e.arrival.seconds(), e.departure.seconds()});
    }
    trips.push_back({{"id", t.id}, {"route", t.route_id}, {"events", events}});
  }
  auto& arcs = j["arcs"] = json::array();
  for (auto const& a : network.graph().arcs()) {
    arcs.push_back({a.from, a.to, a.weight.seconds()});
  }
  open_out(path) << j.dump() << '\n';
}

Network load_network(std::filesystem::path const& path) {
  json j;
  try {
    auto in = open_in(path);
    j = json::parse(in);
  } catch (json::exception const& e) {
    throw Error{fmt::format("{}: {}", path.string(), e.what())};
  }
  try {
    if (j.value("magic", "") != kNetworkMagic) {
      throw Error{fmt::format("{}: not a network artifact", path.string())};
    }
    if (j.at("version").get<int>() != kNetworkVersion) {
      throw Error{fmt::format("{}: unsupported version {}", path.string(),
                              j.at("version").get<int>())};
    }
    Timetable tt;
    std::vector<VertexId> mapping;
    for (auto const& s : j.at("stops")) {
      Stop stop;
      stop.id = s.at("id").get<std::string>();
      stop.buffer = Time{s.at("buffer").get<Time::rep>()};
      stop.lat = s.at("lat").get<double>();
      stop.lon = s.at("lon").get<double>();
      mapping.push_back(s.at("vertex").get<VertexId>());
      tt.stops.push_back(std::move(stop));
    }
    for (auto const& t : j.at("trips")) {
      Trip trip;
      trip.id = t.at("id").get<std::string>();
      trip.route_id = t.at("route").get<std::string>();
      for (auto const& e : t.at("events")) {
        trip.events.push_back({e.at(0).get<StopIdx>(), Time{e.at(1).get<Time::rep>()},
                               Time{e.at(2).get<Time::rep>()}});
      }
      tt.trips.push_back(std::move(trip));
    }
    std::vector<Arc> arcs;
    for (auto const& a : j.at("arcs")) {
      arcs.push_back({a.at(0).get<VertexId>(), a.at(1).get<VertexId>(),
                      Time{a.at(2).get<Time::rep>()}});
    }
    AssembleOptions options;
    options.footpaths_closed = j.at("footpaths_closed").get<bool>();
    return assemble_network(
        std::move(tt),
        TransferGraph{j.at("vertex_count").get<std::size_t>(), std::move(arcs)},
        std::move(mapping), options);
  } catch (json::exception const& e) {
    throw Error{fmt::format("{}: malformed network artifact: {}", path.string(),
                            e.what())};
  }
}

void save_hierarchy(ContractionHierarchy const& ch,
                    std::filesystem::path const& path) {
  auto out = open_out(path);
  out.write(kChMagic.data(), kChMagic.size());
  Writer w{out};
  write_hierarchy(w, ch);
}

ContractionHierarchy load_hierarchy(std::filesystem::path const& path) {
  auto in = open_in(path);
  Reader r{in, path};
  check_magic(r, kChMagic, path);
  return read_hierarchy(r);
}

void save_core_ch(CoreCH const& core, std::filesystem::path const& path) {
  auto out = open_out(path);
  out.write(kCoreMagic.data(), kCoreMagic.size());
  Writer w{out};
  write_hierarchy(w, core.hierarchy);
  for (auto const f : core.is_core) {
    w.put<std::uint8_t>(f);
  }
  auto const arcs = core.core_graph.arcs();
  w.put<std::uint64_t>(arcs.size());
  for (auto const& a : arcs) {
    w.put<std::uint32_t>(a.from);
    w.put<std::uint32_t>(a.to);
    w.put<std::int64_t>(a.weight.seconds());
  }
}

CoreCH load_core_ch(std::filesystem::path const& path) {
  auto in = open_in(path);
  Reader r{in, path};
  check_magic(r, kCoreMagic, path);
  CoreCH core;
  core.hierarchy = read_hierarchy(r);
  auto const n = core.hierarchy.vertex_count();
  core.is_core.resize(n);
  for (auto& f : core.is_core) {
    f = r.get<std::uint8_t>();
    core.core_vertex_count += f != 0 ? 1 : 0;
  }
  auto const m = r.count(kMaxCount);
  std::vector<Arc> arcs;
  arcs.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    Arc a{};
    a.from = r.get<std::uint32_t>();
    a.to = r.get<std::uint32_t>();
    a.weight = Time{r.get<std::int64_t>()};
    arcs.push_back(a);
  }
  core.core_graph = TransferGraph{n, std::move(arcs)};
  return core;
}

}  // namespace tad
