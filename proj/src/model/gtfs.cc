#include "tad/model/gtfs.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "fmt/core.h"
#include "fmt/os.h"

#include "tad/model/error.h"

#include "csv.h"

namespace fs = std::filesystem;

namespace tad {

namespace {

std::ifstream open_required(fs::path const& p) {
  std::ifstream in{p, std::ios::binary};
  if (!in) {
    throw ParseError{p.string(), 0, "cannot open required file"};
  }
  return in;
}

template <typename T>
T parse_number(std::string_view s, csv::Reader const& r, std::string_view what) {
  T value{};
  auto const [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError{r.file(), r.line(),
                     fmt::format("malformed {} '{}'", what, s)};
  }
  return value;
}

double parse_coordinate(std::optional<std::string> const& s,
                        csv::Reader const& r) {
  if (!s.has_value() || s->empty()) {
    return 0.0;
  }
  // std::from_chars for double is unavailable in older libstdc++; use a
  // classic-locale stream instead.
  std::istringstream in{*s};
  in.imbue(std::locale::classic());
  double value = 0.0;
  in >> value;
  if (!in || in.peek() != EOF) {
    throw ParseError{r.file(), r.line(), fmt::format("malformed coordinate '{}'", *s)};
  }
  return value;
}

Time parse_time_field(std::string const& s, csv::Reader const& r,
                      std::string_view column) {
  auto const t = parse_hms(s);
  if (!t.has_value()) {
    throw ParseError{r.file(), r.line(),
                     fmt::format("malformed {} '{}'", column, s)};
  }
  return *t;
}

struct RawStopTime {
  std::uint64_t sequence;
  std::size_t line;
  StopEvent event;
};

}  // namespace

Timetable parse_gtfs(fs::path const& dir) {
  Timetable tt;
  std::unordered_map<std::string, StopIdx> stop_index;
  std::unordered_map<std::string, TripIdx> trip_index;

  {
    auto in = open_required(dir / "stops.txt");
    csv::Reader r{in, (dir / "stops.txt").string()};
    while (r.next()) {
      Stop s;
      s.id = r.get("stop_id");
      s.lat = parse_coordinate(r.get_optional("stop_lat"), r);
      s.lon = parse_coordinate(r.get_optional("stop_lon"), r);
      if (!stop_index.emplace(s.id, tt.stops.size()).second) {
        throw ParseError{r.file(), r.line(), "duplicate stop_id " + s.id};
      }
      tt.stops.push_back(std::move(s));
    }
  }

  {
    auto in = open_required(dir / "trips.txt");
    csv::Reader r{in, (dir / "trips.txt").string()};
    while (r.next()) {
      Trip t;
      t.id = r.get("trip_id");
      t.route_id = r.get("route_id");
      if (!trip_index.emplace(t.id, tt.trips.size()).second) {
        throw ParseError{r.file(), r.line(), "duplicate trip_id " + t.id};
      }
      tt.trips.push_back(std::move(t));
    }
  }

  {
    auto const file = dir / "stop_times.txt";
    auto in = open_required(file);
    csv::Reader r{in, file.string()};
    std::vector<std::vector<RawStopTime>> raw(tt.trips.size());
    while (r.next()) {
      auto const& trip_id = r.get("trip_id");
      auto const trip = trip_index.find(trip_id);
      if (trip == trip_index.end()) {
        throw ParseError{r.file(), r.line(), "unknown trip_id " + trip_id};
      }
      auto const& stop_id = r.get("stop_id");
      auto const stop = stop_index.find(stop_id);
      if (stop == stop_index.end()) {
        throw ParseError{r.file(), r.line(), "unknown stop_id " + stop_id};
      }
      RawStopTime st;
      st.line = r.line();
      st.sequence = parse_number<std::uint64_t>(r.get("stop_sequence"), r,
                                                "stop_sequence");
      st.event.stop = stop->second;
      st.event.arrival = parse_time_field(r.get("arrival_time"), r, "arrival_time");
      st.event.departure =
          parse_time_field(r.get("departure_time"), r, "departure_time");
      raw[trip->second].push_back(st);
    }
    for (TripIdx t = 0; t < tt.trips.size(); ++t) {
      auto& events = raw[t];
      std::stable_sort(begin(events), end(events),
                       [](RawStopTime const& a, RawStopTime const& b) {
                         return a.sequence < b.sequence;
                       });
      for (std::size_t i = 1; i < events.size(); ++i) {
        if (events[i].sequence == events[i - 1].sequence) {
          throw ParseError{file.string(), events[i].line,
                           fmt::format("trip {}: stop_sequence {} repeats",
                                       tt.trips[t].id, events[i].sequence)};
        }
      }
      for (auto const& e : events) {
        tt.trips[t].events.push_back(e.event);
      }
    }
    // Trips without stop times carry no service.
    std::erase_if(tt.trips, [](Trip const& t) { return t.events.empty(); });
  }

  auto const transfers = dir / "transfers.txt";
  if (fs::exists(transfers)) {
    std::ifstream in{transfers, std::ios::binary};
    csv::Reader r{in, transfers.string()};
    while (r.next()) {
      auto const& from = r.get("from_stop_id");
      auto const& to = r.get("to_stop_id");
      if (from != to) {
        continue;
      }
      auto const stop = stop_index.find(from);
      if (stop == stop_index.end()) {
        throw ParseError{r.file(), r.line(), "unknown stop_id " + from};
      }
      auto const min_time = r.get_optional("min_transfer_time");
      if (!min_time.has_value() || min_time->empty()) {
        continue;
      }
      auto const seconds =
          parse_number<Time::rep>(*min_time, r, "min_transfer_time");
      if (seconds < 0) {
        throw ParseError{r.file(), r.line(), "negative min_transfer_time"};
      }
      tt.stops[stop->second].buffer = Time{seconds};
    }
  }
  return tt;
}

void write_gtfs(Timetable const& tt, fs::path const& dir) {
  fs::create_directories(dir);
  {
    auto out = fmt::output_file((dir / "stops.txt").string());
    out.print("stop_id,stop_lat,stop_lon\n");
    for (auto const& s : tt.stops) {
      out.print("{},{},{}\n", csv::escape(s.id), s.lat, s.lon);
    }
  }
  {
    auto out = fmt::output_file((dir / "trips.txt").string());
    out.print("route_id,trip_id\n");
    for (auto const& t : tt.trips) {
      out.print("{},{}\n", csv::escape(t.route_id), csv::escape(t.id));
    }
  }
  {
    auto out = fmt::output_file((dir / "stop_times.txt").string());
    out.print("trip_id,arrival_time,departure_time,stop_id,stop_sequence\n");
    for (auto const& t : tt.trips) {
      for (std::size_t i = 0; i < t.events.size(); ++i) {
        auto const& e = t.events[i];
        out.print("{},{},{},{},{}\n", csv::escape(t.id),
                  format_gtfs_time(e.arrival), format_gtfs_time(e.departure),
                  csv::escape(tt.stops[e.stop].id), i + 1);
      }
    }
  }
  {
    auto out = fmt::output_file((dir / "transfers.txt").string());
    out.print("from_stop_id,to_stop_id,transfer_type,min_transfer_time\n");
    for (auto const& s : tt.stops) {
      if (s.buffer > Time::zero()) {
        out.print("{},{},2,{}\n", csv::escape(s.id), csv::escape(s.id),
                  s.buffer.seconds());
      }
    }
  }
}

TransferGraph parse_transfer_graph(fs::path const& path) {
  std::ifstream in{path};
  if (!in) {
    throw ParseError{path.string(), 0, "cannot open transfer graph"};
  }
  auto const file = path.string();
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::pair<std::size_t, std::size_t>> header;
  std::size_t header_line = 0;
  std::vector<Arc> arcs;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls{line};
    ls.imbue(std::locale::classic());
    std::string first;
    if (!(ls >> first) || first[0] == 'c' || first[0] == '#') {
      continue;
    }
    if (first == "p") {
      std::size_t n = 0;
      std::size_t m = 0;
      std::string rest;
      if (header.has_value() || !(ls >> n >> m) || (ls >> rest)) {
        throw ParseError{file, line_no, "malformed header line"};
      }
      header = {n, m};
      header_line = line_no;
      arcs.reserve(m);
      continue;
    }
    if (!header.has_value()) {
      throw ParseError{file, line_no, "edge before 'p <vertices> <edges>' header"};
    }
    std::istringstream es{line};
    es.imbue(std::locale::classic());
    long long u = 0;
    long long v = 0;
    long long w = 0;
    std::string rest;
    if (!(es >> u >> v >> w) || (es >> rest)) {
      throw ParseError{file, line_no, "expected '<u> <v> <weight>'"};
    }
    auto const n = static_cast<long long>(header->first);
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw ParseError{file, line_no,
                       fmt::format("vertex out of range in edge {} {}", u, v)};
    }
    if (w < 0) {
      throw ParseError{file, line_no, fmt::format("negative weight {}", w)};
    }
    arcs.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), Time{w}});
  }
  if (!header.has_value()) {
    throw ParseError{file, 0, "missing 'p <vertices> <edges>' header"};
  }
  if (arcs.size() != header->second) {
    throw ParseError{file, header_line,
                     fmt::format("header declares {} edges, found {}",
                                 header->second, arcs.size())};
  }
  return TransferGraph{header->first, std::move(arcs)};
}

void write_transfer_graph(TransferGraph const& graph, fs::path const& path) {
  auto out = fmt::output_file(path.string());
  out.print("p {} {}\n", graph.vertex_count(), graph.edge_count());
  for (auto const& a : graph.arcs()) {
    out.print("{} {} {}\n", a.from, a.to, a.weight.seconds());
  }
}

std::vector<VertexId> parse_stop_mapping(fs::path const& path,
                                         Timetable const& timetable) {
  std::ifstream in{path};
  if (!in) {
    throw ParseError{path.string(), 0, "cannot open stop mapping"};
  }
  std::unordered_map<std::string, StopIdx> index;
  for (StopIdx s = 0; s < timetable.stops.size(); ++s) {
    index.emplace(timetable.stops[s].id, s);
  }
  std::vector<VertexId> mapping(timetable.stops.size(), kNoVertex);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls{line};
    std::string id;
    long long v = -1;
    if (!(ls >> id) || id[0] == '#') {
      continue;
    }
    if (!(ls >> v) || v < 0) {
      throw ParseError{path.string(), line_no, "expected '<stop_id> <vertex>'"};
    }
    auto const it = index.find(id);
    if (it == index.end()) {
      throw ParseError{path.string(), line_no, "unknown stop_id " + id};
    }
    mapping[it->second] = static_cast<VertexId>(v);
  }
  for (StopIdx s = 0; s < mapping.size(); ++s) {
    if (mapping[s] == kNoVertex) {
      throw ParseError{path.string(), 0,
                       "no vertex for stop " + timetable.stops[s].id};
    }
  }
  return mapping;
}

}  // namespace tad
