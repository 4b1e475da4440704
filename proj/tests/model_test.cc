#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "tad/model/error.h"
#include "tad/model/gtfs.h"
#include "tad/model/network.h"
#include "tad/netgen/netgen.h"

namespace fs = std::filesystem;

namespace tad {
namespace {

class TempDir {
public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("tad_model_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path const& path() const { return path_; }

  void write(std::string const& name, std::string const& content) const {
    std::ofstream{path_ / name} << content;
  }

private:
  static inline int counter_ = 0;
  fs::path path_;
};

TEST(Time, UnreachableAbsorbs) {
  EXPECT_GT(kUnreachable, Time{1'000'000'000});
  EXPECT_EQ(kUnreachable + Time{5}, kUnreachable);
  EXPECT_EQ(Time{5} + kUnreachable, kUnreachable);
  EXPECT_EQ(Time{5} + Time{7}, Time{12});
}

TEST(Time, ParsesGtfsTimes) {
  EXPECT_EQ(parse_hms("25:10:00"), Time{90600});
  EXPECT_EQ(parse_hms("8:00:00"), Time::hms(8, 0));
  EXPECT_EQ(parse_hms("08:05:09"), Time{8 * 3600 + 5 * 60 + 9});
  EXPECT_FALSE(parse_hms("8:0:00"));
  EXPECT_FALSE(parse_hms("08:61:00"));
  EXPECT_FALSE(parse_hms("abc"));
  EXPECT_FALSE(parse_hms(""));
}

TEST(Time, Formats) {
  EXPECT_EQ(format_clock(Time::hms(10, 30)), "10:30:00");
  EXPECT_EQ(format_clock(Time::hms(25, 10)), "01:10:00+1d");
  EXPECT_EQ(format_clock(kUnreachable), "UNREACHABLE");
  EXPECT_EQ(format_gtfs_time(Time::hms(25, 10)), "25:10:00");
}

TEST(TransferGraph, BuildsAndRejects) {
  TransferGraph g{3, {{0, 1, Time{300}}, {1, 2, Time{5}}}};
  EXPECT_EQ(g.vertex_count(), 3U);
  EXPECT_EQ(g.edge_count(), 2U);
  ASSERT_EQ(g.out(0).size(), 1U);
  EXPECT_EQ(g.out(0)[0].target, 1U);
  EXPECT_EQ(g.reversed().out(2)[0].target, 1U);
  EXPECT_THROW((TransferGraph{2, {{0, 1, Time{-5}}}}), Error);
  EXPECT_THROW((TransferGraph{2, {{0, 2, Time{5}}}}), Error);
  EXPECT_THROW((TransferGraph{2, {{0, 1, kUnreachable}}}), Error);
}

TEST(TransferGraph, ParsesFiles) {
  TempDir dir;
  dir.write("g.txt", "c comment\np 2 1\n0 1 300\n");
  auto const g = parse_transfer_graph(dir.path() / "g.txt");
  EXPECT_EQ(g.vertex_count(), 2U);
  ASSERT_EQ(g.edge_count(), 1U);
  EXPECT_EQ(g.out(0)[0].weight, Time{300});

  dir.write("iso.txt", "p 3 0\n");
  auto const iso = parse_transfer_graph(dir.path() / "iso.txt");
  EXPECT_EQ(iso.vertex_count(), 3U);
  EXPECT_EQ(iso.edge_count(), 0U);

  dir.write("neg.txt", "p 2 1\n0 1 -5\n");
  EXPECT_THROW(parse_transfer_graph(dir.path() / "neg.txt"), ParseError);
  dir.write("count.txt", "p 2 2\n0 1 5\n");
  EXPECT_THROW(parse_transfer_graph(dir.path() / "count.txt"), ParseError);

  write_transfer_graph(g, dir.path() / "out.txt");
  EXPECT_EQ(parse_transfer_graph(dir.path() / "out.txt"), g);
}

TEST(Network, MotivatingBoard) {
  auto const net = paper_fixture("motivating");
  auto const b = net.find_board(0, 1);
  ASSERT_TRUE(b);
  auto const& board = net.boards()[*b];
  EXPECT_EQ(board.departure, (std::vector<Time>{Time{28800}, Time{30600}}));
  EXPECT_EQ(board.arrival_next, (std::vector<Time>{Time{34800}, Time{34200}}));
  EXPECT_EQ(board.suffix_min_arrival,
            (std::vector<Time>{Time{34200}, Time{34200}}));
  EXPECT_EQ(board.boarding_adjusted_departure,
            (std::vector<Time::rep>{28800, 30600}));
  EXPECT_TRUE(validate_network(net).empty());
}

TEST(Network, BufferShiftsBoarding) {
  auto tt = paper_fixture("motivating").timetable();
  tt.stops[0].buffer = Time{60};
  auto const net = assemble_network(tt, TransferGraph{3, {}});
  auto const& board = net.boards()[*net.find_board(0, 1)];
  EXPECT_EQ(board.boarding_adjusted_departure,
            (std::vector<Time::rep>{28740, 30540}));
  EXPECT_EQ(board.first_boardable(Time{28740}), 0U);
  EXPECT_EQ(board.first_boardable(Time{28741}), 1U);
  EXPECT_EQ(board.first_boardable(kUnreachable), 2U);
}

TEST(Network, StopIndexRoundTrips) {
  auto const net = generate({});
  for (StopIdx s = 0; s < net.stops().size(); ++s) {
    EXPECT_EQ(net.stop_of_vertex(net.vertex_of_stop(s)), s);
  }
  EXPECT_TRUE(validate_network(net).empty());
}

TEST(Network, ReportsBackwardTrip) {
  auto tt = paper_fixture("motivating").timetable();
  tt.trips[1].events[1].arrival = Time::hms(7, 0);
  tt.trips[1].events[1].departure = Time::hms(7, 0);
  auto const net = assemble_network(tt, TransferGraph{3, {}});
  EXPECT_EQ(validate_network(net).size(), 1U);
}

TEST(Network, ReportsOutOfRangeVertex) {
  auto const tt = paper_fixture("motivating").timetable();
  auto const net =
      assemble_network(tt, TransferGraph{3, {}}, std::vector<VertexId>{0, 1, 7});
  EXPECT_EQ(validate_network(net).size(), 1U);
}

TEST(Network, RejectsSharedVertex) {
  auto const tt = paper_fixture("motivating").timetable();
  EXPECT_THROW(
      assemble_network(tt, TransferGraph{3, {}}, std::vector<VertexId>{0, 1, 1}),
      Error);
}

void write_minimal_feed(TempDir const& dir) {
  dir.write("stops.txt", "stop_id,stop_name,stop_lat,stop_lon\nS1,One,47.1,8.5\n"
                         "S2,Two,47.2,8.6\n");
  dir.write("trips.txt", "route_id,service_id,trip_id\nR,WD,T1\n");
  dir.write("stop_times.txt",
            "trip_id,arrival_time,departure_time,stop_id,stop_sequence\n"
            "T1,25:00:00,25:00:00,S1,2\n"
            "T1,25:10:00,25:10:00,S2,3\n");
}

TEST(Gtfs, ParsesFeedAndBuffers) {
  TempDir dir;
  write_minimal_feed(dir);
  dir.write("transfers.txt",
            "from_stop_id,to_stop_id,transfer_type,min_transfer_time\n"
            "S1,S1,2,600\nS1,S2,2,900\n");
  auto const tt = parse_gtfs(dir.path());
  ASSERT_EQ(tt.stops.size(), 2U);
  EXPECT_EQ(tt.stops[0].buffer, Time{600});
  EXPECT_EQ(tt.stops[1].buffer, Time{0});
  ASSERT_EQ(tt.trips.size(), 1U);
  EXPECT_EQ(tt.trips[0].events[1].arrival, Time{90600});
}

TEST(Gtfs, NoTransfersMeansNoBuffers) {
  TempDir dir;
  write_minimal_feed(dir);
  auto const tt = parse_gtfs(dir.path());
  for (auto const& s : tt.stops) {
    EXPECT_EQ(s.buffer, Time{0});
  }
}

TEST(Gtfs, CorruptRowNamesFileAndLine) {
  TempDir dir;
  write_minimal_feed(dir);
  dir.write("stop_times.txt",
            "trip_id,arrival_time,departure_time,stop_id,stop_sequence\n"
            "T1,25:00:00,25:00:00,S1,2\n"
            "T1,2x:10:00,25:10:00,S2,3\n");
  try {
    parse_gtfs(dir.path());
    FAIL() << "expected ParseError";
  } catch (ParseError const& e) {
    std::string const what = e.what();
    EXPECT_NE(what.find("stop_times.txt:3"), std::string::npos) << what;
  }
}

TEST(Gtfs, UnknownStopIsAnError) {
  TempDir dir;
  write_minimal_feed(dir);
  dir.write("stop_times.txt",
            "trip_id,arrival_time,departure_time,stop_id,stop_sequence\n"
            "T1,08:00:00,08:00:00,S9,1\n");
  EXPECT_THROW(parse_gtfs(dir.path()), ParseError);
}

TEST(Gtfs, RoundTripsGeneratedNetwork) {
  TempDir dir;
  GenParams p;
  p.seed = 42;
  auto const net = generate(p);
  write_network_files(net, dir.path());
  auto const tt = parse_gtfs(dir.path());
  auto const g = parse_transfer_graph(dir.path() / "graph.txt");
  auto const mapping = parse_stop_mapping(dir.path() / "mapping.txt", tt);
  auto const again = assemble_network(tt, g, mapping);
  EXPECT_EQ(again.timetable().trips, net.timetable().trips);
  ASSERT_EQ(again.stops().size(), net.stops().size());
  for (StopIdx s = 0; s < net.stops().size(); ++s) {
    EXPECT_EQ(again.stops()[s].id, net.stops()[s].id);
    EXPECT_EQ(again.stops()[s].buffer, net.stops()[s].buffer);
    EXPECT_EQ(again.stops()[s].vertex, net.stops()[s].vertex);
  }
  EXPECT_EQ(again.graph(), net.graph());
}

}  // namespace
}  // namespace tad
