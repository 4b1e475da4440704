#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.h"
#include "tad/model/error.h"
#include "tad/netgen/netgen.h"

namespace fs = std::filesystem;

namespace tad {
namespace {

std::string slurp_dir(fs::path const& dir) {
  std::string all;
  for (auto const* name : {"stops.txt", "trips.txt", "stop_times.txt",
                           "transfers.txt", "graph.txt", "mapping.txt"}) {
    std::ifstream in{dir / name};
    std::stringstream ss;
    ss << in.rdbuf();
    all += ss.str();
  }
  return all;
}

TEST(Netgen, Deterministic) {
  GenParams p;
  p.seed = 99;
  auto const a = generate(p);
  auto const b = generate(p);
  EXPECT_EQ(a.timetable(), b.timetable());
  EXPECT_EQ(a.graph(), b.graph());
  auto const base = fs::temp_directory_path() / ("tad_netgen_" + std::to_string(::getpid()));
  write_network_files(a, base / "a");
  write_network_files(b, base / "b");
  EXPECT_EQ(slurp_dir(base / "a"), slurp_dir(base / "b"));
  fs::remove_all(base);
  p.seed = 100;
  EXPECT_NE(generate(p).timetable(), a.timetable());
}

TEST(Netgen, RejectsBadParams) {
  GenParams p;
  p.buffer_rate = 1.5;
  EXPECT_THROW(generate(p), Error);
  p = {};
  p.non_fifo_rate = -0.1;
  EXPECT_THROW(generate(p), Error);
  p = {};
  p.max_trip_length = p.stop_count + 1;
  EXPECT_THROW(generate(p), Error);
  p = {};
  p.min_buffer = Time{700};
  EXPECT_THROW(generate(p), Error);
  p = {};
  p.horizon = Time{0};
  EXPECT_THROW(generate(p), Error);
}

TEST(Netgen, ValidAndFeatured) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto params = test::small_params(seed);
    auto const net = generate(params);
    EXPECT_TRUE(validate_network(net).empty());
    for (auto const& s : net.stops()) {
      EXPECT_TRUE(s.buffer == Time{0} ||
                  (s.buffer >= params.min_buffer && s.buffer <= params.max_buffer));
    }
    // An overtaking pair exists somewhere.
    bool overtaking = false;
    for (auto const& b : net.boards()) {
      for (std::size_t i = 0; i + 1 < b.size() && !overtaking; ++i) {
        for (auto j = i + 1; j < b.size(); ++j) {
          if (b.departure[j] > b.departure[i] && b.arrival_next[j] < b.arrival_next[i]) {
            overtaking = true;
            break;
          }
        }
      }
    }
    EXPECT_TRUE(overtaking) << seed;
  }
}

TEST(Netgen, ZeroBufferRate) {
  auto p = test::small_params(5);
  p.buffer_rate = 0.0;
  EXPECT_FALSE(generate(p).has_buffers());
}

TEST(Netgen, ClosureModeIsTransitivelyClosed) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto p = test::small_params(seed);
    p.closure_mode = true;
    auto const net = generate(p);
    EXPECT_TRUE(net.footpaths_closed());
    auto const n = net.stops().size();
    std::vector<std::vector<Time>> w(n, std::vector<Time>(n, kUnreachable));
    for (StopIdx s = 0; s < n; ++s) {
      for (auto const& e : net.graph().out(net.vertex_of_stop(s))) {
        auto const o = net.stop_of_vertex(e.target);
        if (o != kNoStop) {
          w[s][o] = std::min(w[s][o], e.weight);
        }
      }
    }
    for (StopIdx a = 0; a < n; ++a) {
      for (StopIdx b = 0; b < n; ++b) {
        for (StopIdx c = 0; c < n; ++c) {
          if (a != c && w[a][b].is_finite() && w[b][c].is_finite()) {
            EXPECT_LE(w[a][c], w[a][b] + w[b][c]) << seed;
          }
        }
      }
    }
  }
}

TEST(Fixtures, Shapes) {
  auto const m = paper_fixture("motivating");
  EXPECT_EQ(m.stops().size(), 3U);
  EXPECT_EQ(m.trips().size(), 2U);
  EXPECT_EQ(m.buffer(1), Time{1200});
  EXPECT_TRUE(validate_network(m).empty());

  auto const nf = paper_fixture("nonfifo_intro");
  ASSERT_EQ(nf.boards().size(), 1U);
  auto const& b = nf.boards()[0];
  EXPECT_EQ(b.departure, (std::vector<Time>{Time::hms(8, 0), Time::hms(8, 30)}));
  EXPECT_EQ(b.arrival_next, (std::vector<Time>{Time::hms(9, 30), Time::hms(9, 0)}));

  auto const pr = paper_fixture("pruning");
  ASSERT_EQ(pr.boards().size(), 1U);
  EXPECT_EQ(pr.boards()[0].arrival_next,
            (std::vector<Time>{Time::hms(9, 30), Time::hms(9, 0), Time::hms(10, 0),
                               Time::hms(9, 30)}));
  EXPECT_EQ(pr.boards()[0].suffix_min_arrival,
            (std::vector<Time>{Time::hms(9, 0), Time::hms(9, 0), Time::hms(9, 30),
                               Time::hms(9, 30)}));
  EXPECT_THROW(paper_fixture("nope"), Error);
}

}  // namespace
}  // namespace tad
