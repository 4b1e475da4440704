#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "tad/netgen/netgen.h"
#include "tad/preprocessing/filter.h"

#include "support.h"

namespace tad {
namespace {

TEST(Filter, MotivatingEdge) {
  std::vector<Connection> in{{Time::hms(8, 0), Time::hms(9, 40), 0, 0},
                             {Time::hms(8, 30), Time::hms(9, 30), 1, 0}};
  auto const out = filter_dominated(in);
  ASSERT_EQ(out.size(), 1U);
  EXPECT_EQ(out[0].trip, 1U);
}

TEST(Filter, SingleConnection) {
  std::vector<Connection> in{{Time{5}, Time{9}, 0, 0}};
  EXPECT_EQ(filter_dominated(in), in);
  EXPECT_TRUE(filter_dominated({}).empty());
}

TEST(Filter, MatchesBruteForce) {
  std::mt19937_64 rng{7};
  for (int round = 0; round < 500; ++round) {
    auto const in = test::random_connections(rng, 1 + rng() % 50);
    auto const out = filter_dominated(in);
    EXPECT_EQ(out, test::brute_force_filter(in)) << round;
    for (std::size_t i = 1; i < out.size(); ++i) {
      EXPECT_LT(out[i - 1].departure, out[i].departure);
      EXPECT_LT(out[i - 1].arrival, out[i].arrival);
    }
    EXPECT_EQ(filter_dominated(out), out);
  }
}

TEST(Filter, NonFifoBoardShrinks) {
  GenParams p;
  p.stop_count = 2;
  p.extra_vertex_count = 0;
  p.trip_count = 2;
  p.max_trip_length = 2;
  p.non_fifo_rate = 1.0;
  auto const net = generate(p);
  ASSERT_EQ(net.boards().size(), 1U);
  auto const filtered = filter_boards(net);
  EXPECT_LT(filtered[0].size(), net.boards()[0].size());
}

}  // namespace
}  // namespace tad
