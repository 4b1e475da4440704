#include <gtest/gtest.h>

#include <algorithm>

#include "support.h"
#include "tad/model/error.h"
#include "tad/oracle/oracle.h"

namespace tad {
namespace {

TEST(Oracle, Motivating) {
  auto const net = paper_fixture("motivating");
  EXPECT_EQ(oracle_query(net, 0, 2, Time::hms(7, 50)), Time::hms(10, 30));
}

TEST(Oracle, WalkOnly) {
  Timetable tt;
  tt.stops = {{"A", 0}};
  TransferGraph g{3, {{0, 1, Time{100}}, {1, 2, Time{50}}, {0, 2, Time{400}}}};
  auto const net = assemble_network(tt, g);
  EXPECT_EQ(oracle_query(net, 0, 2, Time{1000}), Time{1150});
  EXPECT_EQ(oracle_query(net, 2, 0, Time{1000}), kUnreachable);
}

TEST(Oracle, SizeGuard) {
  Timetable tt;
  auto const net = assemble_network(tt, TransferGraph{kOracleMaxVertices + 1, {}});
  EXPECT_THROW(oracle_query(net, 0, 1, Time{0}), Error);
}

TEST(Oracle, Properties) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto const net = generate(test::small_params(seed));
    auto const queries = test::random_queries(net, seed, 10, Time::hms(3, 0));
    for (auto const& q : queries) {
      EXPECT_EQ(oracle_query(net, q.source, q.source, q.departure), q.departure);
      auto const a = oracle_query(net, q.source, q.target, q.departure);
      auto const walk =
          q.departure + test::reference_distances(net.graph(), q.source)[q.target];
      EXPECT_LE(a, walk);
      auto const later =
          oracle_query(net, q.source, q.target, q.departure + Time{600});
      if (a.is_finite() && later.is_finite()) {
        EXPECT_LE(a, later);
      }
    }
  }
}

TEST(Enumeration, MotivatingSeatedJourney) {
  auto const net = paper_fixture("motivating");
  auto const js = enumerate_journeys(net, 0, 2, Time::hms(7, 50), 1);
  auto const it = std::find_if(begin(js), end(js), [](auto const& j) {
    return j.description.find("T1 A -> C") != std::string::npos;
  });
  ASSERT_NE(it, end(js));
  EXPECT_EQ(it->arrival, Time::hms(10, 30));
  EXPECT_EQ(it->trips, 1U);
}

TEST(Enumeration, ZeroTripsIsWalkOnly) {
  auto const net = paper_fixture("motivating");
  EXPECT_TRUE(enumerate_journeys(net, 0, 2, Time::hms(7, 50), 0).empty());
  auto const self = enumerate_journeys(net, 0, 0, Time::hms(7, 50), 0);
  ASSERT_EQ(self.size(), 1U);
  EXPECT_EQ(self[0].arrival, Time::hms(7, 50));
}

GenParams tiny_params(std::uint64_t seed) {
  GenParams p;
  p.seed = seed;
  p.stop_count = 3 + seed % 3;
  p.extra_vertex_count = seed % 3;
  p.trip_count = 1 + seed % 3;
  p.max_trip_length = 3;
  p.horizon = Time::hms(0, 40);
  p.walk_degree = 1;
  p.area_km = 0.5;
  return p;
}

TEST(Enumeration, MinimumEqualsOracle) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    auto const net = generate(tiny_params(seed));
    for (auto const& q : test::random_queries(net, seed, 3, Time::hms(0, 40))) {
      auto best = kUnreachable;
      for (auto const& j :
           enumerate_journeys(net, q.source, q.target, q.departure, 4)) {
        best = std::min(best, j.arrival);
      }
      EXPECT_EQ(best, oracle_query(net, q.source, q.target, q.departure))
          << seed;
    }
  }
}

}  // namespace
}  // namespace tad
