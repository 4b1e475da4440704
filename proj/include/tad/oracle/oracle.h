#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tad/model/network.h"
#include "tad/model/time.h"

namespace tad {

// Size guard for oracle_query.
inline constexpr std::size_t kOracleMaxVertices = 2000;
inline constexpr std::size_t kOracleMaxDepartures = 5000;

// Earliest arrival at `target` by exhaustive label correcting over
// (vertex, arrival) states. Boarding at stop u needs departure >=
// arrival_at_u + buffer(u); staying seated is free. Reads trips directly and
// never touches the departure boards. Throws Error above the size guard.
Time oracle_query(Network const& network, VertexId source, VertexId target,
                  Time departure);

// Guard for enumerate_journeys.
inline constexpr std::size_t kEnumerationMaxVertices = 64;
inline constexpr std::size_t kEnumerationMaxEvents = 32;

struct EnumeratedJourney {
  std::string description;
  Time arrival;
  std::size_t trips{0};
};

// Every journey with at most `max_trips` trip segments that reaches
// `target`; each walking leg is a shortest walk. Tiny instances only.
std::vector<EnumeratedJourney> enumerate_journeys(Network const& network,
                                                  VertexId source,
                                                  VertexId target,
                                                  Time departure,
                                                  std::size_t max_trips);

}  // namespace tad
