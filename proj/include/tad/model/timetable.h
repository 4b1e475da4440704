#pragma once

#include <string>
#include <vector>

#include "tad/model/time.h"
#include "tad/model/types.h"

namespace tad {

struct Stop {
  std::string id;
  VertexId vertex{kNoVertex};
  // Minimum wait between arriving at this stop and boarding a new trip.
  Time buffer{0};
  double lat{0.0};
  double lon{0.0};

  friend bool operator==(Stop const&, Stop const&) = default;
};

struct StopEvent {
  StopIdx stop;
  Time arrival;
  Time departure;

  friend bool operator==(StopEvent const&, StopEvent const&) = default;
};

struct Trip {
  std::string id;
  std::string route_id;
  std::vector<StopEvent> events;

  friend bool operator==(Trip const&, Trip const&) = default;
};

struct Timetable {
  std::vector<Stop> stops;
  std::vector<Trip> trips;

  friend bool operator==(Timetable const&, Timetable const&) = default;
};

}  // namespace tad
