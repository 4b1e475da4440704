#pragma once

#include <cstdint>
#include <filesystem>
#include <string_view>

#include "tad/model/network.h"

namespace tad {

struct GenParams {
  std::uint64_t seed{1};
  std::size_t stop_count{20};
  std::size_t extra_vertex_count{20};
  std::size_t trip_count{40};
  std::size_t min_trip_length{2};  // stop events per trip
  std::size_t max_trip_length{6};
  Time horizon{Time::hms(24, 0)};  // first departures fall in [0, horizon)
  double non_fifo_rate{0.3};
  double buffer_rate{0.5};
  Time min_buffer{60};
  Time max_buffer{600};
  std::size_t walk_degree{3};  // nearest neighbours linked per vertex
  double area_km{3.0};         // side of the square the vertices live in
  bool closure_mode{false};
};

// Throws Error describing the first violated parameter constraint.
void check_params(GenParams const& params);

// Deterministic per params: same params, identical network.
Network generate(GenParams const& params);

// Worked-example networks: "motivating", "pruning", "nonfifo_intro".
Network paper_fixture(std::string_view name);

// Writes GTFS files, graph.txt and mapping.txt into `dir`.
void write_network_files(Network const& network,
                         std::filesystem::path const& dir);

}  // namespace tad
