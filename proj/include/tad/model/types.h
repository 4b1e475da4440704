#pragma once

#include <cstdint>
#include <limits>

namespace tad {

using VertexId = std::uint32_t;
using StopIdx = std::uint32_t;
using TripIdx = std::uint32_t;
using BoardIdx = std::uint32_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();
inline constexpr StopIdx kNoStop = std::numeric_limits<StopIdx>::max();
inline constexpr TripIdx kNoTrip = std::numeric_limits<TripIdx>::max();

}  // namespace tad
