#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace tad {

// Seconds since service-day midnight. Values past 86400 are valid
// (over-midnight trips). The same type carries durations.
class Time {
public:
  using rep = std::int64_t;

  constexpr Time() = default;
  constexpr explicit Time(rep seconds) : seconds_{seconds} {}

  static constexpr Time unreachable() {
    return Time{std::numeric_limits<rep>::max()};
  }
  static constexpr Time zero() { return Time{0}; }

  static constexpr Time hms(rep h, rep m, rep s = 0) {
    return Time{h * 3600 + m * 60 + s};
  }

  constexpr rep seconds() const { return seconds_; }
  constexpr bool is_finite() const { return *this != unreachable(); }

  friend constexpr auto operator<=>(Time, Time) = default;

  // Saturating: anything plus unreachable stays unreachable.
  friend constexpr Time operator+(Time a, Time b) {
    if (!a.is_finite() || !b.is_finite()) {
      return unreachable();
    }
    return Time{a.seconds_ + b.seconds_};
  }
  constexpr Time& operator+=(Time d) { return *this = *this + d; }

private:
  rep seconds_{0};
};

inline constexpr Time kUnreachable = Time::unreachable();

// "HH:MM:SS" with hours allowed past 24; returns nullopt on malformed input.
std::optional<Time> parse_hms(std::string_view text);

// "HH:MM:SS" in GTFS style (hours may exceed 23).
std::string format_gtfs_time(Time t);

// "HH:MM:SS" wrapped into the day with a "+Nd" suffix past midnight, or
// "UNREACHABLE".
std::string format_clock(Time t);

}  // namespace tad
