#include "tad/model/time.h"

#include <charconv>

#include "fmt/core.h"

namespace tad {

namespace {

std::optional<Time::rep> parse_field(std::string_view s) {
  if (s.empty()) {
    return std::nullopt;
  }
  Time::rep value = 0;
  auto const [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || value < 0) {
    return std::nullopt;
  }
  return value;
}

}  // namespace

std::optional<Time> parse_hms(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
    text.remove_prefix(1);
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' ||
                           text.back() == '\r')) {
    text.remove_suffix(1);
  }
  auto const c1 = text.find(':');
  if (c1 == std::string_view::npos) {
    return std::nullopt;
  }
  auto const c2 = text.find(':', c1 + 1);
  if (c2 == std::string_view::npos ||
      text.find(':', c2 + 1) != std::string_view::npos) {
    return std::nullopt;
  }
  auto const h = parse_field(text.substr(0, c1));
  auto const m = parse_field(text.substr(c1 + 1, c2 - c1 - 1));
  auto const s = parse_field(text.substr(c2 + 1));
  if (!h || !m || !s || *m > 59 || *s > 59 ||
      text.substr(c1 + 1, c2 - c1 - 1).size() != 2 ||
      text.substr(c2 + 1).size() != 2) {
    return std::nullopt;
  }
  return Time::hms(*h, *m, *s);
}

std::string format_gtfs_time(Time t) {
  if (!t.is_finite()) {
    return "UNREACHABLE";
  }
  auto const s = t.seconds();
  return fmt::format("{:02}:{:02}:{:02}", s / 3600, (s / 60) % 60, s % 60);
}

std::string format_clock(Time t) {
  if (!t.is_finite()) {
    return "UNREACHABLE";
  }
  auto const s = t.seconds();
  auto const day = s / 86400;
  auto const in_day = s % 86400;
  auto out = fmt::format("{:02}:{:02}:{:02}", in_day / 3600, (in_day / 60) % 60,
                         in_day % 60);
  if (day > 0) {
    out += fmt::format("+{}d", day);
  }
  return out;
}

}  // namespace tad
