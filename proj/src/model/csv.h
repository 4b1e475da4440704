#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tad::csv {

// Header-driven CSV reader (RFC 4180 quoting, optional UTF-8 BOM).
class Reader {
public:
  Reader(std::istream& in, std::string file);

  // Advances to the next non-empty record; false at end of input.
  bool next();

  std::size_t line() const { return line_; }
  std::string const& file() const { return file_; }

  bool has_column(std::string_view name) const;
  // Field of the current record; throws ParseError if the column is missing.
  std::string const& get(std::string_view name) const;
  std::optional<std::string> get_optional(std::string_view name) const;

private:
  bool read_record(std::vector<std::string>& fields);

  std::istream& in_;
  std::string file_;
  std::size_t line_{0};
  std::size_t next_line_{1};
  std::unordered_map<std::string, std::size_t> columns_;
  std::vector<std::string> fields_;
};

std::string escape(std::string_view field);

}  // namespace tad::csv
