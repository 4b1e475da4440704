#include "csv.h"

#include "tad/model/error.h"

namespace tad::csv {

Reader::Reader(std::istream& in, std::string file)
    : in_{in}, file_{std::move(file)} {
  std::vector<std::string> header;
  if (!read_record(header)) {
    throw ParseError{file_, 0, "missing header row"};
  }
  if (!header.empty() && header[0].starts_with("\xEF\xBB\xBF")) {
    header[0].erase(0, 3);
  }
  for (std::size_t i = 0; i < header.size(); ++i) {
    columns_.emplace(header[i], i);
  }
}

bool Reader::read_record(std::vector<std::string>& fields) {
  fields.clear();
  std::string field;
  bool in_quotes = false;
  bool any = false;
  line_ = next_line_;
  int c;
  while ((c = in_.get()) != EOF) {
    any = true;
    if (in_quotes) {
      if (c == '"') {
        if (in_.peek() == '"') {
          in_.get();
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') {
          ++next_line_;
        }
        field.push_back(static_cast<char>(c));
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      ++next_line_;
      fields.push_back(std::move(field));
      return true;
    } else if (c != '\r') {
      field.push_back(static_cast<char>(c));
    }
  }
  if (in_quotes) {
    throw ParseError{file_, line_, "unterminated quoted field"};
  }
  if (any) {
    fields.push_back(std::move(field));
  }
  return any;
}

bool Reader::next() {
  while (read_record(fields_)) {
    if (fields_.size() == 1 && fields_[0].empty()) {
      continue;
    }
    return true;
  }
  return false;
}

bool Reader::has_column(std::string_view name) const {
  return columns_.find(std::string{name}) != columns_.end();
}

std::string const& Reader::get(std::string_view name) const {
  auto const it = columns_.find(std::string{name});
  if (it == columns_.end()) {
    throw ParseError{file_, 0, "missing column " + std::string{name}};
  }
  if (it->second >= fields_.size()) {
    throw ParseError{file_, line_, "missing field " + std::string{name}};
  }
  return fields_[it->second];
}

std::optional<std::string> Reader::get_optional(std::string_view name) const {
  auto const it = columns_.find(std::string{name});
  if (it == columns_.end() || it->second >= fields_.size()) {
    return std::nullopt;
  }
  return fields_[it->second];
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string{field};
  }
  std::string out = "\"";
  for (auto const c : field) {
    if (c == '"') {
      out.push_back('"');
    }
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace tad::csv
