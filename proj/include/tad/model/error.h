#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tad {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Input file problem; carries the file and 1-based line where it was found
// (line 0 when the problem is not tied to a line).
class ParseError : public Error {
public:
  ParseError(std::string file, std::size_t line, std::string const& message);

  std::string const& file() const { return file_; }
  std::size_t line() const { return line_; }

private:
  std::string file_;
  std::size_t line_;
};

}  // namespace tad
