#include "tad/model/error.h"

#include "fmt/core.h"

namespace tad {

ParseError::ParseError(std::string file, std::size_t line,
                       std::string const& message)
    : Error{line == 0 ? fmt::format("{}: {}", file, message)
                      : fmt::format("{}:{}: {}", file, line, message)},
      file_{std::move(file)},
      line_{line} {}

}  // namespace tad
