#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tad {

// Entry point of the `tad` tool; args excludes the program name. Returns
// the process exit code.
int run_cli(std::vector<std::string> const& args, std::ostream& out,
            std::ostream& err);

}  // namespace tad
