#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace occam::cli {

// Entry point shared by the executable and the tests. Data goes to `out`
// (or the --output file), diagnostics to `err`. Returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace occam::cli
