#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace circlesum {

/// Command-line front end. Returns 0 iff every requested verdict passes,
/// 1 on a failed verdict and 2 on usage or construction errors; the first
/// failure is named on `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace circlesum
