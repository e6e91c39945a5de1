// Command-line front end.  `run` takes the argument list without the
// program name so tests can drive it in-process, and maps every failure
// mode onto a stable exit code:
//   0  success
//   1  a mathematical check failed (verify suites, series bounds)
//   2  usage error: bad flags, malformed input files, out-of-range asks
//   3  resource ceiling or allocation failure
#pragma once

#include <string>
#include <vector>

namespace cisnim {

int run(std::vector<std::string> args);

}  // namespace cisnim
