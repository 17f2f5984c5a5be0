#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace searchlab {

// Runs one CLI invocation. args excludes the program name. Results go to
// `out` (or the --out file); failures are written to `err` as a JSON object
// {"error": <code>, "message": <text>} and yield a nonzero exit code.
int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err);

}  // namespace searchlab
