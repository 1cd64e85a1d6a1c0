#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bhmetric {

// Command dispatch behind the bhmetric executable. Returns the process exit
// code: 0 on success, 2 on argument errors, 3 on numerical failures. Results
// go to `out` unless an output path is requested; diagnostics go to `err`.
// Output files are only created after the computation has succeeded, so a
// failing run never leaves a partial file behind.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bhmetric
