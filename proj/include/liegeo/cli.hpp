#pragma once

#include <iosfwd>

namespace liegeo {

// Full command-line driver; returns the process exit code.
//   0  success
//   1  semantic failure (validation fail, verify fail, norm bound, not Berwald)
//   2  parse or input failure
//   3  unsupported flag-curvature case
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace liegeo
