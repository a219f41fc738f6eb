#pragma once

#include <iosfwd>

namespace uavdql::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsage = 2,
    kData = 3,
    kCapacity = 4,
};

// Entry point shared by the `uavdql` binary and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace uavdql::cli
