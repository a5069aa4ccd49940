#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lllab {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kInputError = 2,
    kResourceError = 3,
    kNotConverged = 4,
};

/// Runs one subcommand; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace lllab
