#ifndef DNAPACK_CLI_HPP
#define DNAPACK_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace dnapack::cli {

enum ExitCode : int {
    kOk = 0,
    kIoFailure = 1,
    kMalformedStream = 2,
    kInvalidInput = 3,
    kUsage = 64,
};

struct StdStreams
{
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
};

/// Runs one invocation. `args` includes the program name. "-" selects the
/// injected stdin/stdout for input and output paths.
int run(const std::vector<std::string>& args, StdStreams io);

}  // namespace dnapack::cli

#endif  // DNAPACK_CLI_HPP
