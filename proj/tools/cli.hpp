#ifndef FAIRDIV_TOOLS_CLI_HPP
#define FAIRDIV_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace fairdiv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCapacity = 3;
inline constexpr int kExitIo = 4;

// Runs the command line `args` (args[0] is the program name) and returns the
// process exit code.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace fairdiv::cli

#endif  // FAIRDIV_TOOLS_CLI_HPP
