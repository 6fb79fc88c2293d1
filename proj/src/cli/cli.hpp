#ifndef WAVESPEC_CLI_HPP
#define WAVESPEC_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace wavespec::cli {

inline constexpr int kExitStable = 0;
inline constexpr int kExitUnstable = 10;
inline constexpr int kExitIndeterminate = 20;
inline constexpr int kExitNoThreshold = 30;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 1;

/// Runs `wavespec <args...>` (args exclude the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace wavespec::cli

#endif
