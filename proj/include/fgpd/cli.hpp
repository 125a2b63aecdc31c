#ifndef FGPD_CLI_HPP_
#define FGPD_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace fgpd {

// Exit codes of run_cli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // a validation or theorem check failed
inline constexpr int kExitUsage = 2;    // bad arguments or unreadable input

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fgpd

#endif  // FGPD_CLI_HPP_
