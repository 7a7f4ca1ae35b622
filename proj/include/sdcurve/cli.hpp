// Command-line front end. Exit codes: 0 ok, 1 internal failure, 2 usage or
// domain error, 3 verification failure.

#ifndef SDCURVE_CLI_HPP_
#define SDCURVE_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace sdcurve::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitVerifyFailed = 3;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sdcurve::cli

#endif  // SDCURVE_CLI_HPP_
