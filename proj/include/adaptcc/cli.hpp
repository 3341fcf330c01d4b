#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace adaptcc::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kSuccess = 0,
  kConfigError = 2,
  kFixtureFailure = 3,
  kNumericalFailure = 4,
  kIoError = 5,
};

// "a:b:s" (inclusive, dB), "a,b,c" or a single value.
std::vector<double> parse_snr_grid(const std::string& text);

// Entry point shared by the executable and the tests. Data goes to `out`
// (or the --out file), diagnostics and warnings to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adaptcc::cli
