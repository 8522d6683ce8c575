#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ptalg/linalg.hpp"

namespace ptalg::cli {

enum class Command { Rep2, Rep4, Verify, LeeSpectrum, LeeCoeffs, LeeConverge };
enum class OutputFormat { Json, Csv };

using ParamValue = std::variant<long long, double, Complex, std::string>;

struct RunConfig {
  Command command = Command::Verify;
  std::map<std::string, ParamValue> parameters;
  OutputFormat format = OutputFormat::Json;
  double tolerance = kDefaultTol;
  std::uint64_t seed = 0;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitBadInput = 2;

/// Parses "re", "re+imi", "re-imi", "imi", "i", "-i". Throws ParameterError.
Complex parse_complex(std::string_view text);

/// Builds a RunConfig from argv-style arguments (without the program name).
/// Throws CLI11 parse errors or ParameterError on bad input.
RunConfig parse_args(const std::vector<std::string>& args);

/// Executes the command, writes the report to out. Returns 0 when every
/// check passes, 1 when any residual exceeds the tolerance, 2 on invalid
/// parameters.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run, mapping parse failures to exit code 2 with usage on err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct VerifySummary {
  std::string family;
  int trials = 0;
  /// Identity name -> largest residual over all trials.
  std::map<std::string, double> max_residuals;
  /// Extra per-family statistics (e.g. smallest CPT scalar).
  std::map<std::string, double> stats;
};

/// Randomized property run for family "rep2", "rep4-12" or "rep4-block".
VerifySummary verify_family(const std::string& family, int trials, std::uint64_t seed);

}  // namespace ptalg::cli
