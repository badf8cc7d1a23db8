#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace tsconv {

struct CliRequest {
  std::string command;
  std::optional<std::string> scenario;
  std::optional<std::string> timescale;
  std::optional<std::string> set;
  std::optional<std::string> function;
  std::optional<std::string> ideal;
  std::optional<double> limit;
  std::string mode = "i";
  std::optional<std::string> eps_grid;
  std::optional<double> t_max;
  std::optional<double> tol_density;
  std::optional<std::string> out;
  std::uint64_t seed = 42;
  std::optional<std::string> interval;
  std::optional<std::string> kind;
};

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDiverges = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitConfig = 3;
inline constexpr int kExitRuntime = 4;

/// Runs one command and writes its JSON report to `out`. Errors are
/// reported as {"error": ...} with exit code 3 (configuration) or 4.
int run_command(const CliRequest& req, std::ostream& out);

}  // namespace tsconv
