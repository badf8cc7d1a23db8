#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tsconv/convergence.hpp"
#include "tsconv/measure.hpp"

namespace tsconv {

/// Command parameters from the scenario's `run` section; CLI flags
/// override them.
struct RunParams {
  std::optional<std::string> set;
  std::optional<std::string> function;
  std::optional<double> limit;
  std::optional<std::string> interval;
  std::optional<std::string> kind;
  std::vector<double> eps_grid;
  std::optional<double> t_max;
  double tol_density = 1e-3;
  int n_max = 10;
  bool exhaustive = false;
  std::vector<double> cluster_grid;
};

struct Scenario {
  std::string source;
  TimeScale T = TimeScale::uniform_grid(1, 1);
  SetEnv sets;
  std::map<std::string, MeasurableFn> functions;
  std::string ideal = "density_zero";
  RunParams run;
};

/// Parses "ray:t0", "uniform:t0:step", "geometric:t0:q", "periodic:t0:on:gap".
TimeScale parse_timescale(const std::string& spec);

/// Throws ConfigError with a "source:line:column:" pointer.
Scenario parse_scenario(const std::string& text, const std::string& source = "scenario");
Scenario load_scenario(const std::string& path);

/// Scenario with only a time scale and no named sets or functions.
Scenario bare_scenario(const TimeScale& T);

/// "measure_zero", "density_zero" or "bounded". Throws ConfigError.
Ideal make_ideal(const std::string& name, const TimeScale& T, const IdealOptions& opts = {});

/// "[a,b]", "(a,b)", "[a,b)" or "(a,b]": endpoints and the kind implied by
/// the brackets. Throws ConfigError.
struct IntervalSpec {
  double a;
  double b;
  IntervalKind kind;
};
IntervalSpec parse_interval(const std::string& text);

/// Looks up a named set or function. Throws ConfigError.
const TsSet& scenario_set(const Scenario& s, const std::string& name);
const MeasurableFn& scenario_function(const Scenario& s, const std::string& name);

}  // namespace tsconv
