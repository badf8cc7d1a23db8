#include <iostream>

#include "CLI11.hpp"
#include "tsconv/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"tsconv: measure, density and ideal convergence on time scales"};
  app.require_subcommand(1);
  tsconv::CliRequest req;

  auto common = [&](CLI::App* c) {
    c->add_option("--scenario", req.scenario, "Scenario file (YAML)");
    c->add_option("--timescale", req.timescale, "ray:t0 | uniform:t0:h | geometric:t0:q | periodic:t0:on:gap");
    c->add_option("--set", req.set, "Named set from the scenario");
    c->add_option("--fn", req.function, "Named function from the scenario");
    c->add_option("--ideal", req.ideal, "measure_zero | density_zero | bounded");
    c->add_option("--limit", req.limit, "Candidate limit L");
    c->add_option("--eps-grid", req.eps_grid, "Comma-separated epsilon values");
    c->add_option("--t-max", req.t_max, "Horizon for windows, traces and profiles");
    c->add_option("--tol-density", req.tol_density, "Density tolerance");
    c->add_option("--seed", req.seed, "Seed for randomized commands");
  };

  auto* measure = app.add_subcommand("measure", "Delta-measure of an interval or of a set window");
  common(measure);
  measure->add_option("--interval", req.interval, "Interval such as \"[2,5]\"");
  measure->add_option("--kind", req.kind, "open | closed | half_open_lr | half_open_rl");
  common(app.add_subcommand("density", "Density of a set"));
  auto* trace = app.add_subcommand("trace", "Density ratio trace as CSV t,ratio");
  common(trace);
  trace->add_option("--out", req.out, "CSV output path");
  auto* converge = app.add_subcommand("converge", "Convergence verdict for a function");
  common(converge);
  converge->add_option("--mode", req.mode, "i | istar | stat | cauchy | cluster | bap")
      ->check(CLI::IsMember({"i", "istar", "stat", "cauchy", "cluster", "bap"}));
  common(app.add_subcommand("cluster", "Cluster points of a function"));
  common(app.add_subcommand("selftest", "Oracle agreement checks"));
  common(app.add_subcommand("props", "Property suite over the built-in corpus"));

  CLI11_PARSE(app, argc, argv);
  req.command = app.get_subcommands().front()->get_name();
  return tsconv::run_command(req, std::cout);
}
