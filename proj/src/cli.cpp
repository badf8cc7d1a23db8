#include "tsconv/cli.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tsconv/error.hpp"
#include "tsconv/oracle.hpp"
#include "tsconv/props.hpp"
#include "tsconv/scenario.hpp"

namespace tsconv {

namespace {

using json = nlohmann::ordered_json;

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
    } catch (const std::exception&) {
      throw ConfigError("bad number '" + item + "' in --eps-grid");
    }
  }
  if (out.empty()) throw ConfigError("--eps-grid is empty");
  for (double e : out)
    if (!(e > 0)) throw ConfigError("--eps-grid values must be positive");
  return out;
}

json checks_json(const std::vector<EpsCheck>& checks) {
  json a = json::array();
  for (const auto& c : checks)
    a.push_back({{"eps", c.eps}, {"membership", to_string(c.membership)}, {"implied", c.implied},
                 {"reason", c.reason}});
  return a;
}

json verdict_json(const Verdict& v) {
  json j{{"verdict", v.label}, {"limit", v.L}, {"checks", checks_json(v.checks)}, {"notes", v.notes}};
  if (v.witness) j["witness"] = v.witness->key();
  return j;
}

int verdict_exit(const Verdict& v) {
  if (v.label == "Converges" || v.label == "Cauchy") return kExitOk;
  if (v.label == "Diverges" || v.label == "NotCauchy") return kExitDiverges;
  return kExitInconclusive;
}

struct Context {
  Scenario s;
  RunParams p;

  IdealOptions ideal_options() const {
    IdealOptions o;
    o.density.tol = p.tol_density;
    if (p.t_max) {
      const double ratio = *p.t_max / s.T.t0();
      if (!(ratio > 1.0)) throw ConfigError("--t-max must exceed t0");
      o.density.profile.epochs = std::max(8, static_cast<int>(std::ceil(std::log2(ratio))));
    }
    return o;
  }

  Ideal ideal() const { return make_ideal(s.ideal, s.T, ideal_options()); }

  ConvergenceOptions convergence() const {
    ConvergenceOptions c;
    if (!p.eps_grid.empty()) c.eps_grid = p.eps_grid;
    c.exhaustive = p.exhaustive;
    return c;
  }

  const TsSet& set() const {
    if (!p.set) throw ConfigError("no set selected (scenario run.set or --set)");
    return scenario_set(s, *p.set);
  }

  const MeasurableFn& function() const {
    if (!p.function) throw ConfigError("no function selected (scenario run.function or --fn)");
    return scenario_function(s, *p.function);
  }

  double limit() const {
    if (!p.limit) throw ConfigError("no limit given (scenario run.limit or --limit)");
    return *p.limit;
  }
};

Context context(const CliRequest& req) {
  Context c;
  if (req.scenario) {
    c.s = load_scenario(*req.scenario);
  } else {
    c.s = bare_scenario(parse_timescale(req.timescale.value_or("uniform:1:1")));
  }
  if (req.scenario && req.timescale) throw ConfigError("--timescale conflicts with --scenario");
  c.p = c.s.run;
  if (req.set) c.p.set = req.set;
  if (req.function) c.p.function = req.function;
  if (req.ideal) {
    make_ideal(*req.ideal, c.s.T);
    c.s.ideal = *req.ideal;
  }
  if (req.limit) c.p.limit = req.limit;
  if (req.eps_grid) c.p.eps_grid = parse_list(*req.eps_grid);
  if (req.t_max) c.p.t_max = req.t_max;
  if (req.tol_density) {
    if (!(*req.tol_density > 0)) throw ConfigError("--tol-density must be positive");
    c.p.tol_density = *req.tol_density;
  }
  if (req.interval) c.p.interval = req.interval;
  if (req.kind) c.p.kind = req.kind;
  return c;
}

json header(const CliRequest& req, const Context& c) {
  json j{{"command", req.command}, {"scenario", c.s.source}, {"timescale", c.s.T.describe()}};
  return j;
}

int cmd_measure(const CliRequest& req, std::ostream& out) {
  const Context c = context(req);
  json j = header(req, c);
  if (c.p.interval) {
    IntervalSpec iv = parse_interval(*c.p.interval);
    if (c.p.kind) iv.kind = parse_interval_kind(*c.p.kind);
    const MeasureValue m = measure_interval(c.s.T, iv.kind, iv.a, iv.b);
    j["interval"] = {{"a", iv.a}, {"b", iv.b}, {"kind", to_string(iv.kind)}};
    j["value"] = m.value;
    j["provenance"] = m.exact ? "exact" : "estimated";
  } else {
    const double t = c.p.t_max.value_or(1e6);
    const MeasureValue m = measure_set_window(c.set(), t);
    j["set"] = *c.p.set;
    j["window"] = {{"from", c.s.T.t0()}, {"to", t}};
    j["value"] = m.value;
    j["provenance"] = m.exact ? "exact" : "estimated";
  }
  out << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_density(const CliRequest& req, std::ostream& out) {
  const Context c = context(req);
  DensityOptions o = c.ideal_options().density;
  const DensityResult d = density(c.set(), o);
  json j = header(req, c);
  j["set"] = *c.p.set;
  j["parameters"] = {{"tol_density", o.tol}, {"epochs", o.profile.epochs}};
  j["outcome"] = to_string(d.outcome);
  j["value"] = d.value;
  j["halfwidth"] = d.halfwidth;
  j["liminf"] = d.liminf;
  j["limsup"] = d.limsup;
  j["epochs_resolved"] = d.epochs;
  j["provenance"] = d.outcome == DensityResult::Outcome::Exact ? "exact" : "estimated";
  j["note"] = d.note;
  out << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_trace(const CliRequest& req, std::ostream& out) {
  const Context c = context(req);
  const double t_max = c.p.t_max.value_or(1e6);
  const int epochs = std::max(1, static_cast<int>(std::ceil(std::log2(t_max / c.s.T.t0()))));
  std::vector<double> grid;
  for (double t : default_grid(c.s.T, epochs, 8))
    if (t <= t_max) grid.push_back(t);
  const auto tr = density_trace(c.set(), grid);
  json j = header(req, c);
  j["set"] = *c.p.set;
  j["points"] = tr.size();
  std::ostringstream csv;
  csv.precision(17);
  csv << "t,ratio\n";
  for (const auto& p : tr) csv << p.t << "," << p.ratio << "\n";
  if (req.out) {
    std::ofstream f(*req.out);
    if (!f) throw ConfigError("cannot write '" + *req.out + "'");
    f << csv.str();
    j["trace_file"] = *req.out;
    out << j.dump(2) << "\n";
  } else {
    out << csv.str();
  }
  return kExitOk;
}

int cmd_cluster(const CliRequest& req, const Context& c, std::ostream& out) {
  const ClusterResult r = cluster_points(c.function(), c.ideal(), c.p.cluster_grid, c.convergence());
  json j = header(req, c);
  j["mode"] = "cluster";
  j["function"] = *c.p.function;
  j["ideal"] = c.s.ideal;
  json pts = json::array();
  for (const auto& p : r.points) pts.push_back({{"L", p.L}, {"checks", checks_json(p.evidence)}});
  j["cluster_points"] = pts;
  j["inconclusive"] = r.inconclusive;
  out << j.dump(2) << "\n";
  if (!r.points.empty()) return kExitOk;
  return r.inconclusive.empty() ? kExitDiverges : kExitInconclusive;
}

int cmd_converge(const CliRequest& req, std::ostream& out) {
  const Context c = context(req);
  const std::string& mode = req.command == "cluster" ? std::string("cluster") : req.mode;
  if (mode == "cluster") return cmd_cluster(req, c, out);
  const MeasurableFn& f = c.function();
  const ConvergenceOptions opts = c.convergence();
  json j = header(req, c);
  j["mode"] = mode;
  j["function"] = *c.p.function;
  j["function_expr"] = f.to_string();
  Verdict v;
  if (mode == "stat") {
    j["ideal"] = "density_zero";
    v = statistical_converges(f, c.limit(), opts, c.ideal_options());
  } else {
    j["ideal"] = c.s.ideal;
    const Ideal I = c.ideal();
    if (mode == "i") {
      v = i_converges(f, c.limit(), I, opts);
    } else if (mode == "istar") {
      std::optional<TsSet> M;
      if (c.p.set) M = c.set();
      v = i_star_converges(f, c.limit(), I, M, opts);
    } else if (mode == "cauchy") {
      v = i_cauchy(f, I, opts, c.p.limit);
    } else if (mode == "bap") {
      const BapResult r = bap_transfer(f, c.limit(), I, c.p.n_max, opts);
      v = r.verdict;
      j["M"] = r.M.key();
      j["pieces"] = r.A.size();
    } else {
      throw ConfigError("unknown mode '" + mode + "' (i, istar, stat, cauchy, cluster, bap)");
    }
  }
  j["parameters"] = {{"eps_grid", opts.eps_grid}, {"tol_density", c.p.tol_density}, {"exhaustive", opts.exhaustive}};
  j.update(verdict_json(v));
  out << j.dump(2) << "\n";
  return verdict_exit(v);
}

int cmd_selftest(const CliRequest& req, std::ostream& out) {
  const TimeScale Z = TimeScale::uniform_grid(1, 1);
  const std::int64_t N = 100000;
  json checks = json::array();
  bool all = true;
  auto record = [&](const std::string& name, bool ok, json detail) {
    all = all && ok;
    checks.push_back({{"check", name}, {"pass", ok}, {"detail", std::move(detail)}});
  };

  std::vector<double> grid;
  for (std::int64_t n = 1; n <= N; ++n) grid.push_back(static_cast<double>(n));
  const std::pair<const char*, TsSet> sets[] = {
      {"evens", TsSet::pattern(Z, GridPattern::multiples(2, 0))},
      {"squares", TsSet::pattern(Z, GridPattern::squares())},
      {"blocks", TsSet::pattern(Z, GridPattern::blocks(3, 7))},
  };
  for (const auto& [name, S] : sets) {
    const auto tr = density_trace(S, grid);
    const auto ratios = oracle::partial_densities(oracle::index_set(S, N), N);
    std::int64_t mismatches = 0;
    for (std::int64_t n = 1; n <= N; ++n) {
      const auto& r = ratios[static_cast<std::size_t>(n - 1)];
      if (tr[static_cast<std::size_t>(n - 1)].ratio !=
          static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()))
        ++mismatches;
    }
    record(std::string("trace_vs_counting_") + name, mismatches == 0, {{"N", N}, {"mismatches", mismatches}});
  }

  for (const auto& [name, S] : {sets[0], sets[1]}) {
    const MeasurableFn f = MeasurableFn::indicator(S, name);
    const auto seq = oracle::sequence_view(f, N);
    const auto brute = oracle::statistical_limit_bruteforce(seq.values, 0, 0.5, N);
    const Verdict v = statistical_converges(f, 0);
    const bool agree = (v.outcome == Outcome::Converges) == brute.converges && v.outcome != Outcome::Inconclusive;
    record(std::string("statistical_vs_bruteforce_") + name, agree,
           {{"verdict", v.label}, {"bruteforce", brute.converges}});
  }

  const MeasureValue m = measure_interval(Z, IntervalKind::Closed, 2, 5);
  record("closed_interval_measure", m.value == 4.0, {{"value", m.value}});

  json j{{"command", req.command}, {"checks", checks}, {"status", all ? "pass" : "fail"}};
  out << j.dump(2) << "\n";
  return all ? kExitOk : kExitDiverges;
}

int cmd_props(const CliRequest& req, std::ostream& out) {
  PropsOptions o;
  o.seed = req.seed;
  if (req.eps_grid) o.convergence.eps_grid = parse_list(*req.eps_grid);
  const PropsReport r = run_props(o);
  json matrix = json::array();
  json failures = json::array();
  for (const auto& row : r.rows) {
    matrix.push_back({{"property", row.property},
                      {"passed", row.passed},
                      {"violations", row.violations},
                      {"inconclusive", row.inconclusive},
                      {"status", row.violations == 0 ? "pass" : "fail"}});
    for (const auto& c : row.cases) {
      if (c.status == "pass") continue;
      failures.push_back({{"property", row.property},
                          {"status", c.status},
                          {"scale", c.scale},
                          {"ideal", c.ideal},
                          {"subject", c.subject},
                          {"detail", c.detail}});
    }
  }
  json j{{"command", "props"},
         {"seed", r.seed},
         {"corpus", {{"functions", r.functions}, {"scales", r.scales}, {"ideals", r.ideals}}},
         {"matrix", matrix},
         {"cases", r.total_cases()},
         {"violations", r.total_violations()},
         {"inconclusive", r.total_inconclusive()},
         {"inconclusive_rate", r.inconclusive_rate()},
         {"not_passed", failures},
         {"status", r.passed() ? "pass" : "fail"}};
  out << j.dump(2) << "\n";
  return r.passed() ? kExitOk : kExitDiverges;
}

}  // namespace

int run_command(const CliRequest& req, std::ostream& out) {
  try {
    if (req.command == "measure") return cmd_measure(req, out);
    if (req.command == "density") return cmd_density(req, out);
    if (req.command == "trace") return cmd_trace(req, out);
    if (req.command == "converge" || req.command == "cluster") return cmd_converge(req, out);
    if (req.command == "selftest") return cmd_selftest(req, out);
    if (req.command == "props") return cmd_props(req, out);
    throw ConfigError("unknown command '" + req.command + "'");
  } catch (const ConfigError& e) {
    out << json{{"command", req.command}, {"error", "ConfigError"}, {"message", e.what()}}.dump(2) << "\n";
    return kExitConfig;
  } catch (const ParseError& e) {
    out << json{{"command", req.command}, {"error", "ParseError"}, {"message", e.what()}}.dump(2) << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    out << json{{"command", req.command}, {"error", "RuntimeError"}, {"message", e.what()}}.dump(2) << "\n";
    return kExitRuntime;
  }
}

}  // namespace tsconv
