#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "tsconv/cli.hpp"
#include "tsconv/error.hpp"
#include "tsconv/scenario.hpp"

using namespace tsconv;
using json = nlohmann::json;

namespace {

std::pair<int, json> run(CliRequest req) {
  std::ostringstream os;
  const int code = run_command(req, os);
  return {code, json::parse(os.str())};
}

const char* kScenario = R"yaml(
timescale: {kind: uniform_grid, t0: 1, step: 1}
sets:
  squares: {pattern: squares}
  evens: {pattern: multiples, modulus: 2}
  both: {union: [squares, evens]}
functions:
  sq: "ind(squares)"
  ev: "ind(evens)"
ideal: density_zero
run:
  function: sq
  limit: 0
  set: evens
)yaml";

}  // namespace

TEST_CASE("scenario parsing") {
  const Scenario s = parse_scenario(kScenario, "inline");
  CHECK(s.T == TimeScale::uniform_grid(1, 1));
  CHECK(s.sets.size() == 3);
  CHECK(s.functions.count("ev") == 1);
  CHECK(s.run.limit == 0.0);
  CHECK(scenario_set(s, "both").contains(4));
  CHECK_FALSE(scenario_set(s, "both").contains(3));
  CHECK_THROWS_AS(scenario_set(s, "nope"), ConfigError);
}

TEST_CASE("scenario errors carry a line pointer") {
  try {
    parse_scenario("timescale: {kind: uniform_grid}\nsets:\n  a: {union: [a, a]}\n", "x.yaml");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).rfind("x.yaml:3:", 0) == 0);
  }
  CHECK_THROWS_AS(parse_scenario("timescale: {kind: nope}\n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("timescale: {kind: ray}\nextra: 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("timescale: {kind: uniform_grid}\nrun: {eps_grid: [0]}\n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("timescale: {kind: uniform_grid}\nfunctions: {f: \"ind(q)\"}\n"), ConfigError);
}

TEST_CASE("timescale and interval specs") {
  CHECK(parse_timescale("periodic:1:1:1") == TimeScale::periodic_pattern(1, 1, 1));
  CHECK_THROWS_AS(parse_timescale("uniform:1"), ConfigError);
  const auto iv = parse_interval("(2, 5]");
  CHECK(iv.a == 2);
  CHECK(iv.b == 5);
  CHECK(iv.kind == IntervalKind::HalfOpenRL);
  CHECK_THROWS_AS(parse_interval("2,5"), ConfigError);
}

TEST_CASE("cli examples") {
  CliRequest m;
  m.command = "measure";
  m.interval = "[2,5]";
  m.kind = "closed";
  auto [mc, mj] = run(m);
  CHECK(mc == 0);
  CHECK(mj["value"] == 4.0);

  const std::string path = "cli_test_scenario.yaml";
  {
    std::ofstream f(path);
    f << kScenario;
  }
  CliRequest c;
  c.command = "converge";
  c.scenario = path;
  c.mode = "stat";
  auto [cc, cj] = run(c);
  CHECK(cc == 0);
  CHECK(cj["verdict"] == "Converges");
  CHECK(cj["limit"] == 0.0);

  c.function = "ev";
  CHECK(run(c).first == 1);

  CliRequest d;
  d.command = "density";
  d.scenario = path;
  auto [dc, dj] = run(d);
  CHECK(dc == 0);
  CHECK(dj["value"] == 0.5);
  CHECK(dj["halfwidth"].get<double>() <= 1e-3);

  CliRequest bad;
  bad.command = "converge";
  bad.scenario = path;
  bad.function = "missing";
  CHECK(run(bad).first == kExitConfig);

  CliRequest t = d;
  t.command = "trace";
  t.t_max = 100;
  t.out = "cli_test_trace.csv";
  CHECK(run(t).first == 0);
  std::ifstream csv(*t.out);
  std::string head;
  std::getline(csv, head);
  CHECK(head == "t,ratio");
}

TEST_CASE("report is deterministic") {
  const std::string path = "cli_test_determinism.yaml";
  {
    std::ofstream f(path);
    f << kScenario;
  }
  CliRequest c;
  c.command = "cluster";
  c.scenario = path;
  c.function = "ev";
  std::ostringstream a, b;
  CHECK(run_command(c, a) == 0);
  run_command(c, b);
  CHECK(a.str() == b.str());
}
