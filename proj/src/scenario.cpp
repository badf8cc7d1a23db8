#include "tsconv/scenario.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "tsconv/error.hpp"

namespace tsconv {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

double to_number(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad number '" + s + "' in " + what);
  }
}

class Loader {
 public:
  explicit Loader(std::string source) : source_(std::move(source)) {}

  Scenario load(const YAML::Node& root) {
    if (!root.IsMap()) fail(root, "scenario must be a mapping");
    for (const auto& kv : root) {
      const auto key = kv.first.as<std::string>();
      if (key != "timescale" && key != "sets" && key != "functions" && key != "ideal" && key != "run")
        fail(kv.first, "unknown section '" + key + "'");
    }
    Scenario s;
    s.source = source_;
    if (!root["timescale"]) fail(root, "missing 'timescale'");
    s.T = timescale(root["timescale"]);
    if (const auto sets = root["sets"]) {
      if (!sets.IsMap()) fail(sets, "'sets' must be a mapping");
      for (const auto& kv : sets) raw_sets_.emplace(kv.first.as<std::string>(), kv.second);
      for (const auto& kv : sets) resolve_set(s, kv.first.as<std::string>(), kv.first);
    }
    if (const auto fns = root["functions"]) {
      if (!fns.IsMap()) fail(fns, "'functions' must be a mapping");
      for (const auto& kv : fns) {
        const auto name = kv.first.as<std::string>();
        try {
          s.functions.emplace(name, MeasurableFn::parse(s.T, scalar(kv.second, "function"), s.sets));
        } catch (const Error& e) {
          fail(kv.second, "function '" + name + "': " + e.what());
        }
      }
    }
    if (const auto ideal = root["ideal"]) {
      s.ideal = ideal.IsMap() ? scalar(ideal["kind"], "ideal kind") : scalar(ideal, "ideal");
      try {
        make_ideal(s.ideal, s.T);
      } catch (const Error& e) {
        fail(ideal, e.what());
      }
    }
    if (const auto run = root["run"]) params(s, run);
    return s;
  }

 private:
  [[noreturn]] void fail(const YAML::Node& at, const std::string& msg) const {
    const auto m = at.Mark();
    std::string where = source_;
    if (!m.is_null()) where += ":" + std::to_string(m.line + 1) + ":" + std::to_string(m.column + 1);
    throw ConfigError(where + ": " + msg);
  }

  std::string scalar(const YAML::Node& n, const std::string& what) const {
    if (!n || !n.IsScalar()) fail(n ? n : YAML::Node(), "expected a value for " + what);
    return n.as<std::string>();
  }

  double number(const YAML::Node& n, const std::string& what) const {
    const std::string s = scalar(n, what);
    try {
      return to_number(s, what);
    } catch (const ConfigError& e) {
      fail(n, e.what());
    }
  }

  std::int64_t integer(const YAML::Node& n, const std::string& what) const {
    const double v = number(n, what);
    if (v != static_cast<double>(static_cast<std::int64_t>(v))) fail(n, what + " must be an integer");
    return static_cast<std::int64_t>(v);
  }

  std::vector<double> numbers(const YAML::Node& n, const std::string& what) const {
    if (!n.IsSequence()) fail(n, what + " must be a list");
    std::vector<double> out;
    for (const auto& x : n) out.push_back(number(x, what));
    return out;
  }

  double field(const YAML::Node& n, const char* key, double fallback) const {
    return n[key] ? number(n[key], key) : fallback;
  }

  TimeScale timescale(const YAML::Node& n) const {
    if (n.IsScalar()) {
      try {
        return parse_timescale(n.as<std::string>());
      } catch (const Error& e) {
        fail(n, e.what());
      }
    }
    if (!n.IsMap()) fail(n, "timescale must be a mapping or a spec string");
    const std::string kind = scalar(n["kind"], "timescale kind");
    const double t0 = field(n, "t0", 1.0);
    try {
      if (kind == "continuous_ray") return TimeScale::continuous_ray(t0);
      if (kind == "uniform_grid") return TimeScale::uniform_grid(t0, field(n, "step", 1.0));
      if (kind == "geometric_grid") return TimeScale::geometric_grid(t0, field(n, "ratio", 2.0));
      if (kind == "periodic_pattern")
        return TimeScale::periodic_pattern(t0, field(n, "on", 1.0), field(n, "gap", 1.0));
      if (kind == "hybrid") {
        std::vector<Component> pieces;
        if (const auto p = n["pieces"]) {
          if (!p.IsSequence()) fail(p, "pieces must be a list");
          for (const auto& c : p) {
            const auto v = numbers(c, "piece");
            if (v.size() == 1 || (v.size() == 2 && v[0] == v[1])) {
              pieces.push_back(Component::point(v[0]));
            } else if (v.size() == 2) {
              pieces.push_back(Component::interval(v[0], v[1]));
            } else {
              fail(c, "a piece is [x] or [lo, hi]");
            }
          }
        }
        if (!n["tail"]) fail(n, "hybrid timescale needs a 'tail'");
        return TimeScale::hybrid(pieces, timescale(n["tail"]));
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      fail(n, e.what());
    }
    fail(n["kind"], "unknown timescale kind '" + kind + "'");
  }

  const TsSet& resolve_set(Scenario& s, const std::string& name, const YAML::Node& at) {
    if (auto it = s.sets.find(name); it != s.sets.end()) return it->second;
    const auto raw = raw_sets_.find(name);
    if (raw == raw_sets_.end()) fail(at, "unknown set '" + name + "'");
    if (!active_.insert(name).second) fail(at, "set '" + name + "' refers to itself");
    TsSet value = build_set(s, raw->second);
    active_.erase(name);
    return s.sets.emplace(name, std::move(value)).first->second;
  }

  std::vector<TsSet> operands(Scenario& s, const YAML::Node& n) {
    if (!n.IsSequence() || n.size() < 2) fail(n, "expected a list of at least two set names");
    std::vector<TsSet> out;
    for (const auto& x : n) out.push_back(resolve_set(s, scalar(x, "set name"), x));
    return out;
  }

  TsSet build_set(Scenario& s, const YAML::Node& n) {
    const TimeScale& T = s.T;
    if (!n.IsMap()) fail(n, "a set is a mapping such as {pattern: squares}");
    try {
      if (const auto p = n["pattern"]) {
        const std::string kind = scalar(p, "pattern");
        const std::int64_t shift = n["shift"] ? integer(n["shift"], "shift") : 1;
        if (kind == "squares") return TsSet::pattern(T, GridPattern::squares(shift));
        if (kind == "cubes") return TsSet::pattern(T, GridPattern::cubes(shift));
        if (kind == "multiples")
          return TsSet::pattern(T, GridPattern::multiples(integer(n["modulus"], "modulus"),
                                                          n["residue"] ? integer(n["residue"], "residue") : 0,
                                                          shift));
        if (kind == "blocks")
          return TsSet::pattern(T, GridPattern::blocks(integer(n["on"], "on"), integer(n["off"], "off"), shift));
        fail(p, "unknown pattern '" + kind + "' (squares, cubes, multiples, blocks)");
      }
      if (const auto idx = n["indices"]) {
        std::vector<std::int64_t> v;
        if (!idx.IsSequence()) fail(idx, "indices must be a list");
        for (const auto& x : idx) v.push_back(integer(x, "index"));
        const std::int64_t shift = n["shift"] ? integer(n["shift"], "shift") : 1;
        return TsSet::pattern(T, GridPattern::index_list(std::move(v), shift));
      }
      if (const auto pts = n["points"]) return TsSet::points(T, numbers(pts, "points"));
      if (const auto r = n["range"]) {
        const auto v = numbers(r, "range");
        if (v.size() != 2) fail(r, "range is [lo, hi]");
        bool lo_closed = true, hi_closed = true;
        if (const auto c = n["closed"]) {
          if (!c.IsSequence() || c.size() != 2) fail(c, "closed is [bool, bool]");
          lo_closed = c[0].as<bool>();
          hi_closed = c[1].as<bool>();
        }
        return TsSet::range(T, v[0], v[1], lo_closed, hi_closed);
      }
      if (const auto r = n["ray"]) return TsSet::ray(T, number(r, "ray"));
      if (const auto b = n["blocks"]) {
        if (!b.IsMap()) fail(b, "blocks is {start, period, width}");
        return TsSet::blocks(T, number(b["start"], "start"), number(b["period"], "period"),
                             number(b["width"], "width"));
      }
      if (const auto q = n["sequence"]) {
        PointSequence seq;
        const std::string kind = scalar(q, "sequence");
        if (kind == "power") {
          seq.base = field(n, "base", 2.0);
        } else if (kind == "polynomial") {
          seq.kind = PointSequence::Kind::Polynomial;
          seq.exponent = n["exponent"] ? integer(n["exponent"], "exponent") : 2;
        } else {
          fail(q, "unknown sequence '" + kind + "' (power, polynomial)");
        }
        seq.scale = field(n, "scale", 1.0);
        return TsSet::sequence(T, seq);
      }
      if (const auto e = n["expr"]) {
        const MeasurableFn f = MeasurableFn::parse(T, scalar(e, "expr"), s.sets);
        const double L = field(n, "limit", 0.0);
        if (!n["eps"]) fail(n, "expression set needs 'eps'");
        const TsSet A = exceedance(f, L, number(n["eps"], "eps"));
        return n["near"] && n["near"].as<bool>() ? A.complement() : A;
      }
      if (const auto u = n["union"]) {
        auto parts = operands(s, u);
        TsSet acc = parts.front();
        for (std::size_t i = 1; i < parts.size(); ++i) acc = acc | parts[i];
        return acc;
      }
      if (const auto u = n["intersection"]) {
        auto parts = operands(s, u);
        TsSet acc = parts.front();
        for (std::size_t i = 1; i < parts.size(); ++i) acc = acc & parts[i];
        return acc;
      }
      if (const auto u = n["difference"]) {
        auto parts = operands(s, u);
        if (parts.size() != 2) fail(u, "difference takes two sets");
        return parts[0] - parts[1];
      }
      if (const auto c = n["complement"]) return resolve_set(s, scalar(c, "set name"), c).complement();
      if (n["empty"]) return TsSet::empty(T);
      if (n["whole"]) return TsSet::whole(T);
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      fail(n, e.what());
    } catch (const YAML::Exception& e) {
      fail(n, e.what());
    }
    fail(n, "unknown set form");
  }

  void params(Scenario& s, const YAML::Node& run) const {
    if (!run.IsMap()) fail(run, "'run' must be a mapping");
    RunParams& p = s.run;
    for (const auto& kv : run) {
      const auto key = kv.first.as<std::string>();
      const YAML::Node& v = kv.second;
      if (key == "set") {
        p.set = scalar(v, key);
        if (!s.sets.count(*p.set)) fail(v, "unknown set '" + *p.set + "'");
      } else if (key == "function") {
        p.function = scalar(v, key);
        if (!s.functions.count(*p.function)) fail(v, "unknown function '" + *p.function + "'");
      } else if (key == "limit") {
        p.limit = number(v, key);
      } else if (key == "interval") {
        p.interval = scalar(v, key);
        try {
          parse_interval(*p.interval);
        } catch (const Error& e) {
          fail(v, e.what());
        }
      } else if (key == "kind") {
        p.kind = scalar(v, key);
        try {
          parse_interval_kind(*p.kind);
        } catch (const Error& e) {
          fail(v, e.what());
        }
      } else if (key == "eps_grid") {
        p.eps_grid = numbers(v, key);
        for (double e : p.eps_grid)
          if (!(e > 0)) fail(v, "eps_grid values must be positive");
      } else if (key == "t_max") {
        p.t_max = number(v, key);
      } else if (key == "tol_density") {
        p.tol_density = number(v, key);
        if (!(p.tol_density > 0)) fail(v, "tol_density must be positive");
      } else if (key == "n_max") {
        p.n_max = static_cast<int>(integer(v, key));
      } else if (key == "exhaustive") {
        p.exhaustive = v.as<bool>();
      } else if (key == "cluster_grid") {
        p.cluster_grid = numbers(v, key);
      } else {
        fail(kv.first, "unknown run parameter '" + key + "'");
      }
    }
  }

  std::string source_;
  std::map<std::string, YAML::Node> raw_sets_;
  std::set<std::string> active_;
};

}  // namespace

TimeScale parse_timescale(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.empty()) throw ConfigError("empty timescale spec");
  std::vector<double> v;
  for (std::size_t i = 1; i < parts.size(); ++i) v.push_back(to_number(parts[i], "timescale '" + spec + "'"));
  auto need = [&](std::size_t n) {
    if (v.size() != n)
      throw ConfigError("timescale '" + spec + "' needs " + std::to_string(n) + " numbers after '" + parts[0] + "'");
  };
  const std::string& kind = parts[0];
  if (kind == "ray") {
    need(1);
    return TimeScale::continuous_ray(v[0]);
  }
  if (kind == "uniform") {
    need(2);
    return TimeScale::uniform_grid(v[0], v[1]);
  }
  if (kind == "geometric") {
    need(2);
    return TimeScale::geometric_grid(v[0], v[1]);
  }
  if (kind == "periodic") {
    need(3);
    return TimeScale::periodic_pattern(v[0], v[1], v[2]);
  }
  throw ConfigError("unknown timescale '" + kind + "' (ray, uniform, geometric, periodic)");
}

Scenario parse_scenario(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ":" + std::to_string(e.mark.column + 1) +
                      ": " + e.msg);
  }
  return Loader(source).load(root);
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open scenario");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path);
}

Scenario bare_scenario(const TimeScale& T) {
  Scenario s;
  s.source = "(command line)";
  s.T = T;
  return s;
}

Ideal make_ideal(const std::string& name, const TimeScale& T, const IdealOptions& opts) {
  if (name == "measure_zero") return measure_zero_ideal(T, opts);
  if (name == "density_zero") return density_zero_ideal(T, opts);
  if (name == "bounded") return bounded_ideal(T, opts);
  throw ConfigError("unknown ideal '" + name + "' (measure_zero, density_zero, bounded)");
}

IntervalSpec parse_interval(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.size() < 5) throw ConfigError("bad interval '" + text + "'");
  const char open = t.front(), close = t.back();
  if ((open != '[' && open != '(') || (close != ']' && close != ')'))
    throw ConfigError("interval '" + text + "' must start with [ or ( and end with ] or )");
  const auto parts = split(t.substr(1, t.size() - 2), ',');
  if (parts.size() != 2) throw ConfigError("interval '" + text + "' needs two endpoints");
  IntervalSpec s{to_number(parts[0], "interval"), to_number(parts[1], "interval"), IntervalKind::Closed};
  if (open == '[' && close == ')') s.kind = IntervalKind::HalfOpenLR;
  if (open == '(' && close == ']') s.kind = IntervalKind::HalfOpenRL;
  if (open == '(' && close == ')') s.kind = IntervalKind::Open;
  return s;
}

const TsSet& scenario_set(const Scenario& s, const std::string& name) {
  auto it = s.sets.find(name);
  if (it == s.sets.end()) throw ConfigError(s.source + ": unknown set '" + name + "'");
  return it->second;
}

const MeasurableFn& scenario_function(const Scenario& s, const std::string& name) {
  auto it = s.functions.find(name);
  if (it == s.functions.end()) throw ConfigError(s.source + ": unknown function '" + name + "'");
  return it->second;
}

}  // namespace tsconv
