#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "tsconv/error.hpp"
#include "tsconv/props.hpp"

namespace tsconv {

const std::vector<std::string>& property_names() {
  static const std::vector<std::string> names{"uniqueness",       "linearity",      "istar_implies_i",
                                              "continuity",       "squeeze",        "i_implies_cauchy",
                                              "cauchy_cluster",   "bap_roundtrip"};
  return names;
}

int PropsReport::total_cases() const {
  int n = 0;
  for (const auto& r : rows) n += r.passed + r.violations + r.inconclusive;
  return n;
}

int PropsReport::total_inconclusive() const {
  int n = 0;
  for (const auto& r : rows) n += r.inconclusive;
  return n;
}

int PropsReport::total_violations() const {
  int n = 0;
  for (const auto& r : rows) n += r.violations;
  return n;
}

double PropsReport::inconclusive_rate() const {
  const int n = total_cases();
  return n == 0 ? 0.0 : static_cast<double>(total_inconclusive()) / n;
}

namespace {

enum Prop { Uniqueness, Linearity, IStarImpliesI, Continuity, Squeeze, IImpliesCauchy, CauchyCluster, BapRoundtrip };

struct Outer {
  const char* text;
  double (*apply)(double);
};

const Outer kOuters[] = {
    {"t^2", [](double x) { return x * x; }},
    {"2*t + 1", [](double x) { return 2 * x + 1; }},
    {"sin(t)", [](double x) { return std::sin(x); }},
    {"abs(t)", [](double x) { return std::abs(x); }},
    {"exp(t)", [](double x) { return std::exp(x); }},
};

struct Unit {
  std::size_t scale;
  std::size_t ideal;
  std::size_t fn;
  std::size_t partner;
  std::size_t outer;
};

struct Result {
  Prop prop;
  PropertyCase pc;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

class Runner {
 public:
  Runner(const TimeScale& T, const Ideal& I, const SetEnv& env, const ConvergenceOptions& opts)
      : T_(T), I_(I), env_(env), opts_(opts) {}

  void run(const Unit& u, std::vector<Result>& out) {
    const auto& entries = corpus();
    const CorpusEntry& e = entries[u.fn];
    const MeasurableFn f = MeasurableFn::parse(T_, e.expr, env_);
    auto add = [&](Prop p, std::string subject, std::string status, std::string detail) {
      out.push_back({p, {T_.describe(), I_.name(), std::move(subject), std::move(status), std::move(detail)}});
    };

    // Candidate verdicts.
    std::vector<double> cands = e.candidates;
    for (double c : {0.0, 1.0})
      if (std::find(cands.begin(), cands.end(), c) == cands.end()) cands.push_back(c);
    std::optional<double> limit;
    std::vector<double> converged;
    int inconclusive = 0;
    std::string why;
    for (double L : cands) {
      const Outcome o = converges(f, L, why);
      if (o == Outcome::Converges) converged.push_back(L);
      if (o == Outcome::Inconclusive) ++inconclusive;
    }
    if (!converged.empty()) limit = converged.front();
    const bool undecided = !limit && inconclusive > 0;
    const double min_eps = *std::min_element(opts_.eps_grid.begin(), opts_.eps_grid.end());

    // Uniqueness.
    {
      bool bad = false;
      for (std::size_t i = 0; i < converged.size(); ++i)
        for (std::size_t j = i + 1; j < converged.size(); ++j)
          bad = bad || std::abs(converged[i] - converged[j]) > 2 * min_eps;
      if (bad)
        add(Uniqueness, e.name, "violation", "several limits");
      else if (inconclusive == static_cast<int>(cands.size()))
        add(Uniqueness, e.name, "inconclusive", why);
      else
        add(Uniqueness, e.name, "pass", limit ? "limit " + fmt(*limit) : "no limit among candidates");
    }

    // Linearity.
    {
      const CorpusEntry& pe = entries[u.partner];
      const std::string subject = e.name + "," + pe.name;
      const MeasurableFn g = MeasurableFn::parse(T_, pe.expr, env_);
      std::optional<double> glimit;
      bool gundecided = false;
      for (double M : pe.candidates) {
        const Outcome o = converges(g, M, why);
        if (o == Outcome::Converges) {
          glimit = M;
          break;
        }
        if (o == Outcome::Inconclusive) gundecided = true;
      }
      if (limit && glimit) {
        const Outcome a = converges(f + g, *limit + *glimit, why);
        const Outcome m = converges(f * g, *limit * *glimit, why);
        if (a == Outcome::Diverges || m == Outcome::Diverges)
          add(Linearity, subject, "violation", a == Outcome::Diverges ? "sum diverges" : "product diverges");
        else if (a == Outcome::Inconclusive || m == Outcome::Inconclusive)
          add(Linearity, subject, "inconclusive", why);
        else
          add(Linearity, subject, "pass", "sum " + fmt(*limit + *glimit) + ", product " + fmt(*limit * *glimit));
      } else if (undecided || (!glimit && gundecided)) {
        add(Linearity, subject, "inconclusive", "premise undecided");
      }
    }

    // I* implies I.
    if (I_.flags().b_admissible && !e.candidates.empty()) {
      const double L = limit.value_or(e.candidates.front());
      const Outcome s = guarded([&] { return i_star_converges(f, L, I_, {}, opts_); }, why);
      if (s == Outcome::Converges) {
        const Outcome o = converges(f, L, why);
        if (o == Outcome::Converges)
          add(IStarImpliesI, e.name, "pass", "limit " + fmt(L));
        else
          add(IStarImpliesI, e.name, o == Outcome::Diverges ? "violation" : "inconclusive", why);
      } else if (s == Outcome::Inconclusive && (limit || undecided)) {
        add(IStarImpliesI, e.name, "inconclusive", why);
      }
    }

    // Continuity.
    if (limit) {
      const Outer& g = kOuters[u.outer];
      const MeasurableFn h = compose(parse_expr(g.text, {}), f);
      const Outcome o = converges(h, g.apply(*limit), why);
      add(Continuity, e.name + " in " + g.text, status_of(o), "limit " + fmt(g.apply(*limit)));
    } else if (undecided) {
      add(Continuity, e.name, "inconclusive", "premise undecided");
    }

    // Squeeze.
    if (limit) {
      const MeasurableFn band = MeasurableFn::parse(T_, "1/t");
      const MeasurableFn wiggle = MeasurableFn::parse(T_, "sin(t)/(t + 1)");
      const Outcome lo = converges(f - band, *limit, why);
      const Outcome hi = converges(f + band, *limit, why);
      if (lo == Outcome::Converges && hi == Outcome::Converges) {
        const Outcome mid = converges(f + wiggle, *limit, why);
        add(Squeeze, e.name, status_of(mid), "limit " + fmt(*limit));
      } else if (lo == Outcome::Inconclusive || hi == Outcome::Inconclusive) {
        add(Squeeze, e.name, "inconclusive", why);
      }
    } else if (undecided) {
      add(Squeeze, e.name, "inconclusive", "premise undecided");
    }

    // I implies Cauchy.
    std::optional<Verdict> cauchy;
    if (limit) {
      cauchy = cauchy_of(f, limit);
      add(IImpliesCauchy, e.name, cauchy_status(*cauchy), cauchy->label);
    } else if (undecided) {
      add(IImpliesCauchy, e.name, "inconclusive", "premise undecided");
    }

    // Cauchy and a cluster point imply convergence.
    {
      if (!cauchy) cauchy = cauchy_of(f, {});
      if (cauchy->label == "Cauchy") {
        std::vector<double> grid = cands;
        try {
          const auto [lo, hi] = observed_range(f);
          const int steps = 32;
          for (int k = 0; k <= steps; ++k) grid.push_back(lo + (hi - lo) * k / steps);
          std::sort(grid.begin(), grid.end());
          grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
          const ClusterResult cl = cluster_points(f, I_, grid, opts_);
          if (cl.points.empty()) {
            if (!cl.inconclusive.empty()) add(CauchyCluster, e.name, "inconclusive", "cluster scan undecided");
          } else {
            bool any = false, open = false;
            for (const auto& p : cl.points) {
              const Outcome o = converges(f, p.L, why);
              any = any || o == Outcome::Converges;
              open = open || o == Outcome::Inconclusive;
            }
            add(CauchyCluster, e.name, any ? "pass" : (open ? "inconclusive" : "violation"),
                "cluster " + fmt(cl.points.front().L));
          }
        } catch (const Error& ex) {
          add(CauchyCluster, e.name, "inconclusive", ex.what());
        }
      } else if (cauchy->label == "Inconclusive") {
        add(CauchyCluster, e.name, "inconclusive", "cauchy undecided");
      }
    }

    // BAP round trip.
    if (I_.flags().bap && limit) {
      try {
        const BapResult r = bap_transfer(f, *limit, I_, 8, opts_);
        const Membership co = bounded_ideal(T_).membership(r.M.complement());
        if (r.verdict.outcome == Outcome::Converges && co == Membership::In)
          add(BapRoundtrip, e.name, "pass", "limit " + fmt(*limit));
        else if (r.verdict.outcome == Outcome::Diverges || co == Membership::NotIn)
          add(BapRoundtrip, e.name, "violation", "M fails");
        else
          add(BapRoundtrip, e.name, "inconclusive", "M undecided");
      } catch (const Error& ex) {
        add(BapRoundtrip, e.name, "violation", ex.what());
      }
    }
  }

 private:
  template <class F>
  static Outcome guarded(F&& fn, std::string& why) {
    try {
      const Verdict v = fn();
      if (v.outcome == Outcome::Inconclusive) {
        why = v.notes.empty() ? "" : v.notes.front();
        for (const auto& c : v.checks)
          if (!c.implied && c.membership == Membership::Unknown) why = c.reason;
      }
      return v.outcome;
    } catch (const Error& ex) {
      why = ex.what();
      return Outcome::Inconclusive;
    }
  }

  Outcome converges(const MeasurableFn& f, double L, std::string& why) {
    return guarded([&] { return i_converges(f, L, I_, opts_); }, why);
  }

  Verdict cauchy_of(const MeasurableFn& f, std::optional<double> hint) {
    try {
      return i_cauchy(f, I_, opts_, hint);
    } catch (const Error& ex) {
      Verdict v;
      v.notes.push_back(ex.what());
      return v;
    }
  }

  static std::string status_of(Outcome o) {
    return o == Outcome::Converges ? "pass" : o == Outcome::Diverges ? "violation" : "inconclusive";
  }

  static std::string cauchy_status(const Verdict& v) {
    return v.label == "Cauchy" ? "pass" : v.label == "NotCauchy" ? "violation" : "inconclusive";
  }

  const TimeScale& T_;
  const Ideal& I_;
  const SetEnv& env_;
  const ConvergenceOptions& opts_;
};

}  // namespace

PropsReport run_props(const PropsOptions& opts) {
  const auto scales = corpus_scales();
  const auto& entries = corpus();
  std::vector<SetEnv> envs;
  std::vector<std::vector<Ideal>> ideals;
  for (const auto& T : scales) {
    envs.push_back(corpus_sets(T));
    ideals.push_back(corpus_ideals(T));
  }

  std::mt19937_64 rng(opts.seed);
  std::vector<Unit> units;
  for (std::size_t s = 0; s < scales.size(); ++s)
    for (std::size_t i = 0; i < ideals[s].size(); ++i)
      for (std::size_t f = 0; f < entries.size(); ++f) {
        const std::size_t partner = (f + 1 + rng() % (entries.size() - 1)) % entries.size();
        const std::size_t outer = rng() % std::size(kOuters);
        units.push_back({s, i, f, partner, outer});
      }

  std::vector<std::vector<Result>> results(units.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < units.size(); k = next++) {
      const Unit& u = units[k];
      Runner(scales[u.scale], ideals[u.scale][u.ideal], envs[u.scale], opts.convergence).run(u, results[k]);
    }
  };
  const int n = std::max(1, std::min<int>(opts.threads > 0 ? opts.threads : worker_count(),
                                          static_cast<int>(units.size())));
  std::vector<std::thread> pool;
  for (int k = 1; k < n; ++k) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  PropsReport report;
  report.seed = opts.seed;
  report.functions = static_cast<int>(entries.size());
  report.scales = static_cast<int>(scales.size());
  report.ideals = static_cast<int>(ideals.front().size());
  for (const auto& name : property_names()) report.rows.push_back({name, 0, 0, 0, {}});
  for (auto& list : results)
    for (auto& r : list) {
      PropertyRow& row = report.rows[static_cast<std::size_t>(r.prop)];
      if (r.pc.status == "pass") ++row.passed;
      else if (r.pc.status == "violation") ++row.violations;
      else ++row.inconclusive;
      row.cases.push_back(std::move(r.pc));
    }
  return report;
}

}  // namespace tsconv
