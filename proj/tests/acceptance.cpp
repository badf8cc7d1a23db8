#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "tsconv/convergence.hpp"
#include "tsconv/density.hpp"
#include "tsconv/measure.hpp"
#include "tsconv/oracle.hpp"
#include "tsconv/props.hpp"

using namespace tsconv;
using Q = boost::multiprecision::cpp_rational;

namespace {

struct Check {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(const std::string& name, double limit_s, const std::function<Check()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Check r{false, ""};
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (s >= limit_s) {
    r.pass = false;
    r.detail += "; runtime over " + std::to_string(static_cast<int>(limit_s)) + " s";
  }
  if (!r.pass) ++failures;
  std::printf("%s  %-32s %s (%.2f s)\n", r.pass ? "PASS" : "FAIL", name.c_str(), r.detail.c_str(), s);
  std::fflush(stdout);
}

// σ on the two test scales, in exact arithmetic.
Q sigma_uniform(const Q& x) { return x + 1; }
Q sigma_geometric(const Q& x) { return 2 * x; }

Q expected_measure(IntervalKind k, const Q& a, const Q& b, Q (*sigma)(const Q&)) {
  if (a == b) return k == IntervalKind::Closed ? sigma(a) - a : Q(0);
  switch (k) {
    case IntervalKind::HalfOpenLR: return b - a;
    case IntervalKind::Closed: return sigma(b) - a;
    case IntervalKind::Open: return b - sigma(a);
    case IntervalKind::HalfOpenRL: return sigma(b) - sigma(a);
  }
  return Q(-1);
}

Check measure_formulas() {
  std::mt19937_64 rng(2024);
  const TimeScale Z = TimeScale::uniform_grid(1, 1);
  const TimeScale G = TimeScale::geometric_grid(1, 2);
  const IntervalKind kinds[] = {IntervalKind::Open, IntervalKind::HalfOpenLR, IntervalKind::HalfOpenRL,
                                IntervalKind::Closed};
  int checked = 0, bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const bool geo = i % 2 == 1;
    double a, b;
    if (geo) {
      auto x = static_cast<int>(rng() % 53), y = static_cast<int>(rng() % 53);
      if (x > y) std::swap(x, y);
      a = std::ldexp(1.0, x);
      b = std::ldexp(1.0, y);
    } else {
      auto x = 1 + rng() % 1000000000, y = 1 + rng() % 1000000000;
      if (x > y) std::swap(x, y);
      a = static_cast<double>(x);
      b = static_cast<double>(y);
    }
    for (auto k : kinds) {
      const MeasureValue m = measure_interval(geo ? G : Z, k, a, b);
      const Q want = expected_measure(k, Q(a), Q(b), geo ? sigma_geometric : sigma_uniform);
      ++checked;
      if (!m.exact || Q(m.value) != want) {
        if (std::getenv("ACCEPTANCE_VERBOSE"))
          std::cerr << (geo ? "geo " : "Z ") << static_cast<int>(k) << " " << a << " " << b << " got " << m.value
                    << " want " << want << "\n";
        ++bad;
      }
    }
  }
  return {bad == 0, std::to_string(checked) + " measures, " + std::to_string(bad) + " mismatches"};
}

Check density_oracle() {
  const std::int64_t N = 1000000;
  const TimeScale Z = TimeScale::uniform_grid(1, 1);
  std::vector<char> composite(static_cast<std::size_t>(N + 1), 0);
  std::vector<std::int64_t> primes;
  for (std::int64_t n = 2; n <= N; ++n) {
    if (composite[static_cast<std::size_t>(n)]) continue;
    primes.push_back(n);
    for (std::int64_t m = n * n; m <= N; m += n) composite[static_cast<std::size_t>(m)] = 1;
  }
  struct Case {
    const char* name;
    TsSet S;
    std::function<bool(std::int64_t)> member;
  };
  std::vector<Case> cases{
      {"evens", TsSet::pattern(Z, GridPattern::multiples(2, 0)), [](std::int64_t n) { return n % 2 == 0; }},
      {"squares", TsSet::pattern(Z, GridPattern::squares()),
       [](std::int64_t n) {
         auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
         while (r * r > n) --r;
         while ((r + 1) * (r + 1) <= n) ++r;
         return r * r == n;
       }},
      {"primes", TsSet::pattern(Z, GridPattern::index_list(primes)),
       [&](std::int64_t n) { return n >= 2 && !composite[static_cast<std::size_t>(n)]; }},
      {"blocks", TsSet::blocks(Z, 1, 10, 2), [](std::int64_t n) { return (n - 1) % 10 <= 2; }},
  };
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(N));
  for (std::int64_t n = 1; n <= N; ++n) grid.push_back(static_cast<double>(n));
  std::ostringstream detail;
  bool ok = true;
  for (const auto& c : cases) {
    oracle::IndexSet idx;
    for (std::int64_t n = 1; n <= N; ++n)
      if (c.member(n)) idx.push_back(n);
    const auto want = oracle::partial_densities(idx, N);
    const auto got = density_trace(c.S, grid);
    std::int64_t bad = 0;
    for (std::int64_t n = 1; n <= N; ++n) {
      const auto& r = want[static_cast<std::size_t>(n - 1)];
      const double ratio = got[static_cast<std::size_t>(n - 1)].ratio;
      // Distinct fractions over n round to distinct doubles, so this comparison is exact.
      const double count = static_cast<double>(r.numerator()) * static_cast<double>(n / r.denominator());
      if (ratio != count / static_cast<double>(n)) ++bad;
    }
    ok = ok && bad == 0;
    detail << c.name << ":" << bad << " ";
  }
  return {ok, "N=1e6 mismatches " + detail.str()};
}

Check geometric_no_density() {
  const TimeScale G = TimeScale::geometric_grid(1, 2);
  const TsSet S = TsSet::pattern(G, GridPattern::multiples(2, 0, 0));
  const DensityResult d = density(S);
  // Summation oracle at a late epoch.
  const std::int64_t N = 40;
  std::vector<std::int64_t> even;
  for (std::int64_t n = 0; n < N; n += 2) even.push_back(n);
  const Q total = Q(std::ldexp(1.0, N)) - 1;
  const Q low = oracle::summed_measure(G, even, N) / total;
  even.push_back(N);
  const Q high = oracle::summed_measure(G, even, N + 1) / (Q(std::ldexp(1.0, N + 1)) - 1);
  const double lo = static_cast<double>(low), hi = static_cast<double>(high);
  const bool ok = d.outcome == DensityResult::Outcome::DoesNotExist && std::abs(d.liminf - 1.0 / 3) <= 0.02 &&
                  std::abs(d.limsup - 2.0 / 3) <= 0.02 && std::abs(d.liminf - lo) <= 0.02 &&
                  std::abs(d.limsup - hi) <= 0.02;
  std::ostringstream os;
  os << to_string(d.outcome) << " liminf " << d.liminf << " limsup " << d.limsup << " (oracle " << lo << ", "
     << hi << ")";
  return {ok, os.str()};
}

Check statistical_desk() {
  const std::int64_t N = 1000000;
  const TimeScale Z = TimeScale::uniform_grid(1, 1);
  const MeasurableFn sq = MeasurableFn::indicator(TsSet::pattern(Z, GridPattern::squares()), "squares");
  const MeasurableFn ev = MeasurableFn::indicator(TsSet::pattern(Z, GridPattern::multiples(2, 0)), "evens");
  const Verdict vs = statistical_converges(sq, 0);
  const Verdict ve = statistical_converges(ev, 0);
  const auto bs = oracle::statistical_limit_bruteforce(oracle::sequence_view(sq, N).values, 0, 0.5, N);
  const auto be = oracle::statistical_limit_bruteforce(oracle::sequence_view(ev, N).values, 0, 0.5, N);
  const bool ok = vs.outcome == Outcome::Converges && vs.L == 0 && ve.outcome == Outcome::Diverges &&
                  bs.converges && !be.converges && bs.final_ratio == oracle::Rational(1, 1000);
  std::ostringstream os;
  os << "squares " << vs.label << " (oracle ratio " << bs.final_ratio << "), evens " << ve.label << " (oracle ratio "
     << be.final_ratio << ")";
  return {ok, os.str()};
}

Check property_suite() {
  const PropsReport r = run_props({});
  std::ostringstream os;
  os << r.functions << " functions x " << r.scales << " scales x " << r.ideals << " ideals, " << r.total_cases()
     << " cases, " << r.total_violations() << " violations, inconclusive " << r.total_inconclusive() << " ("
     << 100.0 * r.inconclusive_rate() << "%)";
  const bool ok = r.functions >= 20 && r.scales >= 3 && r.ideals >= 3 && r.passed();
  return {ok, os.str()};
}

Check bap_transfer_check() {
  const TimeScale R = TimeScale::continuous_ray(1);
  const Ideal B = bounded_ideal(R);
  const MeasurableFn f = MeasurableFn::parse(R, "1/t");
  const BapResult r = bap_transfer(f, 0, B, 10);
  const bool co_bounded = B.membership(r.M.complement()) == Membership::In;
  const Verdict v = classical_limit_on(f, r.M, 0);
  int sym_ok = 0;
  for (std::size_t j = 0; j < r.A.size(); ++j) {
    const TsSet sym = (r.A[j] - r.B[j]) | (r.B[j] - r.A[j]);
    if (B.membership(sym) == Membership::In) ++sym_ok;
  }
  const bool ok = co_bounded && v.outcome == Outcome::Converges && v.L == 0 &&
                  sym_ok == static_cast<int>(r.A.size()) && r.A.size() == 10;
  std::ostringstream os;
  os << "complement of M bounded: " << (co_bounded ? "yes" : "no") << ", classical limit " << v.label << ", "
     << sym_ok << "/" << r.A.size() << " symmetric differences bounded";
  return {ok, os.str()};
}

Check ideal_axioms() {
  const TimeScale R = TimeScale::continuous_ray(1);
  const auto samples = sample_sets(R, 50, 7);
  std::ostringstream os;
  bool ok = true;
  for (const auto& I : corpus_ideals(R)) {
    const AxiomReport a = check_ideal_axioms(I, samples);
    ok = ok && a.passed;
    os << I.name() << " " << (a.passed ? "pass" : "fail") << " (" << a.checks << " checks, " << a.unknown
       << " unknown) ";
  }
  const TsSet g1 = TsSet::range(R, 1, 10), g2 = TsSet::range(R, 20, 30);
  const AxiomReport fake = check_ideal_axioms(fake_non_ideal(R, g1, g2, 100), {g1, g2, TsSet::range(R, 2, 3)}, 100);
  const bool flagged = !fake.passed && !fake.violations.empty();
  ok = ok && flagged;
  os << "| non-ideal flagged: " << (flagged ? fake.violations.front().axiom : "no");
  return {ok, os.str()};
}

Check determinism(const std::string& cli) {
  if (cli.empty()) return {false, "path to the tsconv binary not given"};
  const std::string a = "props_seed42_a.json", b = "props_seed42_b.json";
  for (const auto& out : {a, b}) {
    const std::string cmd = "\"" + cli + "\" props --seed 42 > " + out;
    const int rc = std::system(cmd.c_str());
    if (rc == -1) return {false, "could not run " + cli};
  }
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string x = slurp(a), y = slurp(b);
  const bool ok = !x.empty() && x == y;
  return {ok, std::to_string(x.size()) + " bytes, " + (ok ? "identical" : "different")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  criterion("measure formulas", 1, measure_formulas);
  criterion("density oracle agreement", 10, density_oracle);
  criterion("non-existent density", 5, geometric_no_density);
  criterion("statistical desk check", 10, statistical_desk);
  criterion("property suite", 120, property_suite);
  criterion("BAP constructive transfer", 1, bap_transfer_check);
  criterion("ideal axioms", 30, ideal_axioms);
  criterion("determinism", 600, [&] { return determinism(cli); });
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
