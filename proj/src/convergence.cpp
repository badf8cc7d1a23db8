#include "tsconv/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "tsconv/numeric.hpp"

namespace tsconv {

namespace {

using Test = std::function<MembershipDetail(double eps)>;

std::vector<double> sorted_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw PreconditionFailed("eps grid is empty");
  for (double e : grid) {
    if (!(e > 0.0)) throw PreconditionFailed("eps values must be positive");
  }
  std::vector<double> g = grid;
  std::sort(g.begin(), g.end(), std::greater<>());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

MembershipDetail guarded(const Test& test, double eps, std::vector<std::string>& notes) {
  try {
    return test(eps);
  } catch (const BoundedRestriction&) {
    throw;
  } catch (const Error& e) {
    notes.push_back("eps " + format_number(eps) + ": " + e.what());
    return {Membership::Unknown, e.what()};
  }
}

// Sets tested against `good` shrink as ε grows, so a good result at ε also
// holds for every larger ε; a bad result at any ε decides the verdict.
Verdict sweep(const std::vector<double>& grid_in, const Test& test, bool exhaustive) {
  const std::vector<double> grid = sorted_grid(grid_in);
  Verdict v;
  std::vector<EpsCheck> checks(grid.size());
  std::vector<bool> done(grid.size(), false);
  auto run = [&](std::size_t i) {
    const MembershipDetail d = guarded(test, grid[i], v.notes);
    checks[i] = {grid[i], d.value, false, d.reason};
    done[i] = true;
    return d.value;
  };
  auto imply_above = [&](std::size_t i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (!done[j]) {
        checks[j] = {grid[j], Membership::In, true, "implied by eps " + format_number(grid[i])};
        done[j] = true;
      }
    }
  };
  bool bad = false;
  if (exhaustive) {
    for (std::size_t i = 0; i < grid.size(); ++i) bad = (run(i) == Membership::NotIn) || bad;
  } else {
    for (std::size_t k = grid.size(); k-- > 0;) {
      const Membership m = run(k);
      if (m == Membership::NotIn) {
        bad = true;
        break;
      }
      if (m == Membership::In) {
        imply_above(k);
        break;
      }
    }
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (done[i]) v.checks.push_back(checks[i]);
  }
  const bool all_in = v.checks.size() == grid.size() &&
                      std::all_of(v.checks.begin(), v.checks.end(),
                                  [](const EpsCheck& c) { return c.membership == Membership::In; });
  v.outcome = bad ? Outcome::Diverges : all_in ? Outcome::Converges : Outcome::Inconclusive;
  v.label = to_string(v.outcome);
  return v;
}

Ideal bounded_on(const TimeScale& T) { return bounded_ideal(T); }

}  // namespace

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Converges:
      return "Converges";
    case Outcome::Diverges:
      return "Diverges";
    case Outcome::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

std::vector<double> default_eps_grid() {
  std::vector<double> g;
  for (int k = 0; k <= 12; ++k) g.push_back(std::ldexp(1.0, -k));
  return g;
}

Verdict i_converges(const MeasurableFn& f, double L, const Ideal& I, const ConvergenceOptions& opts) {
  require_same_scale(I.scale(), f.scale(), "i_converges");
  Verdict v = sweep(
      opts.eps_grid, [&](double eps) { return I.explain(exceedance(f, L, eps, opts.resolver)); }, opts.exhaustive);
  v.L = L;
  return v;
}

Verdict statistical_converges(const MeasurableFn& f, double L, const ConvergenceOptions& opts,
                              const IdealOptions& iopts) {
  return i_converges(f, L, density_zero_ideal(f.scale(), iopts), opts);
}

Verdict classical_limit_on(const MeasurableFn& f, const TsSet& M, double L, const ConvergenceOptions& opts) {
  require_same_scale(f.scale(), M.scale(), "classical_limit_on");
  const Ideal B = bounded_on(f.scale());
  if (B.membership(M) == Membership::In) throw BoundedRestriction("the restriction set is bounded");
  Verdict v = sweep(
      opts.eps_grid, [&](double eps) { return B.explain(exceedance(f, L, eps, opts.resolver) & M); },
      opts.exhaustive);
  v.L = L;
  v.witness = M;
  return v;
}

Verdict i_star_converges(const MeasurableFn& f, double L, const Ideal& I, const std::optional<TsSet>& M,
                         const ConvergenceOptions& opts) {
  require_same_scale(I.scale(), f.scale(), "i_star_converges");
  const TimeScale& T = f.scale();
  Verdict out;
  out.L = L;
  std::optional<TsSet> candidate = M;
  if (!candidate) {
    const Verdict iv = i_converges(f, L, I, opts);
    if (iv.outcome == Outcome::Diverges && I.flags().b_admissible) {
      out.outcome = Outcome::Diverges;
      out.label = to_string(out.outcome);
      out.checks = iv.checks;
      out.notes.push_back("not I-convergent to L, and I* implies I for B-admissible ideals");
      return out;
    }
    const double eps_min = sorted_grid(opts.eps_grid).back();
    try {
      candidate = exceedance(f, L, eps_min, opts.resolver).complement();
    } catch (const Error& e) {
      out.notes.push_back(e.what());
      return out;
    }
    out.notes.push_back("candidate M = T minus A(" + format_number(eps_min) + ")");
  }
  require_same_scale(T, candidate->scale(), "i_star_converges");
  out.witness = candidate;
  const Membership fm = FilterView(I).in_filter(*candidate);
  if (fm != Membership::In) {
    out.notes.push_back("M in F(I): " + to_string(fm));
    return out;
  }
  try {
    const Verdict c = classical_limit_on(f, *candidate, L, opts);
    out.checks = c.checks;
    out.notes.insert(out.notes.end(), c.notes.begin(), c.notes.end());
    if (c.outcome == Outcome::Converges) {
      out.outcome = Outcome::Converges;
    } else {
      out.notes.push_back("classical limit along M: " + to_string(c.outcome));
    }
  } catch (const BoundedRestriction& e) {
    out.notes.push_back(e.what());
  }
  out.label = to_string(out.outcome);
  return out;
}

Verdict i_cauchy(const MeasurableFn& f, const Ideal& I, const ConvergenceOptions& opts, std::optional<double> hint) {
  require_same_scale(I.scale(), f.scale(), "i_cauchy");
  const TimeScale& T = f.scale();
  struct Anchor {
    double t;
    double value;
  };
  std::vector<Anchor> pool;
  for (double t : default_grid(T)) {
    if (t <= T.t0()) continue;
    try {
      pool.push_back({t, f.eval(t)});
    } catch (const DomainError&) {
    }
  }
  auto test = [&](double eps) -> MembershipDetail {
    std::vector<Anchor> order = pool;
    std::stable_sort(order.begin(), order.end(), [&](const Anchor& a, const Anchor& b) {
      if (hint) {
        const bool na = std::abs(a.value - *hint) < eps / 2;
        const bool nb = std::abs(b.value - *hint) < eps / 2;
        if (na != nb) return na;
      }
      return a.t > b.t;
    });
    std::vector<double> seen;
    int tried = 0;
    bool unknown = false;
    for (const auto& a : order) {
      if (tried >= opts.cauchy_candidates) break;
      if (std::find(seen.begin(), seen.end(), a.value) != seen.end()) continue;
      seen.push_back(a.value);
      ++tried;
      const Membership m = I.membership(exceedance(f, a.value, eps, opts.resolver));
      if (m == Membership::In) return {Membership::In, "anchor t1 = " + format_number(a.t)};
      if (m == Membership::Unknown) unknown = true;
    }
    if (unknown) return {Membership::Unknown, "no anchor confirmed among " + std::to_string(tried)};
    return {Membership::NotIn, "no anchor among " + std::to_string(tried) + " sampled values"};
  };
  Verdict v = sweep(opts.eps_grid, test, opts.exhaustive);
  if (v.outcome == Outcome::Converges) v.label = "Cauchy";
  if (v.outcome == Outcome::Diverges) v.label = "NotCauchy";
  if (hint) v.L = *hint;
  return v;
}

std::pair<double, double> observed_range(const MeasurableFn& f) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double t : default_grid(f.scale())) {
    try {
      const double v = f.eval(t);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    } catch (const DomainError&) {
    }
  }
  if (lo > hi) throw DomainError("f is undefined on every sampled point");
  return {lo, hi};
}

ClusterResult cluster_points(const MeasurableFn& f, const Ideal& I, std::vector<double> L_grid,
                             const ConvergenceOptions& opts) {
  require_same_scale(I.scale(), f.scale(), "cluster_points");
  if (L_grid.empty()) {
    const auto [lo, hi] = observed_range(f);
    const int steps = lo == hi ? 0 : std::max(opts.cluster_steps, 1);
    for (int i = 0; i <= steps; ++i) L_grid.push_back(steps == 0 ? lo : lo + (hi - lo) * i / steps);
  }
  const std::vector<double> grid = sorted_grid(opts.eps_grid);
  ClusterResult out;
  for (double L : L_grid) {
    // Near-sets grow with ε, so NotIn at the smallest ε covers the rest.
    std::vector<EpsCheck> evidence;
    bool cluster = true;
    bool unknown = false;
    const std::size_t first = opts.exhaustive ? 0 : grid.size() - 1;
    for (std::size_t i = grid.size(); i-- > first;) {
      MembershipDetail d;
      try {
        d = I.explain(exceedance(f, L, grid[i], opts.resolver).complement());
      } catch (const Error& e) {
        d = {Membership::Unknown, e.what()};
      }
      evidence.push_back({grid[i], d.value, false, d.reason});
      if (d.value == Membership::In) cluster = false;
      if (d.value == Membership::Unknown) unknown = true;
      if (!cluster) break;
    }
    if (cluster && unknown) {
      out.inconclusive.push_back(L);
      continue;
    }
    if (!cluster) continue;
    for (std::size_t i = 0; i < first; ++i) {
      evidence.push_back({grid[i], Membership::NotIn, true, "implied by eps " + format_number(grid.back())});
    }
    out.points.push_back({L, std::move(evidence)});
  }
  return out;
}

BapResult bap_transfer(const MeasurableFn& f, double L, const Ideal& I, int n_max, const ConvergenceOptions& opts) {
  require_same_scale(I.scale(), f.scale(), "bap_transfer");
  if (!I.flags().bap || !I.bap_witness()) throw PreconditionFailed("ideal " + I.name() + " carries no BAP witness");
  if (n_max < 2) throw PreconditionFailed("n_max must be at least 2");
  const Verdict iv = i_converges(f, L, I, opts);
  if (iv.outcome != Outcome::Converges) {
    throw PreconditionFailed("f is not I-convergent to " + format_number(L) + " (" + iv.label + ")");
  }
  const TimeScale& T = f.scale();
  std::vector<TsSet> A;
  TsSet prev = exceedance(f, L, 1.0, opts.resolver);
  A.push_back(prev);
  for (int n = 2; n <= n_max; ++n) {
    TsSet cur = exceedance(f, L, 1.0 / n, opts.resolver);
    A.push_back(cur - prev);
    prev = cur;
  }
  const std::vector<TsSet> B = I.bap_witness()(A);
  if (B.size() != A.size()) throw WitnessFailure("witness returned a family of the wrong size");
  const Ideal bounded = bounded_on(T);
  TsSet union_b = TsSet::empty(T);
  for (std::size_t j = 0; j < A.size(); ++j) {
    const TsSet sym = (A[j] - B[j]) | (B[j] - A[j]);
    const Membership m = bounded.membership(sym);
    if (m != Membership::In) {
      throw WitnessFailure("A_" + std::to_string(j + 1) + " symmetric difference B_" + std::to_string(j + 1) +
                           " is not shown bounded (" + to_string(m) + ")");
    }
    union_b = union_b | B[j];
  }
  TsSet M = union_b.complement();
  if (FilterView(I).in_filter(M) != Membership::In) throw WitnessFailure("T minus the union of B_j is not in F(I)");
  Verdict v = classical_limit_on(f, M, L, opts);
  return {M, std::move(v), std::move(A), std::move(B)};
}

}  // namespace tsconv
