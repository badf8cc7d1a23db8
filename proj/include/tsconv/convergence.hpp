#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsconv/exceed.hpp"
#include "tsconv/ideal.hpp"

namespace tsconv {

enum class Outcome { Converges, Diverges, Inconclusive };

std::string to_string(Outcome o);

/// Membership of one ε-set. `implied` marks results that follow from a
/// tested ε by heredity instead of being evaluated.
struct EpsCheck {
  double eps = 0.0;
  Membership membership = Membership::Unknown;
  bool implied = false;
  std::string reason;
};

struct Verdict {
  Outcome outcome = Outcome::Inconclusive;
  double L = 0.0;
  /// "Converges", "Diverges", "Inconclusive", or "Cauchy", "NotCauchy".
  std::string label = "Inconclusive";
  std::vector<EpsCheck> checks;
  std::vector<std::string> notes;
  std::optional<TsSet> witness;
};

/// 2^0, 2^-1, ..., 2^-12.
std::vector<double> default_eps_grid();

struct ConvergenceOptions {
  std::vector<double> eps_grid = default_eps_grid();
  /// Test every ε directly instead of stopping at the smallest.
  bool exhaustive = false;
  ResolverOptions resolver;
  int cauchy_candidates = 64;
  int cluster_steps = 256;
};

/// Is every A(ε) = {t : |f(t) − L| ≥ ε} in I? The time scale is I's.
Verdict i_converges(const MeasurableFn& f, double L, const Ideal& I, const ConvergenceOptions& opts = {});

/// i_converges with the density-zero ideal.
Verdict statistical_converges(const MeasurableFn& f, double L, const ConvergenceOptions& opts = {},
                              const IdealOptions& iopts = {});

/// Ordinary limit along M: every A(ε) ∩ M is bounded. Throws
/// BoundedRestriction when M is bounded.
Verdict classical_limit_on(const MeasurableFn& f, const TsSet& M, double L, const ConvergenceOptions& opts = {});

/// Is there M ∈ F(I) with f → L along M? Without M the candidate
/// T ∖ A(ε_min) is tried.
Verdict i_star_converges(const MeasurableFn& f, double L, const Ideal& I, const std::optional<TsSet>& M = {},
                         const ConvergenceOptions& opts = {});

/// For each ε, searches anchors t1 > t0 with {t : |f(t) − f(t1)| ≥ ε} ∈ I.
/// `hint` is a candidate limit used to rank anchors.
Verdict i_cauchy(const MeasurableFn& f, const Ideal& I, const ConvergenceOptions& opts = {},
                 std::optional<double> hint = {});

struct ClusterPoint {
  double L;
  std::vector<EpsCheck> evidence;
};

struct ClusterResult {
  std::vector<ClusterPoint> points;
  std::vector<double> inconclusive;
};

/// Values L whose near-sets {t : |f(t) − L| < ε} are not in I. An empty
/// L_grid spans the observed range of f in cluster_steps steps.
ClusterResult cluster_points(const MeasurableFn& f, const Ideal& I, std::vector<double> L_grid = {},
                             const ConvergenceOptions& opts = {});

/// Observed [min, max] of f over the default sampling grid.
std::pair<double, double> observed_range(const MeasurableFn& f);

struct BapResult {
  TsSet M;
  Verdict verdict;
  std::vector<TsSet> A;
  std::vector<TsSet> B;
};

/// Builds A_1 = A(1), A_n = A(1/n) ∖ A(1/(n−1)), applies I's witness, checks
/// each A_j Δ B_j is bounded, and returns M = T ∖ ∪B_j with the classical
/// limit verdict on M. Throws PreconditionFailed or WitnessFailure.
BapResult bap_transfer(const MeasurableFn& f, double L, const Ideal& I, int n_max,
                       const ConvergenceOptions& opts = {});

}  // namespace tsconv
