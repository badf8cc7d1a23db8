#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include "tsconv/expr.hpp"

namespace tsconv::oracle {

using Rational = boost::rational<std::int64_t>;
/// 1-based indices k into the grid t0 + (k−1)h, ascending.
using IndexSet = std::vector<std::int64_t>;

/// x_k = f(t0 + (k−1)h) for k = 1..N, stored at values[k−1].
struct SequenceView {
  double t0 = 1.0;
  double h = 1.0;
  std::vector<double> values;
};

/// Throws ScaleMismatch unless f lives on a UniformGrid.
SequenceView sequence_view(const MeasurableFn& f, std::int64_t N);

/// Indices k ≤ N whose grid point lies in S. S must live on a UniformGrid.
IndexSet index_set(const TsSet& S, std::int64_t N);

/// {k ≤ N : |x_k − L| ≥ eps}.
IndexSet exceedance_indices(const std::vector<double>& values, double L, double eps);

/// |indices ∩ [1, N]| / N. Throws InvalidWindow if N < 1.
Rational partial_density(const IndexSet& indices, std::int64_t N);

/// partial_density(indices, n) for n = 1..N, at position n−1.
std::vector<Rational> partial_densities(const IndexSet& indices, std::int64_t N);

struct Checkpoint {
  std::int64_t n;
  Rational ratio;
};

struct BruteforceResult {
  bool converges = false;
  Rational final_ratio{0};
  /// N/8, N/4, N/2, N.
  std::vector<Checkpoint> trace;
};

/// True iff the exceedance ratio is at most tol at every n in [N/8, N].
BruteforceResult statistical_limit_bruteforce(const std::vector<double>& values, double L, double eps,
                                              std::int64_t N, double tol = 1e-2);

/// Ideal on subsets of {1..N}, judged from the index set alone.
using SequenceIdeal = std::function<bool(const IndexSet&, std::int64_t N)>;

/// Finite sets: nothing beyond N/2.
SequenceIdeal finite_sequence_ideal();
/// Density zero: statistical_limit_bruteforce's tail test.
SequenceIdeal density_zero_sequence_ideal(double tol = 1e-2);

/// Every A(ε) = {k : |x_k − L| ≥ ε} is in I, for ε in eps_grid.
bool sequence_i_converges(const std::vector<double>& values, double L, const std::vector<double>& eps_grid,
                          const SequenceIdeal& I);

/// Along M (with complement in I), no index beyond N/2 exceeds any ε.
bool sequence_i_star_converges(const std::vector<double>& values, double L, const IndexSet& M,
                               const std::vector<double>& eps_grid, const SequenceIdeal& I);

/// Σ (σ(t_n) − t_n) over grid indices n (0-based) in [0, N) as an exact
/// rational; for geometric grids where counting does not apply.
boost::multiprecision::cpp_rational summed_measure(const TimeScale& T, const std::vector<std::int64_t>& n, std::int64_t N);

}  // namespace tsconv::oracle
