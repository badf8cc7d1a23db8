#include "tsconv/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "tsconv/error.hpp"

namespace tsconv::oracle {

namespace {

void require_uniform(const TimeScale& T, const char* what) {
  if (T.kind() != TimeScale::Kind::UniformGrid)
    throw ScaleMismatch(std::string(what) + ": oracle needs a UniformGrid");
}

}  // namespace

SequenceView sequence_view(const MeasurableFn& f, std::int64_t N) {
  const TimeScale& T = f.scale();
  require_uniform(T, "sequence_view");
  if (N < 1) throw InvalidWindow("sequence_view: N must be at least 1");
  SequenceView v;
  v.t0 = T.t0();
  v.h = T.element(1) - T.element(0);
  v.values.reserve(static_cast<std::size_t>(N));
  for (std::int64_t k = 0; k < N; ++k) v.values.push_back(f.eval(T.element(k)));
  return v;
}

IndexSet index_set(const TsSet& S, std::int64_t N) {
  const TimeScale& T = S.scale();
  require_uniform(T, "index_set");
  IndexSet out;
  for (std::int64_t k = 0; k < N; ++k)
    if (S.contains(T.element(k))) out.push_back(k + 1);
  return out;
}

IndexSet exceedance_indices(const std::vector<double>& values, double L, double eps) {
  IndexSet out;
  for (std::size_t k = 0; k < values.size(); ++k)
    if (std::abs(values[k] - L) >= eps) out.push_back(static_cast<std::int64_t>(k) + 1);
  return out;
}

Rational partial_density(const IndexSet& indices, std::int64_t N) {
  if (N < 1) throw InvalidWindow("partial_density: N must be at least 1");
  const auto count = std::upper_bound(indices.begin(), indices.end(), N) -
                     std::lower_bound(indices.begin(), indices.end(), std::int64_t{1});
  return Rational(static_cast<std::int64_t>(count), N);
}

std::vector<Rational> partial_densities(const IndexSet& indices, std::int64_t N) {
  if (N < 1) throw InvalidWindow("partial_densities: N must be at least 1");
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(N));
  std::int64_t count = 0;
  auto it = std::lower_bound(indices.begin(), indices.end(), std::int64_t{1});
  for (std::int64_t n = 1; n <= N; ++n) {
    while (it != indices.end() && *it == n) {
      ++count;
      ++it;
    }
    out.emplace_back(count, n);
  }
  return out;
}

BruteforceResult statistical_limit_bruteforce(const std::vector<double>& values, double L, double eps,
                                              std::int64_t N, double tol) {
  if (N < 1) throw InvalidWindow("statistical_limit_bruteforce: N must be at least 1");
  if (static_cast<std::int64_t>(values.size()) < N)
    throw InvalidWindow("statistical_limit_bruteforce: fewer than N values");
  BruteforceResult r;
  r.converges = true;
  const std::int64_t from = std::max<std::int64_t>(1, N / 8);
  std::int64_t count = 0;
  std::int64_t next = from;
  for (std::int64_t n = 1; n <= N; ++n) {
    if (std::abs(values[static_cast<std::size_t>(n - 1)] - L) >= eps) ++count;
    if (n < from) continue;
    if (static_cast<double>(count) > tol * static_cast<double>(n)) r.converges = false;
    if (n == next || n == N) {
      r.trace.push_back({n, Rational(count, n)});
      next *= 2;
    }
  }
  r.final_ratio = Rational(count, N);
  return r;
}

SequenceIdeal finite_sequence_ideal() {
  return [](const IndexSet& A, std::int64_t N) { return A.empty() || A.back() <= N / 2; };
}

SequenceIdeal density_zero_sequence_ideal(double tol) {
  return [tol](const IndexSet& A, std::int64_t N) {
    const std::int64_t from = std::max<std::int64_t>(1, N / 8);
    std::int64_t count = 0;
    auto it = A.begin();
    for (std::int64_t n = 1; n <= N; ++n) {
      while (it != A.end() && *it == n) {
        ++count;
        ++it;
      }
      if (n >= from && static_cast<double>(count) > tol * static_cast<double>(n)) return false;
    }
    return true;
  };
}

bool sequence_i_converges(const std::vector<double>& values, double L, const std::vector<double>& eps_grid,
                          const SequenceIdeal& I) {
  const auto N = static_cast<std::int64_t>(values.size());
  for (double eps : eps_grid)
    if (!I(exceedance_indices(values, L, eps), N)) return false;
  return true;
}

bool sequence_i_star_converges(const std::vector<double>& values, double L, const IndexSet& M,
                               const std::vector<double>& eps_grid, const SequenceIdeal& I) {
  const auto N = static_cast<std::int64_t>(values.size());
  IndexSet rest;
  auto it = M.begin();
  for (std::int64_t k = 1; k <= N; ++k) {
    if (it != M.end() && *it == k) {
      ++it;
      continue;
    }
    rest.push_back(k);
  }
  if (!I(rest, N)) return false;
  for (double eps : eps_grid)
    for (std::int64_t k : M)
      if (k > N / 2 && k <= N && std::abs(values[static_cast<std::size_t>(k - 1)] - L) >= eps) return false;
  return true;
}

boost::multiprecision::cpp_rational summed_measure(const TimeScale& T, const std::vector<std::int64_t>& n,
                                                   std::int64_t N) {
  boost::multiprecision::cpp_rational sum = 0;
  for (std::int64_t k : n) {
    if (k < 0 || k >= N) continue;
    const double t = T.element(k);
    sum += boost::multiprecision::cpp_rational(T.sigma(t)) - boost::multiprecision::cpp_rational(t);
  }
  return sum;
}

}  // namespace tsconv::oracle
