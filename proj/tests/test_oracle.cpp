#include "doctest.h"
#include "tsconv/convergence.hpp"
#include "tsconv/density.hpp"
#include "tsconv/oracle.hpp"

using namespace tsconv;
using oracle::Rational;

namespace {

const TimeScale Z = TimeScale::uniform_grid(1, 1);

oracle::IndexSet evens_upto(std::int64_t N) {
  oracle::IndexSet s;
  for (std::int64_t k = 2; k <= N; k += 2) s.push_back(k);
  return s;
}

oracle::IndexSet squares_upto(std::int64_t N) {
  oracle::IndexSet s;
  for (std::int64_t k = 1; k * k <= N; ++k) s.push_back(k * k);
  return s;
}

}  // namespace

TEST_CASE("partial density examples") {
  CHECK(oracle::partial_density(evens_upto(10), 10) == Rational(1, 2));
  CHECK(oracle::partial_density(squares_upto(100), 100) == Rational(10, 100));
  CHECK(oracle::partial_density({}, 7) == Rational(0));
  CHECK_THROWS_AS(oracle::partial_density({}, 0), InvalidWindow);
  const auto all = oracle::partial_densities(squares_upto(50), 50);
  for (std::int64_t n = 1; n <= 50; ++n) CHECK(all[n - 1] == oracle::partial_density(squares_upto(50), n));
}

TEST_CASE("statistical brute force examples") {
  const std::int64_t N = 1000000;
  std::vector<double> sq(N, 0.0), ev(N, 0.0), c(N, 3.0);
  for (std::int64_t k : squares_upto(N)) sq[k - 1] = 1.0;
  for (std::int64_t k : evens_upto(N)) ev[k - 1] = 1.0;
  const auto a = oracle::statistical_limit_bruteforce(sq, 0, 0.5, N);
  CHECK(a.converges);
  CHECK(a.final_ratio == Rational(1, 1000));
  const auto b = oracle::statistical_limit_bruteforce(ev, 0, 0.5, N);
  CHECK_FALSE(b.converges);
  CHECK(b.final_ratio == Rational(1, 2));
  const auto d = oracle::statistical_limit_bruteforce(c, 3, 0.5, N);
  CHECK(d.converges);
  for (const auto& p : d.trace) CHECK(p.ratio == Rational(0));
}

TEST_CASE("sequence view and index sets") {
  const auto f = MeasurableFn::parse(Z, "1/t");
  const auto v = oracle::sequence_view(f, 10);
  REQUIRE(v.values.size() == 10);
  for (std::size_t k = 0; k < 10; ++k) CHECK(v.values[k] == 1.0 / static_cast<double>(k + 1));
  CHECK_THROWS_AS(oracle::sequence_view(MeasurableFn::parse(TimeScale::continuous_ray(1), "t"), 5), ScaleMismatch);
  CHECK(oracle::index_set(TsSet::pattern(Z, GridPattern::squares()), 100) == squares_upto(100));
}

TEST_CASE("density trace agrees with counting ratios") {
  const std::int64_t N = 20000;
  std::vector<double> grid;
  for (std::int64_t n = 1; n <= N; ++n) grid.push_back(static_cast<double>(n));
  const TsSet sets[] = {TsSet::pattern(Z, GridPattern::multiples(2, 0)), TsSet::pattern(Z, GridPattern::squares()),
                        TsSet::blocks(Z, 1, 10, 2)};
  for (const auto& S : sets) {
    const auto tr = density_trace(S, grid);
    const auto ratios = oracle::partial_densities(oracle::index_set(S, N), N);
    bool all = true;
    for (std::int64_t n = 1; n <= N; ++n) {
      const auto& r = ratios[n - 1];
      all = all && tr[n - 1].ratio == static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
    }
    CHECK(all);
  }
}

TEST_CASE("sequence ideals and convergence") {
  const std::int64_t N = 1 << 14;
  std::vector<double> inv(N), sq(N, 0.0);
  for (std::int64_t k = 1; k <= N; ++k) inv[k - 1] = 1.0 / static_cast<double>(k);
  for (std::int64_t k : squares_upto(N)) sq[k - 1] = 1.0;
  const auto eps = default_eps_grid();
  CHECK(oracle::sequence_i_converges(inv, 0, eps, oracle::finite_sequence_ideal()));
  CHECK_FALSE(oracle::sequence_i_converges(sq, 0, eps, oracle::finite_sequence_ideal()));
  CHECK(oracle::sequence_i_converges(sq, 0, eps, oracle::density_zero_sequence_ideal(0.05)));
  oracle::IndexSet non_squares;
  for (std::int64_t k = 1, r = 1; k <= N; ++k) {
    if (r * r == k) {
      ++r;
      continue;
    }
    non_squares.push_back(k);
  }
  CHECK(oracle::sequence_i_star_converges(sq, 0, non_squares, eps, oracle::density_zero_sequence_ideal(0.05)));
}

TEST_CASE("geometric summation oracle") {
  const TimeScale G = TimeScale::geometric_grid(1, 2);
  for (std::int64_t N = 2; N <= 30; ++N) {
    std::vector<std::int64_t> ev;
    for (std::int64_t n = 0; n < N; n += 2) ev.push_back(n);
    const auto got = oracle::summed_measure(G, ev, N);
    const double q = 2.0;
    const double even_count = (N % 2 == 0) ? (std::pow(q, N) - 1) / (q + 1) : (std::pow(q, N + 1) - 1) / (q + 1);
    CHECK(got == boost::multiprecision::cpp_rational(even_count));
  }
}
