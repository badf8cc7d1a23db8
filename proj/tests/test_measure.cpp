#include <cmath>
#include "doctest.h"
#include "tsconv/density.hpp"
#include "tsconv/measure.hpp"

using namespace tsconv;

namespace {

TsSet evens(const TimeScale& T) { return TsSet::pattern(T, GridPattern::multiples(2, 0)); }
TsSet squares(const TimeScale& T) { return TsSet::pattern(T, GridPattern::squares()); }

}  // namespace

TEST_CASE("point measure") {
  CHECK(measure_point(TimeScale::continuous_ray(1), 3).value == 0);
  CHECK(measure_point(TimeScale::uniform_grid(1, 1), 5).value == 1);
  CHECK(measure_point(TimeScale::geometric_grid(1, 2), 4).value == 4);
  CHECK_THROWS_AS(measure_point(TimeScale::uniform_grid(1, 1), 2.5), NotInTimeScale);
}

TEST_CASE("interval measure formulas") {
  const auto R = TimeScale::continuous_ray(1);
  const auto Z = TimeScale::uniform_grid(1, 1);
  CHECK(measure_interval(R, IntervalKind::HalfOpenLR, 2, 5).value == 3);
  CHECK(measure_interval(Z, IntervalKind::Closed, 2, 5).value == 4);
  CHECK(measure_interval(Z, IntervalKind::Open, 2, 5).value == 2);
  CHECK(measure_interval(Z, IntervalKind::HalfOpenRL, 2, 5).value == 3);
  CHECK_THROWS_AS(measure_interval(Z, IntervalKind::Closed, 5, 2), InvalidInterval);
  CHECK_THROWS_AS(measure_interval(Z, IntervalKind::Closed, 1.5, 2), NotInTimeScale);
  for (double a : {1.0, 2.0, 7.0}) {
    for (double b : {7.0, 9.0}) {
      CHECK(measure_interval(Z, IntervalKind::Closed, a, b).value ==
            measure_interval(Z, IntervalKind::HalfOpenLR, a, b).value + measure_point(Z, b).value);
    }
  }
}

TEST_CASE("rounded differences are not exact") {
  const auto G = TimeScale::geometric_grid(1, 2);
  const auto small = measure_interval(G, IntervalKind::HalfOpenLR, 1, std::ldexp(1.0, 52));
  CHECK(small.exact);
  const auto big = measure_interval(G, IntervalKind::HalfOpenLR, 1, std::ldexp(1.0, 57));
  CHECK_FALSE(big.exact);
}

TEST_CASE("set window measure") {
  const auto R = TimeScale::continuous_ray(1);
  const auto Z = TimeScale::uniform_grid(1, 1);
  CHECK(measure_set_window(TsSet::blocks(R, 2, 2, 1), 9).value == 4);
  CHECK(measure_set_window(squares(Z), 100).value == 10);
  CHECK(measure_set_window(TsSet::empty(R), 50).value == 0);
  CHECK_THROWS_AS(measure_set_window(TsSet::empty(R), 0.5), InvalidWindow);
}

TEST_CASE("closed forms agree with enumeration") {
  const std::vector<TimeScale> scales{TimeScale::uniform_grid(1, 1), TimeScale::uniform_grid(1, 0.5),
                                      TimeScale::geometric_grid(1, 2)};
  for (const auto& T : scales) {
    const std::vector<TsSet> sets{evens(T),
                                  squares(T),
                                  TsSet::pattern(T, GridPattern::blocks(3, 2)),
                                  TsSet::pattern(T, GridPattern::index_list({2, 3, 5, 7, 11, 13})),
                                  TsSet::range(T, 2, 9, false, true),
                                  evens(T).complement()};
    for (const auto& S : sets) {
      for (double t : {1.0, 4.0, 16.0, 33.0, 128.0}) {
        const double closed = measure_set_window(S, t).value;
        const double enumerated = measure(T, S.resolve(t));
        CHECK(closed == doctest::Approx(enumerated));
      }
    }
  }
}

TEST_CASE("set algebra and additivity") {
  const auto T = TimeScale::periodic_pattern(1, 1, 1);
  const auto A = TsSet::range(T, 1, 10, true, false);
  const auto B = TsSet::blocks(T, 1, 4, 1.5);
  for (double t : {2.0, 5.0, 9.5, 20.0}) {
    const double ab = measure_set_window(A & B, t).value;
    const double a_minus_b = measure_set_window(A - B, t).value;
    CHECK(ab + a_minus_b == doctest::Approx(measure_set_window(A, t).value));
    CHECK(measure_set_window(A | B, t).value ==
          doctest::Approx(measure_set_window(A, t).value + measure_set_window(B, t).value - ab));
    CHECK(measure_set_window(B.complement(), t).value ==
          doctest::Approx(measure_set_window(TsSet::whole(T), t).value - measure_set_window(B, t).value));
  }
}

TEST_CASE("monotone windows") {
  const auto Z = TimeScale::uniform_grid(1, 1);
  const auto S = squares(Z) | TsSet::pattern(Z, GridPattern::multiples(7, 3));
  double prev = 0;
  for (double t = 1; t < 300; t += 7) {
    const double m = measure_set_window(S, t).value;
    CHECK(m >= prev);
    prev = m;
    CHECK(S.resolve(t).spans == clip_above(S.resolve(400), t).spans);
  }
}

TEST_CASE("density examples") {
  const auto R = TimeScale::continuous_ray(1);
  const auto Z = TimeScale::uniform_grid(1, 1);
  const auto G = TimeScale::geometric_grid(1, 2);

  for (const auto& p : density_trace(TsSet::whole(R), {2, 5, 100})) CHECK(p.ratio == 1);

  auto half = density(TsSet::blocks(R, 2, 2, 1));
  CHECK(half.outcome == DensityResult::Outcome::Exact);
  CHECK(half.value == 0.5);

  auto sq = density(squares(Z));
  CHECK(sq.outcome == DensityResult::Outcome::Estimated);
  CHECK(sq.value <= 1e-2);

  auto ev = density(evens(Z));
  CHECK(ev.outcome == DensityResult::Outcome::Exact);
  CHECK(ev.value == 0.5);

  auto geo = density(TsSet::pattern(G, GridPattern::multiples(2, 0, 0)));
  CHECK(geo.outcome == DensityResult::Outcome::DoesNotExist);
  CHECK(geo.liminf == doctest::Approx(1.0 / 3).epsilon(0.02));
  CHECK(geo.limsup == doctest::Approx(2.0 / 3).epsilon(0.02));

  CHECK(density(TsSet::empty(G)).value == 0);
  CHECK(density(TsSet::whole(G)).value == 1);
  CHECK_THROWS_AS(density_trace(TsSet::whole(R), {1}), ZeroDenominator);
}

TEST_CASE("density complement law") {
  const auto Z = TimeScale::uniform_grid(1, 1);
  const auto P = TimeScale::periodic_pattern(1, 1, 1);
  const std::vector<TsSet> sets{TsSet::pattern(Z, GridPattern::blocks(2, 3)), TsSet::blocks(P, 1, 2, 0.5),
                                TsSet::range(P, 1, 40)};
  for (const auto& S : sets) {
    auto d = density(S);
    REQUIRE(d.outcome == DensityResult::Outcome::Exact);
    auto c = density(S.complement());
    REQUIRE(c.outcome == DensityResult::Outcome::Exact);
    CHECK(c.value == doctest::Approx(1 - d.value));
  }
}

TEST_CASE("density trace monotone in the set") {
  const auto Z = TimeScale::uniform_grid(1, 1);
  const auto small = squares(Z);
  const auto big = squares(Z) | evens(Z);
  const auto grid = default_grid(Z, 12);
  const auto a = density_trace(small, grid);
  const auto b = density_trace(big, grid);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].ratio <= b[i].ratio);
}
