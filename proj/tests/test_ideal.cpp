#include <random>

#include "doctest.h"
#include "tsconv/exceed.hpp"
#include "tsconv/ideal.hpp"

using namespace tsconv;

namespace {

TsSet squares(const TimeScale& T) { return TsSet::pattern(T, GridPattern::squares()); }
TsSet cubes(const TimeScale& T) { return TsSet::pattern(T, GridPattern::cubes()); }
TsSet evens(const TimeScale& T) { return TsSet::pattern(T, GridPattern::multiples(2, 0)); }

}  // namespace

TEST_CASE("measure zero ideal") {
  const auto R = TimeScale::continuous_ray(1);
  const auto Z = TimeScale::uniform_grid(1, 1);
  CHECK(measure_zero_ideal(R).membership(TsSet::points(R, {5})) == Membership::In);
  CHECK(measure_zero_ideal(Z).membership(TsSet::points(Z, {5})) == Membership::NotIn);
  CHECK(measure_zero_ideal(Z).membership(TsSet::empty(Z)) == Membership::In);
  CHECK(measure_zero_ideal(R).membership(TsSet::sequence(R, {})) == Membership::In);
  CHECK(measure_zero_ideal(R).membership(TsSet::range(R, 2, 3)) == Membership::NotIn);
  CHECK(measure_zero_ideal(R).membership(TsSet::whole(R)) == Membership::NotIn);
}

TEST_CASE("density zero ideal") {
  const auto Z = TimeScale::uniform_grid(1, 1);
  const auto I = density_zero_ideal(Z);
  CHECK(I.membership(squares(Z)) == Membership::In);
  CHECK(I.membership(evens(Z)) == Membership::NotIn);
  CHECK(I.membership(TsSet::range(Z, 1, 1000)) == Membership::In);
  CHECK(I.membership(TsSet::whole(Z)) == Membership::NotIn);
  CHECK(I.flags().b_admissible);
  const auto G = TimeScale::geometric_grid(1, 2);
  CHECK(density_zero_ideal(G).membership(TsSet::pattern(G, GridPattern::multiples(2, 0, 0))) == Membership::NotIn);
}

TEST_CASE("bounded ideal") {
  const auto Z = TimeScale::uniform_grid(1, 1);
  const auto R = TimeScale::continuous_ray(1);
  const auto I = bounded_ideal(Z);
  CHECK(I.membership(TsSet::range(Z, 1, 100)) == Membership::In);
  CHECK(I.membership(TsSet::whole(Z)) == Membership::NotIn);
  CHECK(I.membership(evens(Z)) == Membership::NotIn);
  CHECK(I.flags().bap);
  const auto B = bounded_ideal(R);
  CHECK(B.membership(exceedance(MeasurableFn::parse(R, "1/t"), 0, 0.01)) == Membership::In);
  CHECK(B.membership(exceedance(MeasurableFn::parse(R, "sin(t)"), 0, 0.5)) == Membership::NotIn);
}

TEST_CASE("filter view") {
  const auto Z = TimeScale::uniform_grid(1, 1);
  CHECK(FilterView(bounded_ideal(Z)).in_filter(TsSet::ray(Z, 50)) == Membership::In);
  CHECK(FilterView(bounded_ideal(Z)).in_filter(TsSet::empty(Z)) == Membership::NotIn);
  CHECK(FilterView(density_zero_ideal(Z)).in_filter(squares(Z).complement()) == Membership::In);
  CHECK(FilterView(density_zero_ideal(Z)).in_filter(TsSet::empty(Z)) == Membership::NotIn);
}

TEST_CASE("axiom checks") {
  const auto Z = TimeScale::uniform_grid(1, 1);
  CHECK(check_ideal_axioms(density_zero_ideal(Z), {squares(Z), cubes(Z), squares(Z) | cubes(Z)}).passed);
  CHECK(check_ideal_axioms(bounded_ideal(Z), {TsSet::range(Z, 1, 10), TsSet::range(Z, 5, 20)}).passed);
  const auto fake = fake_non_ideal(Z, TsSet::range(Z, 1, 10), TsSet::range(Z, 20, 30), 100);
  const auto report = check_ideal_axioms(fake, {TsSet::range(Z, 1, 10), TsSet::range(Z, 20, 30)}, 100);
  CHECK_FALSE(report.passed);
  REQUIRE_FALSE(report.violations.empty());
  CHECK(report.violations.front().axiom == "union closure");
  const auto gen = generated_ideal(Z, {squares(Z), TsSet::range(Z, 1, 10)}, 1000);
  CHECK(check_ideal_axioms(gen, {squares(Z), TsSet::range(Z, 1, 10), cubes(Z), evens(Z)}, 1000).passed);
}

TEST_CASE("b-admissibility on random bounded sets") {
  const auto Z = TimeScale::uniform_grid(1, 1);
  const auto R = TimeScale::continuous_ray(1);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(1.0, 1e6);
  for (int i = 0; i < 100; ++i) {
    const double a = u(rng);
    const double b = a + u(rng);
    CHECK(density_zero_ideal(Z).membership(TsSet::range(Z, a, b)) == Membership::In);
    CHECK(bounded_ideal(R).membership(TsSet::range(R, a, b)) == Membership::In);
  }
}

TEST_CASE("filter duality and axioms") {
  const auto Z = TimeScale::uniform_grid(1, 1);
  const auto I = density_zero_ideal(Z);
  const FilterView F(I);
  const std::vector<TsSet> sets{squares(Z), evens(Z), TsSet::range(Z, 1, 50), squares(Z).complement(),
                                TsSet::ray(Z, 10)};
  for (const auto& S : sets) {
    CHECK((F.in_filter(S) == Membership::In) == (I.membership(S.complement()) == Membership::In));
    for (const auto& U : sets) {
      if (F.in_filter(S) == Membership::In && F.in_filter(U) == Membership::In) {
        CHECK(F.in_filter(S & U) != Membership::NotIn);
        CHECK(F.in_filter(S | U) != Membership::NotIn);
      }
    }
  }
  CHECK(F.in_filter(TsSet::empty(Z)) == Membership::NotIn);
}
