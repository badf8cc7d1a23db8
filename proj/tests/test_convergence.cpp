#include "doctest.h"
#include "tsconv/convergence.hpp"

using namespace tsconv;

namespace {

TsSet squares(const TimeScale& T) { return TsSet::pattern(T, GridPattern::squares()); }
TsSet evens(const TimeScale& T) { return TsSet::pattern(T, GridPattern::multiples(2, 0)); }

const TimeScale R = TimeScale::continuous_ray(1);
const TimeScale Z = TimeScale::uniform_grid(1, 1);

}  // namespace

TEST_CASE("i_converges examples") {
  CHECK(i_converges(MeasurableFn::parse(R, "1/t"), 0, bounded_ideal(R)).outcome == Outcome::Converges);
  CHECK(i_converges(MeasurableFn::indicator(squares(Z)), 0, density_zero_ideal(Z)).outcome == Outcome::Converges);
  CHECK(i_converges(MeasurableFn::indicator(evens(Z)), 0, density_zero_ideal(Z)).outcome == Outcome::Diverges);
  CHECK_THROWS_AS(i_converges(MeasurableFn::parse(R, "1/t"), 0, bounded_ideal(Z)), ScaleMismatch);
}

TEST_CASE("verdict diagnostics mark implied checks") {
  const auto v = i_converges(MeasurableFn::parse(R, "1/t"), 0, bounded_ideal(R));
  REQUIRE(v.checks.size() == 13);
  CHECK_FALSE(v.checks.back().implied);
  CHECK(v.checks.front().implied);
  ConvergenceOptions opts;
  opts.exhaustive = true;
  const auto w = i_converges(MeasurableFn::parse(R, "1/t"), 0, bounded_ideal(R), opts);
  CHECK(w.outcome == Outcome::Converges);
  for (const auto& c : w.checks) CHECK_FALSE(c.implied);
}

TEST_CASE("statistical convergence examples") {
  CHECK(statistical_converges(MeasurableFn::indicator(squares(Z)), 0).outcome == Outcome::Converges);
  CHECK(statistical_converges(MeasurableFn::parse(R, "sin(t)"), 0).outcome == Outcome::Diverges);
  CHECK(statistical_converges(MeasurableFn::constant(R, 3), 3).outcome == Outcome::Converges);
}

TEST_CASE("i_star examples") {
  CHECK(i_star_converges(MeasurableFn::indicator(squares(Z)), 0, density_zero_ideal(Z), squares(Z).complement())
            .outcome == Outcome::Converges);
  CHECK(i_star_converges(MeasurableFn::parse(R, "1/t"), 0, bounded_ideal(R), TsSet::whole(R)).outcome ==
        Outcome::Converges);
  CHECK(i_star_converges(MeasurableFn::indicator(evens(Z)), 0, bounded_ideal(Z)).outcome == Outcome::Diverges);
  CHECK(i_star_converges(MeasurableFn::indicator(squares(Z)), 0, density_zero_ideal(Z)).outcome ==
        Outcome::Converges);
}

TEST_CASE("classical limit examples") {
  CHECK(classical_limit_on(MeasurableFn::parse(R, "1/t"), TsSet::whole(R), 0).outcome == Outcome::Converges);
  CHECK(classical_limit_on(MeasurableFn::parse(R, "sin(t)"), TsSet::whole(R), 0).outcome == Outcome::Diverges);
  CHECK(classical_limit_on(MeasurableFn::indicator(squares(Z)), squares(Z).complement(), 0).outcome ==
        Outcome::Converges);
  CHECK_THROWS_AS(classical_limit_on(MeasurableFn::parse(R, "1/t"), TsSet::range(R, 1, 5), 0), BoundedRestriction);
}

TEST_CASE("cauchy examples") {
  CHECK(i_cauchy(MeasurableFn::parse(R, "1/t"), bounded_ideal(R)).label == "Cauchy");
  CHECK(i_cauchy(MeasurableFn::indicator(evens(Z)), density_zero_ideal(Z)).label == "NotCauchy");
  CHECK(i_cauchy(MeasurableFn::constant(Z, 2), density_zero_ideal(Z)).label == "Cauchy");
}

TEST_CASE("cluster examples") {
  auto values = [](const ClusterResult& r) {
    std::vector<double> v;
    for (const auto& p : r.points) v.push_back(p.L);
    return v;
  };
  CHECK(values(cluster_points(MeasurableFn::indicator(evens(Z)), density_zero_ideal(Z), {0, 0.5, 1})) ==
        std::vector<double>{0, 1});
  CHECK(values(cluster_points(MeasurableFn::parse(R, "1/t"), bounded_ideal(R), {0, 1})) == std::vector<double>{0});
  CHECK(values(cluster_points(MeasurableFn::constant(Z, 4), density_zero_ideal(Z), {1, 4})) ==
        std::vector<double>{4});
  CHECK(values(cluster_points(MeasurableFn::constant(Z, 4), density_zero_ideal(Z))) == std::vector<double>{4});
}

TEST_CASE("bap transfer examples") {
  const auto r = bap_transfer(MeasurableFn::parse(R, "1/t"), 0, bounded_ideal(R), 10);
  CHECK(r.verdict.outcome == Outcome::Converges);
  CHECK(r.A.size() == 10);
  CHECK(bounded_ideal(R).membership(r.M.complement()) == Membership::In);

  const auto c = bap_transfer(MeasurableFn::constant(R, 2), 2, bounded_ideal(R), 5);
  CHECK(c.verdict.outcome == Outcome::Converges);
  for (const auto& a : c.A) CHECK(a.resolve(1e6).empty());

  CHECK_THROWS_AS(bap_transfer(MeasurableFn::indicator(squares(Z)), 0, bounded_ideal(Z), 10), PreconditionFailed);
  CHECK_THROWS_AS(bap_transfer(MeasurableFn::indicator(squares(Z)), 0, density_zero_ideal(Z), 10),
                  PreconditionFailed);
}
