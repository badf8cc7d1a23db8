#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "tsconv/exceed.hpp"
#include "tsconv/measure.hpp"

using namespace tsconv;

namespace {

TsSet squares(const TimeScale& T) { return TsSet::pattern(T, GridPattern::squares()); }

}  // namespace

TEST_CASE("eval examples") {
  const auto R = TimeScale::continuous_ray(1);
  const auto Z = TimeScale::uniform_grid(1, 1);
  CHECK(MeasurableFn::parse(R, "1/t").eval(4) == 0.25);
  CHECK(MeasurableFn::indicator(squares(Z)).eval(9) == 1);
  CHECK(MeasurableFn::indicator(squares(Z)).eval(10) == 0);
  CHECK(std::abs(MeasurableFn::parse(R, "sin(t)").eval(std::numbers::pi)) < 1e-15);
  CHECK_THROWS_AS(MeasurableFn::parse(Z, "1/t").eval(2.5), NotInTimeScale);
}

TEST_CASE("domain errors") {
  const auto R = TimeScale::continuous_ray(1);
  CHECK_THROWS_AS(MeasurableFn::parse(R, "1/(t-t)"), DomainError);
  CHECK_THROWS_AS(MeasurableFn::parse(R, "log(-t)"), DomainError);
  CHECK_THROWS_AS(MeasurableFn::parse(R, "1/0"), DomainError);
  auto f = MeasurableFn::parse(R, "1/(t-2)");
  CHECK_THROWS_AS(f.eval(2), DomainError);
  CHECK(f.eval(3) == 1);
}

TEST_CASE("parser") {
  const auto Z = TimeScale::uniform_grid(1, 1);
  SetEnv env{{"sq", squares(Z)}, {"ev", TsSet::pattern(Z, GridPattern::multiples(2, 0))}};
  CHECK(MeasurableFn::parse(Z, "2^3 + -t*2", env).eval(1) == 6);
  CHECK(MeasurableFn::parse(Z, "sqrt(t) + pow(t, 2)", env).eval(4) == 18);
  auto pw = MeasurableFn::parse(Z, "piecewise(sq: 5, ev: t, else: 0)", env);
  CHECK(pw.eval(4) == 5);
  CHECK(pw.eval(6) == 6);
  CHECK(pw.eval(7) == 0);
  CHECK(pw.to_string() == "piecewise(sq: 5, ev: t, else: 0)");
  CHECK_THROWS_AS(MeasurableFn::parse(Z, "ind(nope)", env), ParseError);
  CHECK_THROWS_AS(MeasurableFn::parse(Z, "sin(t", env), ParseError);
  CHECK_THROWS_AS(MeasurableFn::parse(Z, "foo(t)", env), ParseError);
}

TEST_CASE("combine examples") {
  const auto Z = TimeScale::uniform_grid(1, 1);
  const auto f = MeasurableFn::parse(Z, "1/t");
  CHECK(combine(f, f, CombineOp::Scale, 2).eval(4) == 0.5);
  CHECK(combine(f, MeasurableFn::indicator(squares(Z)), CombineOp::Add).eval(9) == doctest::Approx(1 + 1.0 / 9));
  CHECK(compose(parse_expr("t^2"), f).eval(2) == 0.25);
  CHECK((f * f).eval(2) == 0.25);
}

TEST_CASE("interval enclosures contain sampled values") {
  const auto R = TimeScale::continuous_ray(1);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(1.0, 50.0);
  for (const char* text : {"sin(t)*t", "cos(3*t)+1/t", "exp(-t)*log(t)", "abs(sin(t)-0.5)", "t^0.5 - t/7"}) {
    const auto f = MeasurableFn::parse(R, text);
    for (int i = 0; i < 200; ++i) {
      double a = u(rng);
      double b = a + u(rng) / 10;
      const Interval I = f.enclose({a, b});
      for (int j = 0; j <= 10; ++j) {
        const double v = f.eval(a + (b - a) * j / 10);
        CHECK(I.lo <= v);
        CHECK(v <= I.hi);
      }
    }
  }
}

TEST_CASE("exceedance examples") {
  const auto R = TimeScale::continuous_ray(1);
  const auto Z = TimeScale::uniform_grid(1, 1);

  const auto a = exceed_set(MeasurableFn::parse(R, "1/t"), {0, 0.1}, 100);
  REQUIRE(a.size() == 1);
  CHECK(a.spans[0].lo == 1);
  CHECK(a.spans[0].hi == doctest::Approx(10).epsilon(1e-9));

  const auto b = exceed_set(MeasurableFn::indicator(squares(Z)), {0, 0.5}, 100);
  CHECK(b.size() == 10);
  CHECK(b.exact);
  CHECK(b.spans.back().hi == 100);

  CHECK(exceed_set(MeasurableFn::parse(R, "sin(t)"), {0, 2.5}, 1000).empty());

  // The indicator exceedance stays symbolic, so its measure has a closed form.
  CHECK(exceedance(MeasurableFn::indicator(squares(Z)), 0, 0.5).closed_measure(1e12).has_value());
}

TEST_CASE("exceedance on a discrete grid is exact") {
  const auto Z = TimeScale::uniform_grid(1, 1);
  const auto f = MeasurableFn::parse(Z, "1/t");
  const auto r = exceed_set(f, {0, 0.1}, 1000);
  REQUIRE(r.size() == 1);
  CHECK(r.spans[0] == Span::closed(1, 10));
  CHECK(r.exact);
}

TEST_CASE("exceedance properties") {
  const auto R = TimeScale::continuous_ray(1);
  const auto P = TimeScale::periodic_pattern(1, 1, 1);
  const auto G = TimeScale::geometric_grid(1, 2);
  std::mt19937_64 rng(11);
  for (const auto& T : {R, P, G}) {
    for (const char* text : {"sin(t)", "1/t", "cos(t/3)*2", "t/(t+1)"}) {
      const auto f = MeasurableFn::parse(T, text);
      for (double eps : {0.25, 0.5, 0.9}) {
        const auto A = exceedance(f, 0.1, eps);
        const auto small = exceedance(f, 0.1, eps * 1.5);
        const SpanList big = A.resolve(200.0);
        // Monotone windows.
        const SpanList prefix = A.resolve(80.0);
        const SpanList clipped = clip_above(big, *T.floor(80.0));
        CHECK(prefix.size() == clipped.size());
        CHECK(measure(T, prefix) == doctest::Approx(measure(T, clipped)).epsilon(1e-9));
        // Nesting.
        CHECK(measure(T, intersect(T, small.resolve(200.0), big)) ==
              doctest::Approx(measure(T, small.resolve(200.0))));
        // Pointwise agreement away from boundaries.
        std::uniform_real_distribution<double> u(1.0, 200.0);
        for (int i = 0; i < 100; ++i) {
          const double t = T.ceil(u(rng));
          if (t > 200.0) continue;
          const double dev = std::abs(f.eval(t) - 0.1) - eps;
          if (std::abs(dev) < 1e-6) continue;
          CHECK(big.contains(t) == (dev >= 0));
        }
      }
    }
  }
}

TEST_CASE("resolution failure is reported") {
  const auto R = TimeScale::continuous_ray(1);
  ResolverOptions opts;
  opts.subsamples = 8;
  const auto f = MeasurableFn::parse(R, "sin(1000*t)");
  CHECK_THROWS_AS(exceed_set(f, {0, 0.5}, 20, opts), ResolutionFailure);
}
