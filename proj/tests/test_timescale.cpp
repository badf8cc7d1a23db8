#include <random>

#include "doctest.h"
#include "tsconv/error.hpp"
#include "tsconv/timescale.hpp"

using namespace tsconv;

TEST_CASE("sigma examples") {
  CHECK(TimeScale::uniform_grid(1, 1).sigma(3) == 4);
  CHECK(TimeScale::continuous_ray(1).sigma(5) == 5);
  CHECK(TimeScale::geometric_grid(1, 2).sigma(8) == 16);
  CHECK_THROWS_AS(TimeScale::uniform_grid(1, 1).sigma(2.5), NotInTimeScale);
}

TEST_CASE("graininess examples") {
  CHECK(TimeScale::continuous_ray(1).graininess(7) == 0);
  CHECK(TimeScale::uniform_grid(1, 0.5).graininess(2) == 0.5);
  CHECK(TimeScale::periodic_pattern(1, 1, 2).graininess(2) == 2);
  CHECK(TimeScale::periodic_pattern(1, 1, 2).graininess(1.5) == 0);
}

TEST_CASE("membership") {
  CHECK_FALSE(TimeScale::uniform_grid(1, 1).contains(2.5));
  CHECK(TimeScale::periodic_pattern(1, 1, 2).contains(1.5));
  CHECK_FALSE(TimeScale::periodic_pattern(1, 1, 2).contains(3));
  CHECK(TimeScale::geometric_grid(1, 3).contains(27));
  CHECK_FALSE(TimeScale::geometric_grid(1, 3).contains(26));
  CHECK_FALSE(TimeScale::continuous_ray(1).contains(0.5));
}

TEST_CASE("decompose_window") {
  using C = Component;
  CHECK(TimeScale::continuous_ray(1).decompose_window(2, 5) == std::vector<C>{C::interval(2, 5)});
  CHECK(TimeScale::uniform_grid(1, 1).decompose_window(1.5, 4.2) ==
        std::vector<C>{C::point(2), C::point(3), C::point(4)});
  CHECK(TimeScale::periodic_pattern(1, 1, 2).decompose_window(1, 7) ==
        std::vector<C>{C::interval(1, 2), C::interval(4, 5), C::interval(7, 7)});
  CHECK_THROWS_AS(TimeScale::continuous_ray(1).decompose_window(5, 2), InvalidWindow);
}

TEST_CASE("degenerate periodic pattern is a ray") {
  auto T = TimeScale::periodic_pattern(1, 1, 0);
  CHECK(T.kind() == TimeScale::Kind::ContinuousRay);
}

TEST_CASE("hybrid scale") {
  auto tail = TimeScale::uniform_grid(10, 1);
  auto T = TimeScale::hybrid({Component::interval(1, 2), Component::point(5)}, tail);
  CHECK(T.contains(1.5));
  CHECK(T.sigma(2) == 5);
  CHECK(T.sigma(5) == 10);
  CHECK(T.sigma(11) == 12);
  CHECK_FALSE(T.contains(7));
  CHECK_THROWS_AS(TimeScale::hybrid({Component::interval(1, 12)}, tail), InvalidTimeScale);
}

TEST_CASE("sigma properties on sampled points") {
  std::mt19937_64 rng(7);
  std::vector<TimeScale> scales{TimeScale::continuous_ray(1), TimeScale::uniform_grid(1, 0.5),
                                TimeScale::geometric_grid(1, 2), TimeScale::periodic_pattern(1, 1, 2),
                                TimeScale::hybrid({Component::point(1), Component::interval(2, 3)},
                                                  TimeScale::uniform_grid(4, 2))};
  std::uniform_real_distribution<double> u(1.0, 60.0);
  for (const auto& T : scales) {
    for (int i = 0; i < 200; ++i) {
      const double t = T.ceil(u(rng));
      REQUIRE(T.contains(t));
      const double s = T.sigma(t);
      CHECK(T.contains(s));
      CHECK(s >= t);
      if (s > t) {
        for (int j = 1; j < 16; ++j) CHECK_FALSE(T.contains(t + (s - t) * j / 16.0));
      }
      const double a = u(rng);
      const double b = a + u(rng);
      const auto comps = T.decompose_window(a, b);
      for (int j = 0; j <= 32; ++j) {
        const double x = a + (b - a) * j / 32.0;
        bool in = false;
        for (const auto& c : comps) in = in || (x >= c.lo && x <= c.hi);
        CHECK(in == T.contains(x));
      }
    }
  }
}
