#include <cstdlib>
#include <random>
#include <thread>

#include "tsconv/props.hpp"

namespace tsconv {

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries{
      {"inverse", "1/t", {0}},
      {"inverse_square", "1/t^2", {0}},
      {"exp_decay", "exp(-t)", {0}},
      {"shifted_inverse", "2 + 1/t", {2}},
      {"sinc", "sin(t)/t", {0}},
      {"inverse_sqrt", "1/sqrt(t)", {0}},
      {"constant", "3", {3}},
      {"sparse_indicator", "ind(sparse)", {0, 1}},
      {"half_indicator", "ind(half)", {0, 1}},
      {"sparse_complement", "1 - ind(sparse)", {1, 0}},
      {"inverse_plus_sparse", "1/t + ind(sparse)", {0}},
      {"sine", "sin(t)", {0}},
      {"damped_cosine", "cos(t)/(1 + t)", {0}},
      {"ratio", "t/(t + 1)", {1}},
      {"log_ratio", "log(t)/t", {0}},
      {"piecewise_sparse", "piecewise(sparse: 5, else: 1/t)", {0, 5}},
      {"abs_sine", "abs(sin(t))", {0}},
      {"half_ratio", "(t + 1)/(2*t)", {0.5}},
      {"damped_sine", "exp(-t)*sin(t)", {0}},
      {"half_over_t", "ind(half)/t", {0}},
      {"lifted_sparse", "3*ind(sparse) + 2", {2, 5}},
      {"lorentzian", "1/(1 + t^2)", {0}},
  };
  return entries;
}

std::vector<TimeScale> corpus_scales() {
  return {TimeScale::continuous_ray(1), TimeScale::uniform_grid(1, 1), TimeScale::periodic_pattern(1, 1, 1)};
}

SetEnv corpus_sets(const TimeScale& T) {
  SetEnv env;
  switch (T.kind()) {
    case TimeScale::Kind::UniformGrid:
      env.emplace("sparse", TsSet::pattern(T, GridPattern::squares()));
      env.emplace("half", TsSet::pattern(T, GridPattern::multiples(2, 0)));
      break;
    case TimeScale::Kind::PeriodicPattern:
      env.emplace("sparse", TsSet::sequence(T, PointSequence{}));
      env.emplace("half", TsSet::blocks(T, T.t0(), 4, 1));
      break;
    default:
      env.emplace("sparse", TsSet::sequence(T, PointSequence{}));
      env.emplace("half", TsSet::blocks(T, T.t0(), 2, 1));
      break;
  }
  return env;
}

std::vector<Ideal> corpus_ideals(const TimeScale& T) {
  return {measure_zero_ideal(T), density_zero_ideal(T), bounded_ideal(T)};
}

namespace {

TsSet sample_leaf(const TimeScale& T, std::mt19937_64& rng) {
  auto pick = [&](std::uint64_t n) { return static_cast<std::int64_t>(rng() % n); };
  const bool grid = T.kind() == TimeScale::Kind::UniformGrid || T.kind() == TimeScale::Kind::GeometricGrid;
  const double t0 = T.t0();
  switch (pick(6)) {
    case 0: {
      const double a = t0 + static_cast<double>(pick(1000));
      return TsSet::range(T, a, a + 1 + static_cast<double>(pick(500)));
    }
    case 1: {
      std::vector<double> pts;
      const auto n = 1 + pick(6);
      for (std::int64_t i = 0; i < n; ++i) pts.push_back(T.ceil(t0 + static_cast<double>(pick(2000))));
      return TsSet::points(T, pts);
    }
    case 2: {
      PointSequence seq;
      if (pick(2) == 0) {
        seq.base = static_cast<double>(2 + pick(2));
      } else {
        seq.kind = PointSequence::Kind::Polynomial;
        seq.exponent = 2 + pick(2);
      }
      return TsSet::sequence(T, seq);
    }
    case 3:
      if (grid) {
        switch (pick(3)) {
          case 0: return TsSet::pattern(T, GridPattern::squares());
          case 1: return TsSet::pattern(T, GridPattern::cubes());
          default: {
            const auto m = 2 + pick(5);
            return TsSet::pattern(T, GridPattern::multiples(m, pick(static_cast<std::uint64_t>(m))));
          }
        }
      }
      return TsSet::blocks(T, t0 + static_cast<double>(pick(10)), 4 + static_cast<double>(pick(8)),
                           1 + static_cast<double>(pick(3)));
    case 4:
      return TsSet::ray(T, t0 + static_cast<double>(pick(1000)));
    default:
      return TsSet::range(T, t0, t0 + static_cast<double>(pick(100)));
  }
}

}  // namespace

std::vector<TsSet> sample_sets(const TimeScale& T, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<TsSet> out;
  out.reserve(static_cast<std::size_t>(n));
  while (static_cast<int>(out.size()) < n) {
    TsSet s = sample_leaf(T, rng);
    switch (rng() % 5) {
      case 0: s = s | sample_leaf(T, rng); break;
      case 1: s = s & sample_leaf(T, rng); break;
      case 2: s = s - sample_leaf(T, rng); break;
      default: break;
    }
    out.push_back(std::move(s));
  }
  return out;
}

int worker_count() {
  if (const char* env = std::getenv("TSCONV_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace tsconv
