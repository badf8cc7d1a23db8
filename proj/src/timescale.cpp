#include "tsconv/timescale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tsconv/error.hpp"
#include "tsconv/numeric.hpp"

namespace tsconv {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive_finite(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidTimeScale(std::string(what) + " must be positive and finite, got " + format_number(v));
  }
}

// Block index of a periodic pattern: largest k ≥ 0 with start(k) ≤ x (x ≥ t0).
struct Blocks {
  double t0;
  double on;
  double period;

  double start(std::int64_t k) const { return t0 + static_cast<double>(k) * period; }
  double end(std::int64_t k) const { return start(k) + on; }

  std::int64_t index(double x) const {
    auto k = static_cast<std::int64_t>(std::floor((x - t0) / period));
    k = std::max<std::int64_t>(k, 0);
    while (start(k + 1) <= x) ++k;
    while (k > 0 && start(k) > x) --k;
    return k;
  }
};

}  // namespace

double pow_int(double q, std::int64_t n) {
  double result = 1.0;
  double base = q;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

TimeScale TimeScale::continuous_ray(double t0) {
  require_positive_finite(t0, "t0");
  return TimeScale(t0, scale_kind::ContinuousRay{});
}

TimeScale TimeScale::uniform_grid(double t0, double step) {
  require_positive_finite(t0, "t0");
  require_positive_finite(step, "step");
  return TimeScale(t0, scale_kind::UniformGrid{step});
}

TimeScale TimeScale::geometric_grid(double t0, double ratio) {
  require_positive_finite(t0, "t0");
  if (!(ratio > 1.0) || !std::isfinite(ratio)) {
    throw InvalidTimeScale("geometric ratio must exceed 1, got " + format_number(ratio));
  }
  return TimeScale(t0, scale_kind::GeometricGrid{ratio});
}

TimeScale TimeScale::periodic_pattern(double t0, double on, double gap) {
  require_positive_finite(t0, "t0");
  require_positive_finite(on, "on-length");
  if (!(gap >= 0.0) || !std::isfinite(gap)) {
    throw InvalidTimeScale("gap-length must be non-negative, got " + format_number(gap));
  }
  if (gap == 0.0) return continuous_ray(t0);
  return TimeScale(t0, scale_kind::PeriodicPattern{on, gap});
}

TimeScale TimeScale::hybrid(std::vector<Component> pieces, const TimeScale& tail) {
  for (auto& p : pieces) {
    if (!(p.lo <= p.hi) || !std::isfinite(p.hi)) throw InvalidTimeScale("hybrid piece with lo > hi");
    if (p.kind == Component::Kind::Interval && p.lo == p.hi) p = Component::point(p.lo);
    if (p.kind == Component::Kind::Point) p.hi = p.lo;
  }
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    if (!(pieces[i - 1].hi < pieces[i].lo)) {
      throw InvalidTimeScale("hybrid pieces must be ordered and pairwise disjoint");
    }
  }
  if (!pieces.empty() && !(pieces.back().hi < tail.t0())) {
    throw InvalidTimeScale("hybrid tail must start after the last piece");
  }
  const double t0 = pieces.empty() ? tail.t0() : pieces.front().lo;
  require_positive_finite(t0, "t0");
  return TimeScale(t0, scale_kind::HybridUnion{std::move(pieces), std::make_shared<const TimeScale>(tail)});
}

TimeScale::Kind TimeScale::kind() const { return static_cast<Kind>(kind_.index()); }

bool TimeScale::enumerable() const {
  return kind() == Kind::UniformGrid || kind() == Kind::GeometricGrid;
}

double TimeScale::element(std::int64_t k) const {
  return std::visit(
      overloaded{
          [&](const scale_kind::UniformGrid& g) { return t0_ + static_cast<double>(k) * g.step; },
          [&](const scale_kind::GeometricGrid& g) { return t0_ * pow_int(g.ratio, k); },
          [](const auto&) -> double { throw Error("element(): time scale is not an enumerable grid"); },
      },
      kind_);
}

std::int64_t TimeScale::index_floor(double x) const {
  if (x < t0_) return -1;
  std::int64_t k = 0;
  std::visit(overloaded{
                 [&](const scale_kind::UniformGrid& g) {
                   k = static_cast<std::int64_t>(std::floor((x - t0_) / g.step));
                 },
                 [&](const scale_kind::GeometricGrid& g) {
                   k = static_cast<std::int64_t>(std::floor(std::log(x / t0_) / std::log(g.ratio)));
                 },
                 [](const auto&) { throw Error("index_floor(): time scale is not an enumerable grid"); },
             },
             kind_);
  k = std::max<std::int64_t>(k, 0);
  while (element(k + 1) <= x) ++k;
  while (k > 0 && element(k) > x) --k;
  return k;
}

bool TimeScale::contains(double x) const {
  if (!(x >= t0_) || !std::isfinite(x)) return false;
  return std::visit(overloaded{
                        [](const scale_kind::ContinuousRay&) { return true; },
                        [&](const scale_kind::PeriodicPattern& p) {
                          const Blocks b{t0_, p.on, p.on + p.gap};
                          return x <= b.end(b.index(x));
                        },
                        [&](const scale_kind::HybridUnion& h) {
                          if (x >= h.tail->t0()) return h.tail->contains(x);
                          for (const auto& c : h.pieces) {
                            if (x < c.lo) return false;
                            if (x <= c.hi) return true;
                          }
                          return false;
                        },
                        [&](const auto&) { return element(index_floor(x)) == x; },
                    },
                    kind_);
}

double TimeScale::sigma(double t) const {
  if (!contains(t)) throw NotInTimeScale(format_number(t) + " is not a point of " + describe());
  return next_after(t);
}

double TimeScale::graininess(double t) const { return sigma(t) - t; }

double TimeScale::next_after(double x) const {
  if (x < t0_) return t0_;
  return std::visit(overloaded{
                        [&](const scale_kind::ContinuousRay&) { return x; },
                        [&](const scale_kind::PeriodicPattern& p) {
                          const Blocks b{t0_, p.on, p.on + p.gap};
                          const auto k = b.index(x);
                          return x < b.end(k) ? x : b.start(k + 1);
                        },
                        [&](const scale_kind::HybridUnion& h) {
                          if (x >= h.tail->t0()) return h.tail->next_after(x);
                          for (const auto& c : h.pieces) {
                            if (x < c.lo) return c.lo;
                            if (!c.is_point() && x < c.hi) return x;
                          }
                          return h.tail->t0();
                        },
                        [&](const auto&) { return element(index_floor(x) + 1); },
                    },
                    kind_);
}

std::optional<double> TimeScale::floor(double x) const {
  if (x < t0_) return std::nullopt;
  return std::visit(overloaded{
                        [&](const scale_kind::ContinuousRay&) { return x; },
                        [&](const scale_kind::PeriodicPattern& p) {
                          const Blocks b{t0_, p.on, p.on + p.gap};
                          const auto k = b.index(x);
                          return std::min(x, b.end(k));
                        },
                        [&](const scale_kind::HybridUnion& h) {
                          if (x >= h.tail->t0()) return *h.tail->floor(x);
                          double best = t0_;
                          for (const auto& c : h.pieces) {
                            if (x < c.lo) break;
                            best = std::min(x, c.hi);
                          }
                          return best;
                        },
                        [&](const auto&) { return element(index_floor(x)); },
                    },
                    kind_);
}

double TimeScale::ceil(double x) const {
  if (x <= t0_) return t0_;
  if (contains(x)) return x;
  return next_after(x);
}

std::vector<Component> TimeScale::decompose_window(double a, double b) const {
  if (!(a <= b)) {
    throw InvalidWindow("window [" + format_number(a) + ", " + format_number(b) + "] has a > b");
  }
  std::vector<Component> out;
  if (b < t0_) return out;
  const double lo = std::max(a, t0_);
  std::visit(overloaded{
                 [&](const scale_kind::ContinuousRay&) { out.push_back(Component::interval(lo, b)); },
                 [&](const scale_kind::PeriodicPattern& p) {
                   const Blocks blk{t0_, p.on, p.on + p.gap};
                   for (auto k = blk.index(lo); blk.start(k) <= b; ++k) {
                     const double s = std::max(blk.start(k), lo);
                     const double e = std::min(blk.end(k), b);
                     if (s <= e) out.push_back(Component::interval(s, e));
                   }
                 },
                 [&](const scale_kind::HybridUnion& h) {
                   for (const auto& c : h.pieces) {
                     if (c.hi < lo || c.lo > b) continue;
                     if (c.is_point()) {
                       out.push_back(c);
                     } else {
                       out.push_back(Component::interval(std::max(c.lo, lo), std::min(c.hi, b)));
                     }
                   }
                   if (b >= h.tail->t0()) {
                     auto rest = h.tail->decompose_window(std::max(lo, h.tail->t0()), b);
                     out.insert(out.end(), rest.begin(), rest.end());
                   }
                 },
                 [&](const auto&) {
                   const auto last = index_floor(b);
                   for (auto k = std::max<std::int64_t>(index_floor(lo), 0); k <= last; ++k) {
                     const double x = element(k);
                     if (x >= lo) out.push_back(Component::point(x));
                   }
                 },
             },
             kind_);
  return out;
}

double TimeScale::component_bound(double a, double b) const {
  if (b < t0_ || a > b) return 0.0;
  const double lo = std::max(a, t0_);
  return std::visit(overloaded{
                        [](const scale_kind::ContinuousRay&) { return 1.0; },
                        [&](const scale_kind::UniformGrid& g) { return (b - lo) / g.step + 2.0; },
                        [&](const scale_kind::GeometricGrid&) {
                          return static_cast<double>(index_floor(b) - index_floor(lo)) + 2.0;
                        },
                        [&](const scale_kind::PeriodicPattern& p) { return (b - lo) / (p.on + p.gap) + 2.0; },
                        [&](const scale_kind::HybridUnion& h) {
                          double n = static_cast<double>(h.pieces.size());
                          if (b >= h.tail->t0()) n += h.tail->component_bound(std::max(lo, h.tail->t0()), b);
                          return n;
                        },
                    },
                    kind_);
}

bool TimeScale::discrete() const {
  return std::visit(overloaded{
                        [](const scale_kind::UniformGrid&) { return true; },
                        [](const scale_kind::GeometricGrid&) { return true; },
                        [](const scale_kind::HybridUnion& h) {
                          return h.tail->discrete() &&
                                 std::all_of(h.pieces.begin(), h.pieces.end(),
                                             [](const Component& c) { return c.is_point(); });
                        },
                        [](const auto&) { return false; },
                    },
                    kind_);
}

std::optional<double> TimeScale::period() const {
  return std::visit(overloaded{
                        [](const scale_kind::ContinuousRay&) -> std::optional<double> { return 0.0; },
                        [](const scale_kind::UniformGrid& g) -> std::optional<double> { return g.step; },
                        [](const scale_kind::GeometricGrid&) -> std::optional<double> { return std::nullopt; },
                        [](const scale_kind::PeriodicPattern& p) -> std::optional<double> { return p.on + p.gap; },
                        [](const scale_kind::HybridUnion& h) { return h.tail->period(); },
                    },
                    kind_);
}

double TimeScale::periodic_from() const {
  if (const auto* h = std::get_if<scale_kind::HybridUnion>(&kind_)) return h->tail->periodic_from();
  return t0_;
}

std::string TimeScale::describe() const {
  const std::string t0 = format_number(t0_);
  return std::visit(
      overloaded{
          [&](const scale_kind::ContinuousRay&) { return "ray(t0=" + t0 + ")"; },
          [&](const scale_kind::UniformGrid& g) {
            return "uniform(t0=" + t0 + ",step=" + format_number(g.step) + ")";
          },
          [&](const scale_kind::GeometricGrid& g) {
            return "geometric(t0=" + t0 + ",ratio=" + format_number(g.ratio) + ")";
          },
          [&](const scale_kind::PeriodicPattern& p) {
            return "periodic(t0=" + t0 + ",on=" + format_number(p.on) + ",gap=" + format_number(p.gap) + ")";
          },
          [&](const scale_kind::HybridUnion& h) {
            std::string s = "hybrid(";
            for (const auto& c : h.pieces) {
              s += c.is_point() ? "{" + format_number(c.lo) + "}"
                                : "[" + format_number(c.lo) + "," + format_number(c.hi) + "]";
              s += ",";
            }
            return s + "tail=" + h.tail->describe() + ")";
          },
      },
      kind_);
}

bool operator==(const TimeScale& a, const TimeScale& b) {
  if (a.t0_ != b.t0_ || a.kind_.index() != b.kind_.index()) return false;
  return std::visit(
      overloaded{
          [](const scale_kind::ContinuousRay&, const scale_kind::ContinuousRay&) { return true; },
          [](const scale_kind::UniformGrid& x, const scale_kind::UniformGrid& y) { return x.step == y.step; },
          [](const scale_kind::GeometricGrid& x, const scale_kind::GeometricGrid& y) { return x.ratio == y.ratio; },
          [](const scale_kind::PeriodicPattern& x, const scale_kind::PeriodicPattern& y) {
            return x.on == y.on && x.gap == y.gap;
          },
          [](const scale_kind::HybridUnion& x, const scale_kind::HybridUnion& y) {
            return x.pieces == y.pieces && *x.tail == *y.tail;
          },
          [](const auto&, const auto&) { return false; },
      },
      a.kind_, b.kind_);
}

}  // namespace tsconv
