#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tsconv {

/// A maximal connected piece of T ∩ [a, b]. Isolated points of T are
/// `Point`s; pieces of interval components (even when clipped down to a
/// single value) are `Interval`s.
struct Component {
  enum class Kind { Point, Interval };
  Kind kind = Kind::Point;
  double lo = 0.0;
  double hi = 0.0;

  static Component point(double p) { return {Kind::Point, p, p}; }
  static Component interval(double lo, double hi) { return {Kind::Interval, lo, hi}; }

  bool is_point() const { return kind == Kind::Point; }
  friend bool operator==(const Component&, const Component&) = default;
};

class TimeScale;

namespace scale_kind {
struct ContinuousRay {};
struct UniformGrid {
  double step;
};
struct GeometricGrid {
  double ratio;
};
struct PeriodicPattern {
  double on;
  double gap;
};
struct HybridUnion {
  std::vector<Component> pieces;
  std::shared_ptr<const TimeScale> tail;
};
}  // namespace scale_kind

/// Closed, unbounded-above subset of (0, ∞) described by a generator.
///
/// Every kind has inf T = t0 > 0 and sup T = ∞. Grid points are produced by
/// one canonical formula per kind so that membership and the jump operator
/// are exact on the produced doubles.
class TimeScale {
 public:
  enum class Kind { ContinuousRay, UniformGrid, GeometricGrid, PeriodicPattern, HybridUnion };

  static TimeScale continuous_ray(double t0);
  static TimeScale uniform_grid(double t0, double step);
  static TimeScale geometric_grid(double t0, double ratio);
  /// Blocks [t0 + k(on+gap), t0 + k(on+gap) + on]; gap == 0 yields a ray.
  static TimeScale periodic_pattern(double t0, double on, double gap);
  /// Finitely many bounded pieces followed by an unbounded tail scale.
  static TimeScale hybrid(std::vector<Component> pieces, const TimeScale& tail);

  Kind kind() const;
  double t0() const { return t0_; }

  bool contains(double x) const;
  /// Forward jump σ(t) = inf{s ∈ T : s > t}. Throws NotInTimeScale.
  double sigma(double t) const;
  /// μ(t) = σ(t) − t.
  double graininess(double t) const;
  bool right_dense(double t) const { return sigma(t) == t; }

  /// max{s ∈ T : s ≤ x}, empty when x < t0.
  std::optional<double> floor(double x) const;
  /// min{s ∈ T : s ≥ x}.
  double ceil(double x) const;
  /// inf{s ∈ T : s > x}; equals σ(x) for x ∈ T.
  double next_after(double x) const;

  /// Maximal components of T ∩ [a, b], ordered. Throws InvalidWindow if a > b.
  std::vector<Component> decompose_window(double a, double b) const;
  /// Cheap upper bound on the number of components of T ∩ [a, b].
  double component_bound(double a, double b) const;

  /// True when every point of T is isolated.
  bool discrete() const;
  /// Period of T beyond periodic_from(); 0 means every period works
  /// (a ray), empty means T is not eventually periodic.
  std::optional<double> period() const;
  double periodic_from() const;

  /// Enumeration of discrete grids: element(k) for k ≥ 0 (UniformGrid and
  /// GeometricGrid only).
  double element(std::int64_t k) const;
  /// Largest k with element(k) ≤ x, or -1 when x < t0.
  std::int64_t index_floor(double x) const;
  bool enumerable() const;

  std::string describe() const;

  friend bool operator==(const TimeScale& a, const TimeScale& b);

 private:
  using Variant = std::variant<scale_kind::ContinuousRay, scale_kind::UniformGrid,
                               scale_kind::GeometricGrid, scale_kind::PeriodicPattern,
                               scale_kind::HybridUnion>;
  TimeScale(double t0, Variant v) : t0_(t0), kind_(std::move(v)) {}

  double t0_;
  Variant kind_;
};

/// Exact q^n by repeated squaring (n ≥ 0).
double pow_int(double q, std::int64_t n);

}  // namespace tsconv
