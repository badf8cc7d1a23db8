#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tsconv/error.hpp"
#include "tsconv/span.hpp"
#include "tsconv/timescale.hpp"

namespace tsconv {

enum class Tri { Yes, No, Unknown };

/// What is known analytically about the reach of a set.
///   bounded == Yes   : S ⊆ [t0, sup]
///   cobounded == Yes : S ⊇ T ∩ (inf, ∞)
struct Extent {
  Tri bounded = Tri::Unknown;
  double sup = 0.0;
  Tri cobounded = Tri::Unknown;
  double inf = 0.0;
};

/// S ∩ (start, ∞) repeats with `period`. Period 0 means the set is
/// eventually constant: all of T when `full`, empty otherwise.
struct Periodicity {
  double period = 0.0;
  double start = 0.0;
  bool full = false;
};

/// Work counter for enumeration; throws BudgetExhausted past its limit.
class Budget {
 public:
  explicit Budget(std::size_t limit = std::numeric_limits<std::size_t>::max()) : limit_(limit) {}
  void charge(std::size_t n = 1);
  std::size_t used() const { return used_; }
  std::size_t limit() const { return limit_; }

 private:
  std::size_t limit_;
  std::size_t used_ = 0;
};

class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

/// Node of a representable Δ-measurable set. Nodes are immutable and bound
/// to one time scale.
class SetNode {
 public:
  explicit SetNode(TimeScale T) : scale_(std::move(T)) {}
  virtual ~SetNode() = default;

  const TimeScale& scale() const { return scale_; }

  /// S ∩ window, where `window` is normalized into T.
  virtual SpanList resolve(const Span& window, Budget& budget) const = 0;
  /// μ_Δ(S ∩ [t0, t]_T) in closed form, for t ∈ T.
  virtual std::optional<double> closed_measure(double /*t*/) const { return std::nullopt; }
  virtual Extent extent() const { return {}; }
  virtual std::optional<Periodicity> periodicity() const { return std::nullopt; }
  /// Whether μ_Δ(S) = 0.
  virtual Tri null_measure() const { return Tri::Unknown; }
  virtual std::string describe() const = 0;

 private:
  TimeScale scale_;
};

/// Index predicates on an enumerable grid. The predicate is applied to
/// n = k + shift, where k ≥ 0 is the grid index (element(k)).
struct GridPattern {
  enum class Kind { Multiples, Blocks, Squares, Cubes, IndexList };
  Kind kind = Kind::Multiples;
  std::int64_t modulus = 2;  // Multiples: n ≡ residue (mod modulus)
  std::int64_t residue = 0;
  std::int64_t on = 1;  // Blocks: n mod (on + off) < on
  std::int64_t off = 1;
  std::vector<std::int64_t> indices;  // IndexList: sorted values of n
  std::int64_t shift = 1;

  static GridPattern multiples(std::int64_t m, std::int64_t r, std::int64_t shift = 1);
  static GridPattern blocks(std::int64_t on, std::int64_t off, std::int64_t shift = 1);
  static GridPattern squares(std::int64_t shift = 1);
  static GridPattern cubes(std::int64_t shift = 1);
  static GridPattern index_list(std::vector<std::int64_t> n, std::int64_t shift = 1);

  bool matches(std::int64_t n) const;
  /// Number of matching n in [0, x].
  std::int64_t count_le(std::int64_t x) const;
};

/// Sparse real sequence intersected with T: c·b^n (n ≥ 0) or c·n^e (n ≥ 1).
struct PointSequence {
  enum class Kind { Power, Polynomial };
  Kind kind = Kind::Power;
  double base = 2.0;          // Power
  std::int64_t exponent = 2;  // Polynomial
  double scale = 1.0;

  double at(std::int64_t n) const;
  std::int64_t first_index() const { return kind == Kind::Power ? 0 : 1; }
  /// Smallest n ≥ first_index() with at(n) ≥ x.
  std::int64_t index_ceil(double x) const;
};

/// Value handle over a shared immutable SetNode.
class TsSet {
 public:
  explicit TsSet(std::shared_ptr<const SetNode> node);

  static TsSet empty(const TimeScale& T);
  static TsSet whole(const TimeScale& T);
  /// T ∩ ⟨lo, hi⟩; hi may be +∞ for a ray.
  static TsSet range(const TimeScale& T, double lo, double hi, bool lo_closed = true, bool hi_closed = true);
  static TsSet ray(const TimeScale& T, double from, bool closed = true);
  static TsSet points(const TimeScale& T, const std::vector<double>& pts);
  static TsSet spans(const TimeScale& T, std::vector<Span> spans);
  static TsSet pattern(const TimeScale& T, GridPattern p);
  static TsSet sequence(const TimeScale& T, PointSequence seq);
  /// T ∩ ⋃_{k≥0} [start + k·period, start + k·period + width].
  static TsSet blocks(const TimeScale& T, double start, double period, double width);
  /// Union of sets already known to be pairwise disjoint.
  static TsSet disjoint_union(const TimeScale& T, std::vector<TsSet> parts);

  TsSet complement() const;
  friend TsSet operator|(const TsSet& a, const TsSet& b);
  friend TsSet operator&(const TsSet& a, const TsSet& b);
  friend TsSet operator-(const TsSet& a, const TsSet& b);

  const TimeScale& scale() const { return node_->scale(); }
  const SetNode& node() const { return *node_; }
  const std::shared_ptr<const SetNode>& node_ptr() const { return node_; }
  std::string key() const { return node_->describe(); }

  /// S ∩ [t0, t]_T (t is snapped down into T). Throws InvalidWindow if t < t0.
  SpanList resolve(double t) const;
  SpanList resolve(const Span& window) const;
  SpanList resolve(const Span& window, Budget& budget) const { return node_->resolve(window, budget); }
  bool contains(double x) const;

  Extent extent() const { return node_->extent(); }
  std::optional<Periodicity> periodicity() const { return node_->periodicity(); }
  std::optional<double> closed_measure(double t) const { return node_->closed_measure(t); }
  Tri null_measure() const { return node_->null_measure(); }

 private:
  std::shared_ptr<const SetNode> node_;
};

Extent unite_extents(const Extent& a, const Extent& b);
Extent intersect_extents(const Extent& a, const Extent& b);
Extent complement_extent(const Extent& a);

/// Window [t0, t]_T with t snapped down into T.
Span prefix_window(const TimeScale& T, double t);

void require_same_scale(const TimeScale& a, const TimeScale& b, const char* what);

}  // namespace tsconv
