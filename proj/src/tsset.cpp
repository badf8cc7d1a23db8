#include "tsconv/tsset.hpp"

#include <algorithm>
#include <cmath>

#include "tsconv/numeric.hpp"

namespace tsconv {

namespace {

std::int64_t isqrt(std::int64_t x) {
  if (x <= 0) return 0;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(x)));
  while (r > 0 && r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

std::int64_t icbrt(std::int64_t x) {
  if (x <= 0) return 0;
  auto r = static_cast<std::int64_t>(std::cbrt(static_cast<double>(x)));
  while (r > 0 && r * r * r > x) --r;
  while ((r + 1) * (r + 1) * (r + 1) <= x) ++r;
  return r;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

std::optional<Span> intersect_span(const Span& a, const Span& b) {
  Span s;
  if (a.lo != b.lo) {
    s.lo = std::max(a.lo, b.lo);
    s.lo_closed = a.lo > b.lo ? a.lo_closed : b.lo_closed;
  } else {
    s.lo = a.lo;
    s.lo_closed = a.lo_closed && b.lo_closed;
  }
  if (a.hi != b.hi) {
    s.hi = std::min(a.hi, b.hi);
    s.hi_closed = a.hi < b.hi ? a.hi_closed : b.hi_closed;
  } else {
    s.hi = a.hi;
    s.hi_closed = a.hi_closed && b.hi_closed;
  }
  if (s.degenerate()) return std::nullopt;
  return s;
}

// Grid index range [first, last] of the elements inside a window.
struct IndexRange {
  std::int64_t first;
  std::int64_t last;
};

IndexRange window_indices(const TimeScale& T, const Span& w) {
  std::int64_t first = 0;
  if (w.lo >= T.t0()) {
    first = T.index_floor(w.lo);
    const double x = T.element(first);
    if (x < w.lo || (x == w.lo && !w.lo_closed)) ++first;
  }
  std::int64_t last = T.index_floor(w.hi);
  if (last >= 0 && T.element(last) == w.hi && !w.hi_closed) --last;
  return {first, last};
}

// ---------------------------------------------------------------------------

class EmptyNode final : public SetNode {
 public:
  using SetNode::SetNode;
  SpanList resolve(const Span&, Budget&) const override { return {}; }
  std::optional<double> closed_measure(double) const override { return 0.0; }
  Extent extent() const override { return {Tri::Yes, scale().t0(), Tri::No, 0.0}; }
  std::optional<Periodicity> periodicity() const override { return Periodicity{0.0, scale().t0(), false}; }
  Tri null_measure() const override { return Tri::Yes; }
  std::string describe() const override { return "empty@" + scale().describe(); }
};

class WholeNode final : public SetNode {
 public:
  using SetNode::SetNode;
  SpanList resolve(const Span& window, Budget& budget) const override {
    budget.charge();
    SpanList out;
    if (auto n = normalize(scale(), window)) out.spans.push_back(*n);
    return out;
  }
  std::optional<double> closed_measure(double t) const override { return scale().sigma(t) - scale().t0(); }
  Extent extent() const override { return {Tri::No, 0.0, Tri::Yes, scale().t0()}; }
  std::optional<Periodicity> periodicity() const override { return Periodicity{0.0, scale().t0(), true}; }
  Tri null_measure() const override { return Tri::No; }
  std::string describe() const override { return "whole@" + scale().describe(); }
};

class RangeNode final : public SetNode {
 public:
  RangeNode(TimeScale T, double lo, double hi, bool lc, bool hc) : SetNode(std::move(T)) {
    const TimeScale& S = scale();
    label_ = std::string(lc ? "[" : "(") + format_number(lo) + "," + format_number(hi) + (hc ? "]" : ")");
    if (std::isinf(hi)) {
      ray_ = true;
      Span s{lo, hi, lc, false};
      if (!S.contains(s.lo)) {
        s.lo = S.ceil(s.lo);
        s.lo_closed = true;
      } else if (!s.lo_closed && S.sigma(s.lo) > s.lo) {
        s.lo = S.sigma(s.lo);
        s.lo_closed = true;
      }
      span_ = s;
    } else {
      span_ = normalize(S, Span{lo, hi, lc, hc});
    }
  }

  SpanList resolve(const Span& window, Budget& budget) const override {
    budget.charge();
    SpanList out;
    if (!span_) return out;
    if (auto s = intersect_span(*span_, window)) {
      if (auto n = normalize(scale(), *s)) out.spans.push_back(*n);
    }
    return out;
  }

  std::optional<double> closed_measure(double t) const override {
    if (!span_) return 0.0;
    Span c = *span_;
    if (c.lo > t || (c.lo == t && !c.lo_closed)) return 0.0;
    if (c.hi > t) {
      c.hi = t;
      c.hi_closed = true;
    }
    return span_measure(scale(), c);
  }

  Extent extent() const override {
    if (!span_) return {Tri::Yes, scale().t0(), Tri::No, 0.0};
    if (ray_) return {Tri::No, 0.0, Tri::Yes, span_->lo};
    return {Tri::Yes, span_->hi, Tri::No, 0.0};
  }
  std::optional<Periodicity> periodicity() const override {
    if (!span_) return Periodicity{0.0, scale().t0(), false};
    if (ray_) return Periodicity{0.0, span_->lo, true};
    return Periodicity{0.0, span_->hi, false};
  }
  Tri null_measure() const override {
    if (!span_) return Tri::Yes;
    if (ray_) return Tri::No;
    return span_measure(scale(), *span_) == 0.0 ? Tri::Yes : Tri::No;
  }
  std::string describe() const override { return "range" + label_ + "@" + scale().describe(); }

 private:
  std::optional<Span> span_;
  bool ray_ = false;
  std::string label_;
};

class FiniteNode final : public SetNode {
 public:
  FiniteNode(TimeScale T, std::vector<Span> spans) : SetNode(std::move(T)) {
    list_ = canonicalize(scale(), std::move(spans));
    CompensatedSum sum;
    prefix_.push_back(0.0);
    for (const auto& s : list_.spans) {
      sum += span_measure(scale(), s);
      prefix_.push_back(sum.value());
    }
  }

  SpanList resolve(const Span& window, Budget& budget) const override {
    auto first = std::lower_bound(list_.spans.begin(), list_.spans.end(), window.lo,
                                  [](const Span& s, double v) { return s.hi < v; });
    SpanList part;
    for (auto it = first; it != list_.spans.end() && it->lo <= window.hi; ++it) {
      budget.charge();
      part.spans.push_back(*it);
    }
    return intersect(scale(), part, window);
  }

  std::optional<double> closed_measure(double t) const override {
    auto it = std::upper_bound(list_.spans.begin(), list_.spans.end(), t,
                               [](double v, const Span& s) { return v < s.lo; });
    auto idx = static_cast<std::size_t>(it - list_.spans.begin());
    if (idx == 0) return 0.0;
    const Span& last = list_.spans[idx - 1];
    if (last.hi <= t) return prefix_[idx];
    if (last.lo == t && !last.lo_closed) return prefix_[idx - 1];
    Span c = last;
    c.hi = t;
    c.hi_closed = true;
    return prefix_[idx - 1] + span_measure(scale(), c);
  }

  Extent extent() const override {
    const double sup = list_.empty() ? scale().t0() : list_.spans.back().hi;
    return {Tri::Yes, sup, Tri::No, 0.0};
  }
  std::optional<Periodicity> periodicity() const override {
    return Periodicity{0.0, list_.empty() ? scale().t0() : list_.spans.back().hi, false};
  }
  Tri null_measure() const override { return prefix_.back() == 0.0 ? Tri::Yes : Tri::No; }
  std::string describe() const override {
    std::string s = "finite{";
    for (const auto& sp : list_.spans) s += to_string(sp) + ",";
    return s + "}@" + scale().describe();
  }

 private:
  SpanList list_;
  std::vector<double> prefix_;
};

class PatternNode final : public SetNode {
 public:
  PatternNode(TimeScale T, GridPattern p) : SetNode(std::move(T)), p_(std::move(p)) {
    if (!scale().enumerable()) {
      throw InvalidTimeScale("grid patterns need a uniform or geometric grid, got " + scale().describe());
    }
    if (p_.kind == GridPattern::Kind::IndexList) {
      std::sort(p_.indices.begin(), p_.indices.end());
      p_.indices.erase(std::unique(p_.indices.begin(), p_.indices.end()), p_.indices.end());
      p_.indices.erase(std::remove_if(p_.indices.begin(), p_.indices.end(),
                                      [&](std::int64_t n) { return n < p_.shift || n < 0; }),
                       p_.indices.end());
    }
  }

  SpanList resolve(const Span& window, Budget& budget) const override {
    SpanList out;
    const auto [k_first, k_last] = window_indices(scale(), window);
    const std::int64_t n_lo = std::max<std::int64_t>(k_first + p_.shift, 0);
    const std::int64_t n_hi = k_last + p_.shift;
    if (n_lo > n_hi) return out;
    auto run = [&](std::int64_t a, std::int64_t b) {
      budget.charge();
      out.spans.push_back(Span::closed(scale().element(a - p_.shift), scale().element(b - p_.shift)));
    };
    switch (p_.kind) {
      case GridPattern::Kind::Multiples: {
        if (p_.modulus == 1) {
          run(n_lo, n_hi);
          break;
        }
        const std::int64_t first = n_lo + floor_mod(p_.residue - n_lo, p_.modulus);
        for (std::int64_t n = first; n <= n_hi; n += p_.modulus) run(n, n);
        break;
      }
      case GridPattern::Kind::Blocks: {
        const std::int64_t period = p_.on + p_.off;
        std::int64_t n = n_lo;
        while (n <= n_hi) {
          const std::int64_t base = n - floor_mod(n, period);
          if (n - base < p_.on) run(n, std::min(base + p_.on - 1, n_hi));
          n = base + period;
        }
        break;
      }
      case GridPattern::Kind::Squares: {
        std::int64_t j = isqrt(n_lo);
        if (j * j < n_lo) ++j;
        for (; j * j <= n_hi; ++j) run(j * j, j * j);
        break;
      }
      case GridPattern::Kind::Cubes: {
        std::int64_t j = icbrt(n_lo);
        if (j * j * j < n_lo) ++j;
        for (; j * j * j <= n_hi; ++j) run(j * j * j, j * j * j);
        break;
      }
      case GridPattern::Kind::IndexList: {
        auto it = std::lower_bound(p_.indices.begin(), p_.indices.end(), n_lo);
        for (; it != p_.indices.end() && *it <= n_hi; ++it) run(*it, *it);
        break;
      }
    }
    return out;
  }

  std::optional<double> closed_measure(double t) const override {
    const TimeScale& T = scale();
    const std::int64_t k = T.index_floor(t);
    if (k < 0) return 0.0;
    if (T.kind() == TimeScale::Kind::UniformGrid) {
      const double step = T.element(1) - T.element(0);
      const std::int64_t count = p_.count_le(k + p_.shift) - p_.count_le(p_.shift - 1);
      return static_cast<double>(count) * step;
    }
    CompensatedSum sum;
    for (std::int64_t i = 0; i <= k; ++i) {
      if (p_.matches(i + p_.shift)) sum += T.element(i + 1) - T.element(i);
    }
    return sum.value();
  }

  Extent extent() const override {
    if (p_.kind == GridPattern::Kind::IndexList) {
      const double sup = p_.indices.empty() ? scale().t0() : scale().element(p_.indices.back() - p_.shift);
      return {Tri::Yes, sup, Tri::No, 0.0};
    }
    if (covers_all()) return {Tri::No, 0.0, Tri::Yes, scale().t0()};
    return {Tri::No, 0.0, Tri::No, 0.0};
  }

  std::optional<Periodicity> periodicity() const override {
    const TimeScale& T = scale();
    if (p_.kind == GridPattern::Kind::IndexList) return Periodicity{0.0, extent().sup, false};
    if (covers_all()) return Periodicity{0.0, T.t0(), true};
    if (T.kind() != TimeScale::Kind::UniformGrid) return std::nullopt;
    const double step = T.element(1) - T.element(0);
    if (p_.kind == GridPattern::Kind::Multiples) {
      return Periodicity{static_cast<double>(p_.modulus) * step, T.t0(), false};
    }
    if (p_.kind == GridPattern::Kind::Blocks) {
      return Periodicity{static_cast<double>(p_.on + p_.off) * step, T.t0(), false};
    }
    return std::nullopt;
  }

  Tri null_measure() const override {
    return p_.kind == GridPattern::Kind::IndexList && p_.indices.empty() ? Tri::Yes : Tri::No;
  }

  std::string describe() const override {
    std::string s = "pattern(";
    switch (p_.kind) {
      case GridPattern::Kind::Multiples:
        s += "mult," + std::to_string(p_.modulus) + "," + std::to_string(p_.residue);
        break;
      case GridPattern::Kind::Blocks:
        s += "blocks," + std::to_string(p_.on) + "," + std::to_string(p_.off);
        break;
      case GridPattern::Kind::Squares:
        s += "squares";
        break;
      case GridPattern::Kind::Cubes:
        s += "cubes";
        break;
      case GridPattern::Kind::IndexList:
        s += "list";
        for (auto n : p_.indices) s += "," + std::to_string(n);
        break;
    }
    return s + ";shift=" + std::to_string(p_.shift) + ")@" + scale().describe();
  }

 private:
  bool covers_all() const {
    return (p_.kind == GridPattern::Kind::Multiples && p_.modulus == 1) ||
           (p_.kind == GridPattern::Kind::Blocks && p_.off == 0);
  }

  GridPattern p_;
};

class SequenceNode final : public SetNode {
 public:
  SequenceNode(TimeScale T, PointSequence seq) : SetNode(std::move(T)), seq_(seq) {
    if (!(seq_.scale > 0.0)) throw ConfigError("sequence scale must be positive");
    if (seq_.kind == PointSequence::Kind::Power && !(seq_.base > 1.0)) {
      throw ConfigError("power sequence base must exceed 1");
    }
    if (seq_.kind == PointSequence::Kind::Polynomial && seq_.exponent < 1) {
      throw ConfigError("polynomial sequence exponent must be at least 1");
    }
  }

  SpanList resolve(const Span& window, Budget& budget) const override {
    SpanList out;
    for (std::int64_t n = seq_.index_ceil(window.lo);; ++n) {
      const double p = seq_.at(n);
      if (p > window.hi || !std::isfinite(p)) break;
      budget.charge();
      if (window.contains(p) && scale().contains(p)) out.spans.push_back(Span::point(p));
    }
    return out;
  }

  Extent extent() const override {
    if (scale().kind() == TimeScale::Kind::ContinuousRay) return {Tri::No, 0.0, Tri::No, 0.0};
    return {};
  }
  Tri null_measure() const override {
    return scale().kind() == TimeScale::Kind::ContinuousRay ? Tri::Yes : Tri::Unknown;
  }
  std::string describe() const override {
    std::string s = seq_.kind == PointSequence::Kind::Power ? "seq(pow," + format_number(seq_.base)
                                                            : "seq(poly," + std::to_string(seq_.exponent);
    return s + "," + format_number(seq_.scale) + ")@" + scale().describe();
  }

 private:
  PointSequence seq_;
};

class BlocksNode final : public SetNode {
 public:
  BlocksNode(TimeScale T, double start, double period, double width)
      : SetNode(std::move(T)), start_(start), period_(period), width_(width) {
    if (!(period_ > 0.0) || !(width_ >= 0.0) || width_ > period_) {
      throw ConfigError("blocks need period > 0 and 0 <= width <= period");
    }
  }

  double block_start(std::int64_t k) const { return start_ + static_cast<double>(k) * period_; }

  SpanList resolve(const Span& window, Budget& budget) const override {
    SpanList out;
    auto k = static_cast<std::int64_t>(std::floor((window.lo - start_ - width_) / period_));
    k = std::max<std::int64_t>(k, 0);
    while (k > 0 && block_start(k - 1) + width_ >= window.lo) --k;
    for (;; ++k) {
      const double s = block_start(k);
      if (s > window.hi) break;
      budget.charge();
      auto clipped = intersect_span(Span::closed(s, s + width_), window);
      if (!clipped) continue;
      if (auto n = normalize(scale(), *clipped)) {
        if (!out.spans.empty() && out.spans.back().hi >= n->lo) {
          out.spans.back().hi = std::max(out.spans.back().hi, n->hi);
        } else {
          out.spans.push_back(*n);
        }
      }
    }
    return out;
  }

  std::optional<double> closed_measure(double t) const override {
    if (scale().kind() != TimeScale::Kind::ContinuousRay) return std::nullopt;
    return covered(t) - covered(scale().t0());
  }

  Extent extent() const override {
    if (width_ >= period_) return {Tri::No, 0.0, Tri::Yes, std::max(start_, scale().t0())};
    if (scale().kind() == TimeScale::Kind::ContinuousRay) return {Tri::No, 0.0, Tri::No, 0.0};
    return {};
  }
  std::optional<Periodicity> periodicity() const override {
    if (width_ >= period_) return Periodicity{0.0, std::max(start_, scale().t0()), true};
    return Periodicity{period_, start_, false};
  }
  Tri null_measure() const override {
    if (scale().kind() != TimeScale::Kind::ContinuousRay) return Tri::Unknown;
    return width_ == 0.0 ? Tri::Yes : Tri::No;
  }
  std::string describe() const override {
    return "blocks(" + format_number(start_) + "," + format_number(period_) + "," + format_number(width_) + ")@" +
           scale().describe();
  }

 private:
  // Total length of the blocks inside (-∞, x].
  double covered(double x) const {
    if (x < start_) return 0.0;
    const double q = std::floor((x - start_) / period_);
    const double r = x - start_ - q * period_;
    return q * width_ + std::min(r, width_);
  }

  double start_;
  double period_;
  double width_;
};

Tri tri_and(Tri a, Tri b) {
  if (a == Tri::No || b == Tri::No) return Tri::No;
  if (a == Tri::Yes && b == Tri::Yes) return Tri::Yes;
  return Tri::Unknown;
}

bool divides(double small, double big) {
  const double q = big / small;
  return std::abs(q - std::round(q)) < 1e-9 * std::max(1.0, q);
}

std::optional<Periodicity> union_periodicity(const std::optional<Periodicity>& a,
                                             const std::optional<Periodicity>& b) {
  if (!a || !b) return std::nullopt;
  const double start = std::max(a->start, b->start);
  if (a->period == 0.0 && b->period == 0.0) return Periodicity{0.0, start, a->full || b->full};
  if (a->period == 0.0) return a->full ? Periodicity{0.0, start, true} : Periodicity{b->period, start, false};
  if (b->period == 0.0) return b->full ? Periodicity{0.0, start, true} : Periodicity{a->period, start, false};
  if (divides(a->period, b->period)) return Periodicity{b->period, start, false};
  if (divides(b->period, a->period)) return Periodicity{a->period, start, false};
  return std::nullopt;
}

std::optional<Periodicity> complement_periodicity(const std::optional<Periodicity>& a) {
  if (!a) return std::nullopt;
  Periodicity p = *a;
  if (p.period == 0.0) p.full = !p.full;
  return p;
}

std::optional<Periodicity> intersection_periodicity(const std::optional<Periodicity>& a,
                                                    const std::optional<Periodicity>& b) {
  return complement_periodicity(union_periodicity(complement_periodicity(a), complement_periodicity(b)));
}

class ComplementNode final : public SetNode {
 public:
  explicit ComplementNode(TsSet child) : SetNode(child.scale()), child_(std::move(child)) {}

  SpanList resolve(const Span& window, Budget& budget) const override {
    budget.charge();
    return complement_within(scale(), child_.resolve(window, budget), window);
  }
  std::optional<double> closed_measure(double t) const override {
    auto c = child_.closed_measure(t);
    if (!c) return std::nullopt;
    return (scale().sigma(t) - scale().t0()) - *c;
  }
  Extent extent() const override { return complement_extent(child_.extent()); }
  std::optional<Periodicity> periodicity() const override { return complement_periodicity(child_.periodicity()); }
  Tri null_measure() const override { return child_.null_measure() == Tri::Yes ? Tri::No : Tri::Unknown; }
  std::string describe() const override { return "not(" + child_.key() + ")"; }

  const TsSet& child() const { return child_; }

 private:
  TsSet child_;
};

class BinaryNode final : public SetNode {
 public:
  enum class Op { Union, Intersection, Difference };

  BinaryNode(Op op, TsSet a, TsSet b) : SetNode(a.scale()), op_(op), a_(std::move(a)), b_(std::move(b)) {}

  SpanList resolve(const Span& window, Budget& budget) const override {
    budget.charge();
    SpanList ra = a_.resolve(window, budget);
    if (op_ == Op::Union) return unite(ra, b_.resolve(window, budget));
    if (ra.empty()) return ra;
    // Resolve b over the hull of a when that is cheap, else only where a lives.
    const Span hull{ra.spans.front().lo, ra.spans.back().hi, ra.spans.front().lo_closed, ra.spans.back().hi_closed};
    Budget trial(std::min(budget.limit() - std::min(budget.used(), budget.limit()), 4 * ra.size() + 64));
    try {
      const SpanList rb = b_.resolve(hull, trial);
      budget.charge(trial.used());
      return op_ == Op::Intersection ? intersect(scale(), ra, rb) : subtract(scale(), ra, rb, hull);
    } catch (const BudgetExhausted&) {
      budget.charge(trial.used());
    }
    std::vector<Span> out;
    bool exact = ra.exact;
    for (const auto& s : ra.spans) {
      SpanList rb = b_.resolve(s, budget);
      exact = exact && rb.exact;
      if (op_ == Op::Difference) rb = complement_within(scale(), rb, s);
      out.insert(out.end(), rb.spans.begin(), rb.spans.end());
    }
    return canonicalize(scale(), std::move(out), exact);
  }

  Extent extent() const override {
    switch (op_) {
      case Op::Union:
        return unite_extents(a_.extent(), b_.extent());
      case Op::Intersection:
        return intersect_extents(a_.extent(), b_.extent());
      case Op::Difference:
        return intersect_extents(a_.extent(), complement_extent(b_.extent()));
    }
    return {};
  }

  std::optional<Periodicity> periodicity() const override {
    switch (op_) {
      case Op::Union:
        return union_periodicity(a_.periodicity(), b_.periodicity());
      case Op::Intersection:
        return intersection_periodicity(a_.periodicity(), b_.periodicity());
      case Op::Difference:
        return intersection_periodicity(a_.periodicity(), complement_periodicity(b_.periodicity()));
    }
    return std::nullopt;
  }

  Tri null_measure() const override {
    switch (op_) {
      case Op::Union:
        return tri_and(a_.null_measure(), b_.null_measure());
      case Op::Intersection:
        return a_.null_measure() == Tri::Yes || b_.null_measure() == Tri::Yes ? Tri::Yes : Tri::Unknown;
      case Op::Difference:
        return a_.null_measure() == Tri::Yes ? Tri::Yes : Tri::Unknown;
    }
    return Tri::Unknown;
  }

  std::string describe() const override {
    static const char* names[] = {"or", "and", "minus"};
    return std::string(names[static_cast<int>(op_)]) + "(" + a_.key() + "," + b_.key() + ")";
  }

 private:
  Op op_;
  TsSet a_;
  TsSet b_;
};

class DisjointUnionNode final : public SetNode {
 public:
  DisjointUnionNode(TimeScale T, std::vector<TsSet> parts) : SetNode(std::move(T)), parts_(std::move(parts)) {}

  SpanList resolve(const Span& window, Budget& budget) const override {
    SpanList out;
    for (const auto& p : parts_) out = unite(out, p.resolve(window, budget));
    return out;
  }
  std::optional<double> closed_measure(double t) const override {
    CompensatedSum sum;
    for (const auto& p : parts_) {
      auto m = p.closed_measure(t);
      if (!m) return std::nullopt;
      sum += *m;
    }
    return sum.value();
  }
  Extent extent() const override {
    Extent e{Tri::Yes, scale().t0(), Tri::No, 0.0};
    for (const auto& p : parts_) e = unite_extents(e, p.extent());
    return e;
  }
  std::optional<Periodicity> periodicity() const override {
    std::optional<Periodicity> acc = Periodicity{0.0, scale().t0(), false};
    for (const auto& p : parts_) acc = union_periodicity(acc, p.periodicity());
    return acc;
  }
  Tri null_measure() const override {
    Tri acc = Tri::Yes;
    for (const auto& p : parts_) acc = tri_and(acc, p.null_measure());
    return acc;
  }
  std::string describe() const override {
    std::string s = "dunion(";
    for (const auto& p : parts_) s += p.key() + ";";
    return s + ")";
  }

 private:
  std::vector<TsSet> parts_;
};

bool is_empty_node(const TsSet& s) { return dynamic_cast<const EmptyNode*>(&s.node()) != nullptr; }
bool is_whole_node(const TsSet& s) { return dynamic_cast<const WholeNode*>(&s.node()) != nullptr; }

}  // namespace

Extent unite_extents(const Extent& a, const Extent& b) {
  Extent e;
  e.bounded = tri_and(a.bounded, b.bounded);
  if (e.bounded == Tri::Yes) e.sup = std::max(a.sup, b.sup);
  if (a.cobounded == Tri::Yes || b.cobounded == Tri::Yes) {
    e.cobounded = Tri::Yes;
    e.inf = std::numeric_limits<double>::infinity();
    if (a.cobounded == Tri::Yes) e.inf = std::min(e.inf, a.inf);
    if (b.cobounded == Tri::Yes) e.inf = std::min(e.inf, b.inf);
  }
  return e;
}

Extent complement_extent(const Extent& a) {
  return {a.cobounded, a.inf, a.bounded, a.sup};
}

Extent intersect_extents(const Extent& a, const Extent& b) {
  return complement_extent(unite_extents(complement_extent(a), complement_extent(b)));
}

void Budget::charge(std::size_t n) {
  used_ += n;
  if (used_ > limit_) throw BudgetExhausted("enumeration budget of " + std::to_string(limit_) + " exhausted");
}

GridPattern GridPattern::multiples(std::int64_t m, std::int64_t r, std::int64_t shift) {
  if (m < 1) throw ConfigError("multiples pattern needs modulus >= 1");
  GridPattern p;
  p.kind = Kind::Multiples;
  p.modulus = m;
  p.residue = floor_mod(r, m);
  p.shift = shift;
  return p;
}

GridPattern GridPattern::blocks(std::int64_t on, std::int64_t off, std::int64_t shift) {
  if (on < 1 || off < 0) throw ConfigError("block pattern needs on >= 1 and off >= 0");
  GridPattern p;
  p.kind = Kind::Blocks;
  p.on = on;
  p.off = off;
  p.shift = shift;
  return p;
}

GridPattern GridPattern::squares(std::int64_t shift) {
  GridPattern p;
  p.kind = Kind::Squares;
  p.shift = shift;
  return p;
}

GridPattern GridPattern::cubes(std::int64_t shift) {
  GridPattern p;
  p.kind = Kind::Cubes;
  p.shift = shift;
  return p;
}

GridPattern GridPattern::index_list(std::vector<std::int64_t> n, std::int64_t shift) {
  GridPattern p;
  p.kind = Kind::IndexList;
  std::sort(n.begin(), n.end());
  p.indices = std::move(n);
  p.shift = shift;
  return p;
}

bool GridPattern::matches(std::int64_t n) const {
  if (n < 0) return false;
  switch (kind) {
    case Kind::Multiples:
      return floor_mod(n, modulus) == residue;
    case Kind::Blocks:
      return floor_mod(n, on + off) < on;
    case Kind::Squares: {
      const auto r = isqrt(n);
      return r * r == n;
    }
    case Kind::Cubes: {
      const auto r = icbrt(n);
      return r * r * r == n;
    }
    case Kind::IndexList:
      return std::binary_search(indices.begin(), indices.end(), n);
  }
  return false;
}

std::int64_t GridPattern::count_le(std::int64_t x) const {
  if (x < 0) return 0;
  switch (kind) {
    case Kind::Multiples:
      return x < residue ? 0 : (x - residue) / modulus + 1;
    case Kind::Blocks: {
      const std::int64_t period = on + off;
      return (x + 1) / period * on + std::min((x + 1) % period, on);
    }
    case Kind::Squares:
      return isqrt(x) + 1;
    case Kind::Cubes:
      return icbrt(x) + 1;
    case Kind::IndexList:
      return std::upper_bound(indices.begin(), indices.end(), x) - std::lower_bound(indices.begin(), indices.end(), 0);
  }
  return 0;
}

double PointSequence::at(std::int64_t n) const {
  if (kind == Kind::Power) return scale * pow_int(base, n);
  return scale * pow_int(static_cast<double>(n), exponent);
}

std::int64_t PointSequence::index_ceil(double x) const {
  const std::int64_t n0 = first_index();
  if (!(x > at(n0))) return n0;
  double guess = kind == Kind::Power ? std::log(x / scale) / std::log(base)
                                     : std::pow(x / scale, 1.0 / static_cast<double>(exponent));
  auto n = std::max<std::int64_t>(static_cast<std::int64_t>(std::floor(guess)), n0);
  while (at(n) < x) ++n;
  while (n > n0 && at(n - 1) >= x) --n;
  return n;
}

TsSet::TsSet(std::shared_ptr<const SetNode> node) : node_(std::move(node)) {
  if (!node_) throw Error("null set node");
}

TsSet TsSet::empty(const TimeScale& T) { return TsSet(std::make_shared<EmptyNode>(T)); }
TsSet TsSet::whole(const TimeScale& T) { return TsSet(std::make_shared<WholeNode>(T)); }

TsSet TsSet::range(const TimeScale& T, double lo, double hi, bool lo_closed, bool hi_closed) {
  if (!(lo <= hi)) throw InvalidInterval("range with lo > hi");
  return TsSet(std::make_shared<RangeNode>(T, lo, hi, lo_closed, hi_closed));
}

TsSet TsSet::ray(const TimeScale& T, double from, bool closed) {
  return range(T, from, std::numeric_limits<double>::infinity(), closed, false);
}

TsSet TsSet::points(const TimeScale& T, const std::vector<double>& pts) {
  std::vector<Span> spans;
  spans.reserve(pts.size());
  for (double p : pts) {
    if (!T.contains(p)) throw NotInTimeScale(format_number(p) + " is not a point of " + T.describe());
    spans.push_back(Span::point(p));
  }
  return TsSet(std::make_shared<FiniteNode>(T, std::move(spans)));
}

TsSet TsSet::spans(const TimeScale& T, std::vector<Span> spans) {
  for (const auto& s : spans) {
    if (!std::isfinite(s.hi)) throw InvalidInterval("explicit spans must be bounded");
  }
  return TsSet(std::make_shared<FiniteNode>(T, std::move(spans)));
}

TsSet TsSet::pattern(const TimeScale& T, GridPattern p) { return TsSet(std::make_shared<PatternNode>(T, std::move(p))); }

TsSet TsSet::sequence(const TimeScale& T, PointSequence seq) { return TsSet(std::make_shared<SequenceNode>(T, seq)); }

TsSet TsSet::blocks(const TimeScale& T, double start, double period, double width) {
  return TsSet(std::make_shared<BlocksNode>(T, start, period, width));
}

TsSet TsSet::disjoint_union(const TimeScale& T, std::vector<TsSet> parts) {
  std::erase_if(parts, [](const TsSet& s) { return is_empty_node(s); });
  for (const auto& p : parts) require_same_scale(T, p.scale(), "disjoint union");
  if (parts.empty()) return empty(T);
  if (parts.size() == 1) return parts.front();
  return TsSet(std::make_shared<DisjointUnionNode>(T, std::move(parts)));
}

TsSet TsSet::complement() const {
  if (is_empty_node(*this)) return whole(scale());
  if (is_whole_node(*this)) return empty(scale());
  if (const auto* c = dynamic_cast<const ComplementNode*>(node_.get())) return c->child();
  return TsSet(std::make_shared<ComplementNode>(*this));
}

TsSet operator|(const TsSet& a, const TsSet& b) {
  require_same_scale(a.scale(), b.scale(), "union");
  if (is_empty_node(a) || is_whole_node(b)) return b;
  if (is_empty_node(b) || is_whole_node(a)) return a;
  return TsSet(std::make_shared<BinaryNode>(BinaryNode::Op::Union, a, b));
}

TsSet operator&(const TsSet& a, const TsSet& b) {
  require_same_scale(a.scale(), b.scale(), "intersection");
  if (is_empty_node(a) || is_whole_node(b)) return a;
  if (is_empty_node(b) || is_whole_node(a)) return b;
  return TsSet(std::make_shared<BinaryNode>(BinaryNode::Op::Intersection, a, b));
}

TsSet operator-(const TsSet& a, const TsSet& b) {
  require_same_scale(a.scale(), b.scale(), "difference");
  if (is_empty_node(a) || is_empty_node(b)) return a;
  if (is_whole_node(b)) return TsSet::empty(a.scale());
  if (is_whole_node(a)) return b.complement();
  return TsSet(std::make_shared<BinaryNode>(BinaryNode::Op::Difference, a, b));
}

Span prefix_window(const TimeScale& T, double t) {
  const auto top = T.floor(t);
  if (!top) throw InvalidWindow("window end " + format_number(t) + " lies below t0 = " + format_number(T.t0()));
  return Span::closed(T.t0(), *top);
}

SpanList TsSet::resolve(double t) const {
  Budget unlimited;
  return node_->resolve(prefix_window(scale(), t), unlimited);
}

SpanList TsSet::resolve(const Span& window) const {
  Budget unlimited;
  return node_->resolve(window, unlimited);
}

bool TsSet::contains(double x) const {
  if (!scale().contains(x)) return false;
  return !resolve(Span::point(x)).empty();
}

void require_same_scale(const TimeScale& a, const TimeScale& b, const char* what) {
  if (!(a == b)) throw ScaleMismatch(std::string(what) + ": sets live on different time scales");
}

}  // namespace tsconv
