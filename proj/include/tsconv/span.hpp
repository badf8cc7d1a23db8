#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsconv/timescale.hpp"

namespace tsconv {

/// Time-scale interval with open/closed ends. After `normalize` both
/// endpoints are points of T, which is what the measure formulas need.
struct Span {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;

  static Span closed(double lo, double hi) { return {lo, hi, true, true}; }
  static Span point(double p) { return {p, p, true, true}; }

  bool contains(double x) const {
    return (lo_closed ? x >= lo : x > lo) && (hi_closed ? x <= hi : x < hi);
  }
  /// Empty as a real interval.
  bool degenerate() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }

  friend bool operator==(const Span&, const Span&) = default;
};

std::string to_string(const Span& s);

/// Moves both endpoints into T; returns nothing when T ∩ span is empty.
std::optional<Span> normalize(const TimeScale& T, Span s);

/// Lebesgue Δ-measure of a normalized span:
///   [a,b) -> b - a,  [a,b] -> σ(b) - a,  (a,b) -> b - σ(a),  (a,b] -> σ(b) - σ(a).
double span_measure(const TimeScale& T, const Span& s);

/// Sorted, pairwise disjoint spans plus an exactness flag (false once a
/// numerically located endpoint is involved).
struct SpanList {
  std::vector<Span> spans;
  bool exact = true;

  bool empty() const { return spans.empty(); }
  std::size_t size() const { return spans.size(); }
  bool contains(double x) const;
  std::optional<double> last_point() const;
};

/// All binary operations assume sorted disjoint inputs and produce the same.
SpanList unite(const SpanList& a, const SpanList& b);
SpanList intersect(const TimeScale& T, const SpanList& a, const SpanList& b);
SpanList intersect(const TimeScale& T, const SpanList& a, const Span& window);
/// window ∖ a, renormalized into T.
SpanList complement_within(const TimeScale& T, const SpanList& a, const Span& window);
SpanList subtract(const TimeScale& T, const SpanList& a, const SpanList& b, const Span& window);

/// Merges overlapping/touching spans of an arbitrary list and drops empties.
SpanList canonicalize(const TimeScale& T, std::vector<Span> spans, bool exact = true);

/// Appends s to sorted normalized spans, joining it with the last span when
/// they overlap, touch, or no point of T lies between them.
void push_merged(const TimeScale& T, std::vector<Span>& out, const Span& s);

/// Clips every span to (-∞, t] (t ∈ T).
SpanList clip_above(const SpanList& a, double t);

double measure(const TimeScale& T, const SpanList& a);

}  // namespace tsconv
