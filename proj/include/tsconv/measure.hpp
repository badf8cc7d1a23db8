#pragma once

#include "tsconv/tsset.hpp"

namespace tsconv {

struct MeasureValue {
  double value = 0.0;
  /// False once a numerically located endpoint contributed or a difference rounded.
  bool exact = true;
};

/// [a,b) is HalfOpenLR, (a,b] is HalfOpenRL.
enum class IntervalKind { Open, HalfOpenLR, HalfOpenRL, Closed };

IntervalKind parse_interval_kind(const std::string& name);
std::string to_string(IntervalKind k);

/// μ_Δ({a}) = σ(a) − a.
MeasureValue measure_point(const TimeScale& T, double a);
MeasureValue measure_interval(const TimeScale& T, IntervalKind kind, double a, double b);

/// μ_Δ(S ∩ [t0, t]_T).
MeasureValue measure_set_window(const TsSet& S, double t);
MeasureValue measure_set_window(const TsSet& S, double t, Budget& budget);

}  // namespace tsconv
