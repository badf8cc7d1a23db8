#include "tsconv/measure.hpp"

#include "tsconv/numeric.hpp"

namespace tsconv {

namespace {

void require_member(const TimeScale& T, double x) {
  if (!T.contains(x)) throw NotInTimeScale(format_number(x) + " is not a point of " + T.describe());
}

// hi − lo, flagged inexact when the double subtraction rounds.
MeasureValue difference(double hi, double lo) {
  const double d = hi - lo;
  const double bv = d - hi;
  const double err = (hi - (d - bv)) + (-lo - bv);
  return {d, err == 0.0};
}

}  // namespace

IntervalKind parse_interval_kind(const std::string& name) {
  if (name == "open") return IntervalKind::Open;
  if (name == "closed") return IntervalKind::Closed;
  if (name == "half_open_lr") return IntervalKind::HalfOpenLR;
  if (name == "half_open_rl") return IntervalKind::HalfOpenRL;
  throw ConfigError("unknown interval kind '" + name + "' (open, closed, half_open_lr, half_open_rl)");
}

std::string to_string(IntervalKind k) {
  switch (k) {
    case IntervalKind::Open:
      return "open";
    case IntervalKind::HalfOpenLR:
      return "half_open_lr";
    case IntervalKind::HalfOpenRL:
      return "half_open_rl";
    case IntervalKind::Closed:
      return "closed";
  }
  return "?";
}

MeasureValue measure_point(const TimeScale& T, double a) {
  require_member(T, a);
  return difference(T.sigma(a), a);
}

MeasureValue measure_interval(const TimeScale& T, IntervalKind kind, double a, double b) {
  require_member(T, a);
  require_member(T, b);
  if (a > b) throw InvalidInterval("interval with a > b");
  if (a == b && kind != IntervalKind::Closed) return {0.0, true};
  switch (kind) {
    case IntervalKind::HalfOpenLR:
      return difference(b, a);
    case IntervalKind::Closed:
      return difference(T.sigma(b), a);
    case IntervalKind::Open:
      return difference(b, T.sigma(a));
    case IntervalKind::HalfOpenRL:
      return difference(T.sigma(b), T.sigma(a));
  }
  return {};
}

MeasureValue measure_set_window(const TsSet& S, double t, Budget& budget) {
  const Span window = prefix_window(S.scale(), t);
  if (auto m = S.closed_measure(window.hi)) return {*m, true};
  const SpanList r = S.resolve(window, budget);
  return {measure(S.scale(), r), r.exact};
}

MeasureValue measure_set_window(const TsSet& S, double t) {
  Budget unlimited;
  return measure_set_window(S, t, unlimited);
}

}  // namespace tsconv
