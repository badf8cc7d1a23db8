#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace tsconv {

/// Closed real interval with outward-rounded arithmetic. Empty intervals
/// are not represented; callers only evaluate over nonempty domains.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  static Interval point(double x) { return {x, x}; }
  static Interval entire() {
    const double inf = std::numeric_limits<double>::infinity();
    return {-inf, inf};
  }
  bool contains(double x) const { return lo <= x && x <= hi; }
  double width() const { return hi - lo; }
};

namespace ia {

inline double down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
inline double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

inline Interval widen(double lo, double hi) {
  if (std::isnan(lo) || std::isnan(hi)) return Interval::entire();
  return {down(lo), up(hi)};
}

// 0 · ∞ = 0, which is what bounds of products need.
inline double mul0(double a, double b) { return (a == 0.0 || b == 0.0) ? 0.0 : a * b; }

inline Interval add(Interval a, Interval b) { return widen(a.lo + b.lo, a.hi + b.hi); }
inline Interval sub(Interval a, Interval b) { return widen(a.lo - b.hi, a.hi - b.lo); }
inline Interval neg(Interval a) { return {-a.hi, -a.lo}; }

inline Interval mul(Interval a, Interval b) {
  const double p[] = {mul0(a.lo, b.lo), mul0(a.lo, b.hi), mul0(a.hi, b.lo), mul0(a.hi, b.hi)};
  return widen(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
}

inline Interval div(Interval a, Interval b) {
  if (b.contains(0.0)) return Interval::entire();
  const Interval inv = widen(1.0 / b.hi, 1.0 / b.lo);
  return mul(a, inv);
}

inline Interval abs(Interval a) {
  if (a.lo >= 0.0) return a;
  if (a.hi <= 0.0) return neg(a);
  return {0.0, std::max(-a.lo, a.hi)};
}

inline Interval exp(Interval a) { return widen(std::exp(a.lo), std::exp(a.hi)); }

/// Natural log over the positive part; entire() when a reaches ≤ 0.
inline Interval log(Interval a) {
  if (!(a.lo > 0.0)) return Interval::entire();
  return widen(std::log(a.lo), std::log(a.hi));
}

inline Interval sin(Interval a) {
  constexpr double pi = std::numbers::pi;
  if (!std::isfinite(a.lo) || !std::isfinite(a.hi) || a.width() >= 2.0 * pi) return {-1.0, 1.0};
  double lo = std::min(std::sin(a.lo), std::sin(a.hi));
  double hi = std::max(std::sin(a.lo), std::sin(a.hi));
  // Extrema at π/2 + kπ inside the interval.
  const double k0 = std::ceil((a.lo - pi / 2) / pi - 1e-12);
  for (double k = k0; pi / 2 + k * pi <= a.hi + 1e-12 * std::max(1.0, std::abs(a.hi)); k += 1.0) {
    if (std::fmod(std::abs(k), 2.0) == 0.0) {
      hi = 1.0;
    } else {
      lo = -1.0;
    }
  }
  const Interval r = widen(lo, hi);
  return {std::max(r.lo, -1.0), std::min(r.hi, 1.0)};
}

inline Interval cos(Interval a) { return sin(add(a, widen(std::numbers::pi / 2, std::numbers::pi / 2))); }

/// a^n for integer n.
inline Interval pow_int(Interval a, long n) {
  if (n == 0) return Interval::point(1.0);
  if (n < 0) return div(Interval::point(1.0), pow_int(a, -n));
  const double pl = std::pow(a.lo, static_cast<double>(n));
  const double ph = std::pow(a.hi, static_cast<double>(n));
  if (n % 2 == 1) return widen(pl, ph);
  if (a.lo >= 0.0) return widen(pl, ph);
  if (a.hi <= 0.0) return widen(ph, pl);
  return {0.0, up(std::max(pl, ph))};
}

/// a^b through exp(b·log a); only meaningful for a > 0.
inline Interval pow(Interval a, Interval b) {
  if (b.lo == b.hi && b.lo == std::round(b.lo) && std::abs(b.lo) < 1e9) return pow_int(a, static_cast<long>(b.lo));
  if (!(a.lo > 0.0)) {
    if (a.lo >= 0.0 && b.lo > 0.0) {
      // 0 ≤ a: fall back to bounds at the endpoints of a positive exponent.
      const double c[] = {std::pow(a.lo, b.lo), std::pow(a.lo, b.hi), std::pow(a.hi, b.lo), std::pow(a.hi, b.hi)};
      return widen(*std::min_element(c, c + 4), *std::max_element(c, c + 4));
    }
    return Interval::entire();
  }
  return exp(mul(b, log(a)));
}

}  // namespace ia

}  // namespace tsconv
