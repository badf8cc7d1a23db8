#include "tsconv/span.hpp"

#include <algorithm>

#include "tsconv/numeric.hpp"

namespace tsconv {

namespace {

bool lo_before(const Span& a, const Span& b) {
  if (a.lo != b.lo) return a.lo < b.lo;
  return a.lo_closed && !b.lo_closed;
}

// a is sorted before b; do they overlap or touch so that their union is one span?
bool joins(const Span& a, const Span& b) {
  return a.hi > b.lo || (a.hi == b.lo && (a.hi_closed || b.lo_closed));
}

void extend(Span& cur, const Span& next) {
  if (next.hi > cur.hi) {
    cur.hi = next.hi;
    cur.hi_closed = next.hi_closed;
  } else if (next.hi == cur.hi) {
    cur.hi_closed = cur.hi_closed || next.hi_closed;
  }
}

void push_merged(std::vector<Span>& out, const Span& s) {
  if (!out.empty() && joins(out.back(), s)) {
    extend(out.back(), s);
  } else {
    out.push_back(s);
  }
}

SpanList renormalize(const TimeScale& T, std::vector<Span> spans, bool exact) {
  SpanList out;
  out.exact = exact;
  out.spans.reserve(spans.size());
  for (const auto& s : spans) {
    if (auto n = normalize(T, s)) push_merged(T, out.spans, *n);
  }
  return out;
}

}  // namespace

void push_merged(const TimeScale& T, std::vector<Span>& out, const Span& s) {
  if (!out.empty()) {
    Span& last = out.back();
    if (joins(last, s) || (last.hi_closed && s.lo_closed && last.hi < s.lo && T.sigma(last.hi) == s.lo)) {
      extend(last, s);
      return;
    }
  }
  out.push_back(s);
}

std::string to_string(const Span& s) {
  return std::string(s.lo_closed ? "[" : "(") + format_number(s.lo) + "," + format_number(s.hi) +
         (s.hi_closed ? "]" : ")");
}

std::optional<Span> normalize(const TimeScale& T, Span s) {
  if (s.degenerate()) return std::nullopt;
  if (!T.contains(s.lo)) {
    s.lo = T.ceil(s.lo);
    s.lo_closed = true;
  } else if (!s.lo_closed) {
    const double next = T.sigma(s.lo);
    if (next > s.lo) {
      s.lo = next;
      s.lo_closed = true;
    }
  }
  if (!T.contains(s.hi)) {
    const auto f = T.floor(s.hi);
    if (!f) return std::nullopt;
    s.hi = *f;
    s.hi_closed = true;
  }
  if (s.degenerate()) return std::nullopt;
  return s;
}

double span_measure(const TimeScale& T, const Span& s) {
  const double a = s.lo_closed ? s.lo : T.sigma(s.lo);
  const double b = s.hi_closed ? T.sigma(s.hi) : s.hi;
  return b - a;
}

bool SpanList::contains(double x) const {
  auto it = std::upper_bound(spans.begin(), spans.end(), x, [](double v, const Span& s) { return v < s.lo; });
  if (it == spans.begin()) return false;
  --it;
  return it->contains(x);
}

std::optional<double> SpanList::last_point() const {
  if (spans.empty()) return std::nullopt;
  return spans.back().hi;
}

SpanList unite(const SpanList& a, const SpanList& b) {
  SpanList out;
  out.exact = a.exact && b.exact;
  out.spans.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    const bool take_a = j >= b.size() || (i < a.size() && lo_before(a.spans[i], b.spans[j]));
    push_merged(out.spans, take_a ? a.spans[i++] : b.spans[j++]);
  }
  return out;
}

SpanList intersect(const TimeScale& T, const SpanList& a, const SpanList& b) {
  std::vector<Span> raw;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const Span& x = a.spans[i];
    const Span& y = b.spans[j];
    Span s;
    if (x.lo != y.lo) {
      s.lo = std::max(x.lo, y.lo);
      s.lo_closed = x.lo > y.lo ? x.lo_closed : y.lo_closed;
    } else {
      s.lo = x.lo;
      s.lo_closed = x.lo_closed && y.lo_closed;
    }
    if (x.hi != y.hi) {
      s.hi = std::min(x.hi, y.hi);
      s.hi_closed = x.hi < y.hi ? x.hi_closed : y.hi_closed;
    } else {
      s.hi = x.hi;
      s.hi_closed = x.hi_closed && y.hi_closed;
    }
    if (!s.degenerate()) raw.push_back(s);
    if (x.hi < y.hi || (x.hi == y.hi && !x.hi_closed)) {
      ++i;
    } else {
      ++j;
    }
  }
  return renormalize(T, std::move(raw), a.exact && b.exact);
}

SpanList intersect(const TimeScale& T, const SpanList& a, const Span& window) {
  SpanList w;
  w.spans.push_back(window);
  return intersect(T, a, w);
}

SpanList complement_within(const TimeScale& T, const SpanList& a, const Span& window) {
  std::vector<Span> gaps;
  double cursor = window.lo;
  bool cursor_closed = window.lo_closed;
  for (const auto& s : a.spans) {
    if (s.hi < window.lo || s.lo > window.hi) continue;
    gaps.push_back(Span{cursor, s.lo, cursor_closed, !s.lo_closed});
    cursor = s.hi;
    cursor_closed = !s.hi_closed;
  }
  gaps.push_back(Span{cursor, window.hi, cursor_closed, window.hi_closed});
  return renormalize(T, std::move(gaps), a.exact);
}

SpanList subtract(const TimeScale& T, const SpanList& a, const SpanList& b, const Span& window) {
  return intersect(T, a, complement_within(T, intersect(T, b, window), window));
}

SpanList canonicalize(const TimeScale& T, std::vector<Span> spans, bool exact) {
  std::vector<Span> normalized;
  normalized.reserve(spans.size());
  for (const auto& s : spans) {
    if (auto n = normalize(T, s)) normalized.push_back(*n);
  }
  std::sort(normalized.begin(), normalized.end(), lo_before);
  SpanList out;
  out.exact = exact;
  for (const auto& s : normalized) push_merged(T, out.spans, s);
  return out;
}

SpanList clip_above(const SpanList& a, double t) {
  SpanList out;
  out.exact = a.exact;
  for (const auto& s : a.spans) {
    if (s.lo > t || (s.lo == t && !s.lo_closed)) break;
    Span c = s;
    if (c.hi > t) {
      c.hi = t;
      c.hi_closed = true;
    }
    out.spans.push_back(c);
  }
  return out;
}

double measure(const TimeScale& T, const SpanList& a) {
  CompensatedSum sum;
  for (const auto& s : a.spans) sum += span_measure(T, s);
  return sum.value();
}

}  // namespace tsconv
