#include "tsconv/density.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <mutex>

#include "tsconv/numeric.hpp"

namespace tsconv {

namespace {

bool divides(double small, double big) {
  const double q = big / small;
  return q >= 1.0 - 1e-9 && std::abs(q - std::round(q)) < 1e-9 * q;
}

// Incremental μ_Δ(S ∩ [t0, t]_T) along increasing t.
class WindowAccumulator {
 public:
  WindowAccumulator(const TsSet& S, Budget& budget)
      : S_(S), budget_(budget), closed_(S.closed_measure(S.scale().t0()).has_value()) {}

  // Returns the measure at t and whether the new piece (prev, t] met S.
  std::pair<double, bool> advance(double t) {
    if (closed_) {
      const double m = *S_.closed_measure(t);
      const bool hit = started_ && m > last_;
      started_ = true;
      last_ = m;
      return {m, hit};
    }
    Span piece = started_ ? Span{prev_, t, false, true} : Span::closed(S_.scale().t0(), t);
    bool hit = false;
    if (!(started_ && prev_ == t)) {
      if (auto w = normalize(S_.scale(), piece)) {
        const SpanList r = S_.resolve(*w, budget_);
        hit = !r.empty();
        exact_ = exact_ && r.exact;
        sum_ += measure(S_.scale(), r);
      }
    }
    started_ = true;
    prev_ = t;
    return {sum_.value(), hit};
  }

  bool closed_form() const { return closed_; }
  bool exact() const { return exact_; }

 private:
  const TsSet& S_;
  Budget& budget_;
  bool closed_;
  bool started_ = false;
  bool exact_ = true;
  double prev_ = 0.0;
  double last_ = 0.0;
  CompensatedSum sum_;
};

struct EpochStats {
  double lo = 1.0;
  double hi = 0.0;
  bool any = false;
};

bool stable(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= 0.1 * scale;
}

}  // namespace

std::vector<TracePoint> Profile::trace() const {
  std::vector<TracePoint> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back({s.t, s.measure_s / s.measure_t});
  return out;
}

std::vector<double> default_grid(const TimeScale& T, int epochs, int per_epoch) {
  std::vector<double> grid;
  for (int k = 0; k <= epochs; ++k) {
    for (int j = 0; j < per_epoch; ++j) {
      if (k == epochs && j > 0) break;
      const double x = T.t0() * std::exp2(static_cast<double>(k) + static_cast<double>(j) / per_epoch);
      const double snapped = *T.floor(x);
      if (grid.empty() || snapped > grid.back()) grid.push_back(snapped);
    }
  }
  return grid;
}

namespace {

// Profiles are pure functions of set structure and options; shared across
// ideals and calls.
struct ProfileCache {
  std::mutex mutex;
  std::map<std::string, Profile> entries;
  std::deque<std::string> order;
};

ProfileCache& profile_cache() {
  static ProfileCache cache;
  return cache;
}

constexpr std::size_t kProfileCacheSize = 4096;

Profile compute_profile(const TsSet& S, const ProfileOptions& opts);

}  // namespace

Profile profile(const TsSet& S, const ProfileOptions& opts) {
  const std::string key = S.scale().describe() + "|" + std::to_string(opts.epochs) + "," +
                          std::to_string(opts.per_epoch) + "," + std::to_string(opts.budget) + "|" + S.key();
  ProfileCache& cache = profile_cache();
  {
    std::lock_guard lock(cache.mutex);
    if (auto it = cache.entries.find(key); it != cache.entries.end()) return it->second;
  }
  Profile p = compute_profile(S, opts);
  std::lock_guard lock(cache.mutex);
  if (cache.entries.emplace(key, p).second) {
    cache.order.push_back(key);
    if (cache.order.size() > kProfileCacheSize) {
      cache.entries.erase(cache.order.front());
      cache.order.pop_front();
    }
  }
  return p;
}

namespace {

Profile compute_profile(const TsSet& S, const ProfileOptions& opts) {
  const TimeScale& T = S.scale();
  Profile out;
  std::vector<double> bounds;
  for (int k = 0; k <= opts.epochs; ++k) bounds.push_back(*T.floor(T.t0() * std::exp2(k)));
  out.epoch_hit.assign(static_cast<std::size_t>(opts.epochs), Tri::Unknown);

  Budget budget(opts.budget);
  WindowAccumulator acc(S, budget);
  out.closed_form = acc.closed_form();
  std::vector<bool> hit(static_cast<std::size_t>(opts.epochs), false);
  const std::vector<double> grid = default_grid(T, opts.epochs, opts.per_epoch);
  double reached = T.t0();
  try {
    for (double t : grid) {
      const auto [m, piece_hit] = acc.advance(t);
      // Epoch of the piece ending at t: largest k with E_k < t.
      int k = 0;
      while (k + 1 < opts.epochs && bounds[static_cast<std::size_t>(k) + 1] < t) ++k;
      if (piece_hit) hit[static_cast<std::size_t>(k)] = true;
      reached = t;
      const double den = T.sigma(t) - T.t0();
      if (den > 0.0) out.samples.push_back({t, m, den, k});
    }
  } catch (const BudgetExhausted&) {
    out.truncated = true;
  }
  for (int k = 0; k < opts.epochs; ++k) {
    if (bounds[static_cast<std::size_t>(k) + 1] > reached) break;
    out.epochs_complete = k + 1;
    const auto idx = static_cast<std::size_t>(k);
    if (hit[idx]) {
      out.epoch_hit[idx] = Tri::Yes;
    } else if (!out.closed_form) {
      out.epoch_hit[idx] = Tri::No;
    }
  }
  out.exact = acc.exact();
  return out;
}

}  // namespace

std::vector<TracePoint> density_trace(const TsSet& S, const std::vector<double>& grid) {
  const TimeScale& T = S.scale();
  Budget unlimited;
  WindowAccumulator acc(S, unlimited);
  std::vector<TracePoint> out;
  out.reserve(grid.size());
  double prev = -std::numeric_limits<double>::infinity();
  for (double x : grid) {
    const double t = prefix_window(T, x).hi;
    if (t < prev) throw InvalidWindow("density grid must be increasing");
    prev = t;
    const double den = T.sigma(t) - T.t0();
    if (!(den > 0.0)) throw ZeroDenominator("window [t0, " + format_number(t) + "]_T has zero measure");
    out.push_back({t, acc.advance(t).first / den});
  }
  return out;
}

std::string to_string(DensityResult::Outcome o) {
  switch (o) {
    case DensityResult::Outcome::Exact:
      return "Exact";
    case DensityResult::Outcome::Estimated:
      return "Estimated";
    case DensityResult::Outcome::DoesNotExist:
      return "DoesNotExist";
    case DensityResult::Outcome::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

std::optional<double> periodic_density(const TsSet& S) {
  const TimeScale& T = S.scale();
  const auto p = S.periodicity();
  if (!p) return std::nullopt;
  if (p->period == 0.0) return p->full ? 1.0 : 0.0;
  const auto tp = T.period();
  if (!tp) return std::nullopt;
  if (*tp > 0.0 && !divides(*tp, p->period)) return std::nullopt;
  const double s = T.ceil(std::max(p->start, T.periodic_from()));
  double e = s + p->period;
  if (!T.contains(e)) e = T.ceil(e - p->period * 1e-9);
  const Span window{s, e, false, true};
  const auto w = normalize(T, window);
  if (!w) return std::nullopt;
  Budget budget(std::size_t{1} << 22);
  try {
    const double num = measure(T, S.resolve(*w, budget));
    const double den = span_measure(T, *w);
    if (!(den > 0.0)) return std::nullopt;
    return num / den;
  } catch (const BudgetExhausted&) {
    return std::nullopt;
  }
}

DensityResult density(const TsSet& S, const DensityOptions& opts) {
  DensityResult out;
  const Profile prof = profile(S, opts.profile);
  out.trace = prof.trace();
  out.epochs = prof.epochs_complete;
  out.epoch_hit.assign(prof.epoch_hit.begin(), prof.epoch_hit.begin() + prof.epochs_complete);
  {
    double ms = 0.0, mt = 0.0;
    int epoch = -1;
    std::vector<std::pair<double, double>> ends(static_cast<std::size_t>(prof.epochs_complete), {-1.0, -1.0});
    for (const auto& p : prof.samples) {
      if (p.epoch < prof.epochs_complete) ends[static_cast<std::size_t>(p.epoch)] = {p.measure_s, p.measure_t};
    }
    for (const auto& [s_end, t_end] : ends) {
      ++epoch;
      if (t_end < 0.0) {
        out.epoch_density.push_back(epoch == 0 ? 0.0 : out.epoch_density.back());
        continue;
      }
      out.epoch_density.push_back(t_end > mt ? (s_end - ms) / (t_end - mt) : 0.0);
      ms = s_end;
      mt = t_end;
    }
  }

  if (auto v = periodic_density(S)) {
    out.outcome = DensityResult::Outcome::Exact;
    out.value = out.liminf = out.limsup = *v;
    out.note = "periodic tail";
    return out;
  }

  const TimeScale& T = S.scale();
  std::vector<EpochStats> stats(static_cast<std::size_t>(prof.epochs_complete));
  for (int k = 0; k < prof.epochs_complete; ++k) {
    const double lo = *T.floor(T.t0() * std::exp2(k));
    const double hi = *T.floor(T.t0() * std::exp2(k + 1));
    auto& st = stats[static_cast<std::size_t>(k)];
    for (const auto& p : out.trace) {
      if (p.t < lo || p.t > hi) continue;
      st.lo = std::min(st.lo, p.ratio);
      st.hi = std::max(st.hi, p.ratio);
      st.any = true;
    }
  }
  while (!stats.empty() && !stats.back().any) stats.pop_back();
  if (stats.size() < 2) {
    out.note = "too few epochs";
    return out;
  }
  const EpochStats& last = stats.back();
  out.liminf = last.lo;
  out.limsup = last.hi;
  if (last.hi - last.lo < opts.tol) {
    out.outcome = DensityResult::Outcome::Estimated;
    out.value = 0.5 * (last.lo + last.hi);
    out.halfwidth = 0.5 * (last.hi - last.lo);
    if (prof.truncated) out.note = "horizon limited by enumeration budget";
    return out;
  }
  if (stats.size() >= 5 && last.hi - last.lo > 3.0 * opts.tol) {
    bool steady = true;
    for (std::size_t i = stats.size() - 4; i < stats.size(); ++i) {
      steady = steady && stable(stats[i].lo, stats[i - 1].lo) && stable(stats[i].hi, stats[i - 1].hi);
    }
    if (steady) {
      out.outcome = DensityResult::Outcome::DoesNotExist;
      return out;
    }
  }
  out.note = "oscillation " + format_number(last.hi - last.lo) + " over the last epoch";
  return out;
}

}  // namespace tsconv
