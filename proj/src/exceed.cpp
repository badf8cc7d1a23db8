#include "tsconv/exceed.hpp"

#include <cmath>

#include "tsconv/numeric.hpp"

namespace tsconv {

namespace {

constexpr std::size_t kMaxGuards = 6;

class LevelSetNode final : public SetNode {
 public:
  LevelSetNode(TimeScale T, Expr g, double L, double eps, TsSet domain, ResolverOptions opts)
      : SetNode(std::move(T)), g_(std::move(g)), L_(L), eps_(eps), domain_(std::move(domain)), opts_(opts) {
    if (!(eps_ > 0.0)) throw DomainError("eps must be positive");
    extent_ = intersect_extents(domain_.extent(), tail_extent());
  }

  SpanList resolve(const Span& window, Budget& budget) const override {
    const SpanList dom = domain_.resolve(window, budget);
    Run run{budget, {}, dom.exact};
    for (const auto& s : dom.spans) split(run, s);
    return canonicalize(scale(), std::move(run.out), run.exact);
  }

  Extent extent() const override { return extent_; }
  Tri null_measure() const override { return domain_.null_measure() == Tri::Yes ? Tri::Yes : Tri::Unknown; }
  std::string describe() const override {
    const ResolverOptions d;
    std::string res;
    if (opts_.leaf_width != d.leaf_width || opts_.subsamples != d.subsamples || opts_.tol_root != d.tol_root ||
        opts_.snap != d.snap) {
      res = "{" + format_number(opts_.leaf_width) + "," + std::to_string(opts_.subsamples) + "," +
            format_number(opts_.tol_root) + "," + format_number(opts_.snap) + "}";
    }
    return "level(|" + ex::key(g_) + "-" + format_number(L_) + "|>=" + format_number(eps_) + ")" + res + "&" +
           domain_.key();
  }

 private:
  struct Run {
    Budget& budget;
    std::vector<Span> out;
    bool exact;
  };

  bool inside(double t) const { return std::abs(ex::eval(g_, t) - L_) >= eps_; }

  // 1 when the whole cell is in, -1 when it is out, 0 when undecided.
  int decide(double a, double b) const {
    const Interval d = ia::abs(ia::sub(ex::enclose(g_, {a, b}), Interval::point(L_)));
    if (d.lo >= eps_) return 1;
    if (d.hi < eps_) return -1;
    return 0;
  }

  Extent tail_extent() const {
    const double inf = std::numeric_limits<double>::infinity();
    Extent e{Tri::Unknown, 0.0, Tri::Unknown, 0.0};
    for (int k = 0; k <= 60; ++k) {
      const double x = scale().t0() * std::exp2(k);
      const int d = decide(x, inf);
      if (d < 0) return {Tri::Yes, x, Tri::No, 0.0};
      if (d > 0) return {Tri::No, 0.0, Tri::Yes, x};
    }
    return e;
  }

  void emit(Run& run, const Span& clip, double a, double b) const {
    Span s = Span::closed(a, b);
    if (a == clip.lo) s.lo_closed = clip.lo_closed;
    if (b == clip.hi) s.hi_closed = clip.hi_closed;
    if (!s.degenerate()) run.out.push_back(s);
  }

  // Span of T: split until few components remain, then handle each.
  void split(Run& run, const Span& s) const {
    run.budget.charge();
    const int d = decide(s.lo, s.hi);
    if (d > 0) {
      run.out.push_back(s);
      return;
    }
    if (d < 0) return;
    const TimeScale& T = scale();
    const double bound = T.component_bound(s.lo, s.hi);
    if (T.enumerable() && bound <= 64) {
      points(run, s);
      return;
    }
    if (bound > 8) {
      const auto m = T.floor(s.lo + 0.5 * (s.hi - s.lo));
      if (m && *m >= s.lo && *m < s.hi) {
        split(run, Span{s.lo, *m, s.lo_closed, true});
        if (auto right = normalize(T, Span{*m, s.hi, false, s.hi_closed})) split(run, *right);
        return;
      }
    }
    for (const auto& c : T.decompose_window(s.lo, s.hi)) {
      if (c.is_point() || c.lo == c.hi) {
        if (s.contains(c.lo) && inside(c.lo)) push_merged(T, run.out, Span::point(c.lo));
      } else {
        cell(run, s, c.lo, c.hi);
      }
    }
  }

  // Grid points of s, evaluated one by one; runs of consecutive points merge.
  void points(Run& run, const Span& s) const {
    const TimeScale& T = scale();
    std::int64_t k = T.index_floor(s.lo);
    if (k < 0 || !s.contains(T.element(k))) ++k;
    const std::int64_t last = T.index_floor(s.hi);
    run.budget.charge(static_cast<std::size_t>(std::max<std::int64_t>(last - k + 1, 1)));
    bool extending = false;
    for (; k <= last; ++k) {
      const double x = T.element(k);
      if (!s.contains(x) || !inside(x)) {
        extending = false;
        continue;
      }
      if (extending) {
        run.out.back().hi = x;
      } else {
        push_merged(T, run.out, Span::point(x));
        extending = true;
      }
    }
  }

  // Real interval [a, b] inside an interval component of T.
  void cell(Run& run, const Span& clip, double a, double b) const {
    run.budget.charge();
    const int d = decide(a, b);
    if (d > 0) {
      emit(run, clip, a, b);
      return;
    }
    if (d < 0) return;
    if (b - a <= opts_.leaf_width) {
      leaf(run, clip, a, b);
      return;
    }
    const double m = a + 0.5 * (b - a);
    cell(run, clip, a, m);
    cell(run, clip, m, b);
  }

  double root(double in, double out) const {
    while (std::abs(in - out) > opts_.tol_root) {
      const double m = 0.5 * (in + out);
      if (m == in || m == out) break;
      if (inside(m)) {
        in = m;
      } else {
        out = m;
      }
    }
    return in;
  }

  double snap(double r, double a, double b) const {
    if (std::abs(r - a) <= opts_.snap * std::max(1.0, std::abs(a))) return a;
    if (std::abs(r - b) <= opts_.snap * std::max(1.0, std::abs(b))) return b;
    return r;
  }

  void leaf(Run& run, const Span& clip, double a, double b) const {
    const int n = std::max(opts_.subsamples, 2);
    std::vector<double> xs(static_cast<std::size_t>(n) + 1);
    std::vector<bool> in(xs.size());
    int changes = 0;
    for (int i = 0; i <= n; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      xs[idx] = i == n ? b : a + (b - a) * i / n;
      in[idx] = inside(xs[idx]);
      if (i > 0 && in[idx] != in[idx - 1]) ++changes;
    }
    run.budget.charge(static_cast<std::size_t>(n));
    if (changes > n / 4) {
      throw ResolutionFailure("more than " + std::to_string(n / 4) + " sign changes of |f-L|-eps in [" +
                              format_number(a) + ", " + format_number(b) + "]");
    }
    double start = a;
    for (std::size_t i = 1; i < xs.size(); ++i) {
      if (in[i] == in[i - 1]) continue;
      run.exact = false;
      if (in[i]) {
        start = snap(root(xs[i], xs[i - 1]), a, b);
      } else {
        emit(run, clip, start, snap(root(xs[i - 1], xs[i]), a, b));
      }
    }
    if (in.back()) emit(run, clip, start, b);
  }

  Expr g_;
  double L_;
  double eps_;
  TsSet domain_;
  ResolverOptions opts_;
  Extent extent_;
};

TsSet region(const TimeScale& T, const std::vector<TsSet>& gs, unsigned bits) {
  TsSet r = TsSet::whole(T);
  for (std::size_t i = 0; i < gs.size(); ++i) r = r & ((bits >> i) & 1U ? gs[i] : gs[i].complement());
  return r;
}

}  // namespace

TsSet level_set(const TimeScale& T, Expr g, double L, double eps, const TsSet& domain, const ResolverOptions& opts) {
  if (ex::uses_sets(g)) throw DomainError("level sets need a set-free expression");
  require_same_scale(T, domain.scale(), "level set");
  if (ex::is_constant(g)) return std::abs(g->value - L) >= eps ? domain : TsSet::empty(T);
  return TsSet(std::make_shared<LevelSetNode>(T, std::move(g), L, eps, domain, opts));
}

TsSet exceedance(const MeasurableFn& f, double L, double eps, const ResolverOptions& opts) {
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  const TimeScale& T = f.scale();
  const auto gs = ex::guards(f.expr());
  if (gs.size() > kMaxGuards) {
    throw DomainError("at most " + std::to_string(kMaxGuards) + " distinct guard sets are supported");
  }
  if (gs.empty()) return level_set(T, f.expr(), L, eps, TsSet::whole(T), opts);
  std::vector<TsSet> parts;
  for (unsigned bits = 0; bits < (1U << gs.size()); ++bits) {
    std::map<std::string, bool> in_guard;
    for (std::size_t i = 0; i < gs.size(); ++i) in_guard[gs[i].key()] = (bits >> i) & 1U;
    parts.push_back(level_set(T, ex::specialize(f.expr(), in_guard), L, eps, region(T, gs, bits), opts));
  }
  return TsSet::disjoint_union(T, std::move(parts));
}

SpanList exceed_set(const MeasurableFn& f, const ExceedanceQuery& q, double window_end, const ResolverOptions& opts) {
  return exceedance(f, q.L, q.eps, opts).resolve(window_end);
}

}  // namespace tsconv
