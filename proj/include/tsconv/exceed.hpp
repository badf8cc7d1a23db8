#pragma once

#include "tsconv/expr.hpp"
#include "tsconv/tsset.hpp"

namespace tsconv {

struct ResolverOptions {
  double leaf_width = 0.5;  // cells narrower than this are sampled
  int subsamples = 32;
  double tol_root = 1e-10;
  double snap = 1e-12;  // relative distance for snapping roots to cell ends
};

struct ExceedanceQuery {
  double L = 0.0;
  double eps = 1.0;
};

/// {t ∈ domain : |g(t) − L| ≥ eps} for a set-free expression g.
TsSet level_set(const TimeScale& T, Expr g, double L, double eps, const TsSet& domain,
                const ResolverOptions& opts = {});

/// A(eps) = {t ∈ T : |f(t) − L| ≥ eps}. Indicator and piecewise guards split
/// T into regions; on each region f is specialized, and constant pieces stay
/// symbolic.
TsSet exceedance(const MeasurableFn& f, double L, double eps, const ResolverOptions& opts = {});

/// A(eps) ∩ [t0, window_end]_T.
SpanList exceed_set(const MeasurableFn& f, const ExceedanceQuery& q, double window_end,
                    const ResolverOptions& opts = {});

}  // namespace tsconv
