#pragma once

#include <string>
#include <vector>

#include "tsconv/tsset.hpp"

namespace tsconv {

struct TracePoint {
  double t;
  double ratio;
};

struct ProfileOptions {
  int epochs = 40;     // epochs t0·2^k .. t0·2^(k+1)
  int per_epoch = 8;   // sub-samples per epoch
  std::size_t budget = std::size_t{1} << 20;
};

/// Window measures of a set sampled along the geometric grid, cut short
/// when enumeration runs out of budget.
struct Profile {
  struct Sample {
    double t;
    double measure_s;
    double measure_t;
    int epoch;
  };
  std::vector<Sample> samples;
  /// Per epoch: does S meet (E_k, E_{k+1}]? Unknown when not enumerated.
  std::vector<Tri> epoch_hit;
  int epochs_complete = 0;
  bool exact = true;
  bool closed_form = false;
  bool truncated = false;

  std::vector<TracePoint> trace() const;
};

Profile profile(const TsSet& S, const ProfileOptions& opts = {});

/// Sampling grid t0·2^(k + j/per_epoch), snapped down into T, deduplicated.
std::vector<double> default_grid(const TimeScale& T, int epochs = 40, int per_epoch = 8);

/// Ratios μ_Δ(S ∩ [t0,t]_T) / μ_Δ([t0,t]_T) with t snapped into T.
std::vector<TracePoint> density_trace(const TsSet& S, const std::vector<double>& grid);

struct DensityOptions {
  double tol = 1e-3;
  ProfileOptions profile;
};

struct DensityResult {
  enum class Outcome { Exact, Estimated, DoesNotExist, Inconclusive };
  Outcome outcome = Outcome::Inconclusive;
  double value = 0.0;
  double halfwidth = 0.0;
  double liminf = 0.0;
  double limsup = 1.0;
  std::vector<TracePoint> trace;
  int epochs = 0;
  /// Profile::epoch_hit for the completed epochs.
  std::vector<Tri> epoch_hit;
  /// Share of each completed epoch covered by S: Δμ(S ∩ ·) / Δμ(·) between
  /// the last samples of consecutive epochs.
  std::vector<double> epoch_density;
  std::string note;
};

std::string to_string(DensityResult::Outcome o);

DensityResult density(const TsSet& S, const DensityOptions& opts = {});

/// Closed-form density from a periodic tail, when the tail is compatible
/// with the period of T.
std::optional<double> periodic_density(const TsSet& S);

}  // namespace tsconv
