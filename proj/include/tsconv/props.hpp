#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsconv/convergence.hpp"

namespace tsconv {

/// Corpus function: expression text over t, ind(sparse) and ind(half).
struct CorpusEntry {
  std::string name;
  std::string expr;
  /// Candidate limits to test; the first is the expected one if any.
  std::vector<double> candidates;
};

/// Built-in function corpus (at least 20 entries).
const std::vector<CorpusEntry>& corpus();

/// The three corpus time scales: ContinuousRay(1), UniformGrid(1,1),
/// PeriodicPattern(1,1,1).
std::vector<TimeScale> corpus_scales();

/// Named sets used by the corpus on T: "sparse" is unbounded with density
/// zero, "half" has positive density.
SetEnv corpus_sets(const TimeScale& T);

/// The three canonical ideals on T.
std::vector<Ideal> corpus_ideals(const TimeScale& T);

/// Seeded mixture of bounded, sparse, periodic and combined sets on T.
std::vector<TsSet> sample_sets(const TimeScale& T, int n, std::uint64_t seed);

/// TSCONV_THREADS if set and positive, else hardware concurrency.
int worker_count();

struct PropsOptions {
  std::uint64_t seed = 42;
  int threads = 0;  // 0: worker_count()
  ConvergenceOptions convergence;
};

struct PropertyCase {
  std::string scale;
  std::string ideal;
  std::string subject;
  /// "pass", "violation", "inconclusive".
  std::string status;
  std::string detail;
};

struct PropertyRow {
  std::string property;
  int passed = 0;
  int violations = 0;
  int inconclusive = 0;
  std::vector<PropertyCase> cases;
};

struct PropsReport {
  std::uint64_t seed = 0;
  int functions = 0;
  int scales = 0;
  int ideals = 0;
  std::vector<PropertyRow> rows;

  int total_cases() const;
  int total_inconclusive() const;
  int total_violations() const;
  double inconclusive_rate() const;
  bool passed() const { return total_violations() == 0 && inconclusive_rate() < 0.1; }
};

/// Property names in report order.
const std::vector<std::string>& property_names();

/// Runs every property over corpus × scales × ideals. Output is
/// independent of thread count.
PropsReport run_props(const PropsOptions& opts = {});

}  // namespace tsconv
