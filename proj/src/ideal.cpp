#include "tsconv/ideal.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>

#include "tsconv/numeric.hpp"

namespace tsconv {

struct Ideal::Cache {
  std::mutex mutex;
  std::map<std::string, MembershipDetail> entries;
};

std::string to_string(Membership m) {
  switch (m) {
    case Membership::In:
      return "In";
    case Membership::NotIn:
      return "NotIn";
    case Membership::Unknown:
      return "Unknown";
  }
  return "?";
}

Ideal::Ideal(std::string name, TimeScale T, IdealFlags flags, Oracle oracle, BapWitness witness)
    : name_(std::move(name)),
      T_(std::move(T)),
      flags_(flags),
      oracle_(std::move(oracle)),
      witness_(std::move(witness)),
      cache_(std::make_shared<Cache>()) {}

MembershipDetail Ideal::explain(const TsSet& S) const {
  require_same_scale(T_, S.scale(), name_.c_str());
  const std::string key = S.key();
  {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->entries.find(key);
    if (it != cache_->entries.end()) return it->second;
  }
  MembershipDetail d = oracle_(S);
  std::lock_guard lock(cache_->mutex);
  cache_->entries.emplace(key, d);
  return d;
}

namespace {

MembershipDetail in(std::string why) { return {Membership::In, std::move(why)}; }
MembershipDetail not_in(std::string why) { return {Membership::NotIn, std::move(why)}; }
MembershipDetail unknown(std::string why) { return {Membership::Unknown, std::move(why)}; }

// Boundedness from analytic extent, then from per-epoch evidence.
MembershipDetail bounded_membership(const TsSet& S, const IdealOptions& opts) {
  const Extent e = S.extent();
  if (e.bounded == Tri::Yes) return in("contained in [t0, " + format_number(e.sup) + "]");
  if (e.bounded == Tri::No) return not_in("unbounded by construction");
  if (e.cobounded == Tri::Yes) return not_in("contains a tail of T");
  const Profile p = profile(S, opts.density.profile);
  const int E = p.epochs_complete;
  if (E < opts.min_epochs) return unknown("only " + std::to_string(E) + " epochs resolved");
  const auto at = [&](int k) { return p.epoch_hit[static_cast<std::size_t>(k)]; };
  bool recent_hits = true;
  for (int k = E - 4; k < E; ++k) recent_hits = recent_hits && at(k) == Tri::Yes;
  if (recent_hits) return not_in("meets each of the last 4 epochs up to t = " + format_number(p.samples.back().t));
  const int quiet = std::max(4, E / 2);
  bool none = true;
  for (int k = E - quiet; k < E; ++k) none = none && at(k) == Tri::No;
  if (none) return in("no points in the last " + std::to_string(quiet) + " of " + std::to_string(E) + " epochs");
  return unknown("boundedness evidence is mixed");
}

}  // namespace

Ideal measure_zero_ideal(const TimeScale& T, const IdealOptions& opts) {
  auto oracle = [opts](const TsSet& S) -> MembershipDetail {
    if (S.null_measure() == Tri::Yes) return in("null by construction");
    if (S.null_measure() == Tri::No) return not_in("positive measure by construction");
    auto positive = [](const Profile& p) -> std::optional<MembershipDetail> {
      for (const auto& s : p.samples) {
        if (s.measure_s > 0.0)
          return not_in("measure " + format_number(s.measure_s) + " on [t0, " + format_number(s.t) + "]");
      }
      return std::nullopt;
    };
    ProfileOptions probe = opts.density.profile;
    probe.epochs = std::min(probe.epochs, 8);
    probe.budget = std::min<std::size_t>(probe.budget, 1 << 14);
    if (auto d = positive(profile(S, probe))) return *d;
    const Profile p = profile(S, opts.density.profile);
    if (auto d = positive(p)) return *d;
    const Extent e = S.extent();
    if (e.bounded == Tri::Yes && !p.samples.empty() && e.sup <= p.samples.back().t) {
      return in("bounded with zero measure on [t0, " + format_number(p.samples.back().t) + "]");
    }
    return unknown("zero measure on the resolved horizon only");
  };
  return Ideal("measure_zero", T, {true, false, false}, oracle);
}

Ideal density_zero_ideal(const TimeScale& T, const IdealOptions& opts) {
  auto oracle = [opts](const TsSet& S) -> MembershipDetail {
    const double tol = opts.density.tol;
    if (S.extent().bounded == Tri::Yes) return in("bounded");
    if (S.null_measure() == Tri::Yes) return in("null set");
    const DensityResult d = density(S, opts.density);
    using O = DensityResult::Outcome;
    const std::string what = to_string(d.outcome) + "(" + format_number(d.value) + ")";
    if (d.outcome == O::Exact) return d.value == 0.0 ? in("density " + what) : not_in("density " + what);
    const int E = d.epochs;
    auto quiet_for = [&](int n) {
      if (E < n) return false;
      for (int k = E - n; k < E; ++k)
        if (d.epoch_hit[static_cast<std::size_t>(k)] != Tri::No) return false;
      return true;
    };
    const int quiet = std::max(4, E / 2);
    if (E >= opts.min_epochs && quiet_for(quiet))
      return in("no points in the last " + std::to_string(quiet) + " of " + std::to_string(E) + " epochs");
    // Local densities of the last 4 epochs.
    bool local_small = E >= opts.min_epochs, local_large = E >= 4;
    double lo = 1.0, hi = 0.0;
    for (int k = std::max(0, E - 4); k < E; ++k) {
      const double v = d.epoch_density[static_cast<std::size_t>(k)];
      local_small = local_small && v < tol;
      local_large = local_large && v > tol;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    // Steady local densities separate positive density from slow decay.
    local_large = local_large && lo >= 0.5 * hi;
    if (local_small && d.outcome != O::DoesNotExist)
      return in("density of each of the last 4 epochs below " + format_number(tol));
    const bool decaying = quiet_for(4) || !local_large;
    switch (d.outcome) {
      case O::Exact:
        break;
      case O::Estimated:
        if (d.value + d.halfwidth < tol) return in("density " + what);
        if (d.value - d.halfwidth > tol && !decaying) return not_in("density " + what);
        return unknown("density " + what + (decaying ? " still decaying" : " too close to the tolerance"));
      case O::DoesNotExist:
        return not_in("no density: liminf " + format_number(d.liminf) + ", limsup " + format_number(d.limsup));
      case O::Inconclusive:
        if (decaying) return unknown("ratio decaying without new points: " + d.note);
        if (d.liminf > tol) return not_in("liminf estimate " + format_number(d.liminf));
        return unknown("density inconclusive: " + d.note);
    }
    return unknown("");
  };
  return Ideal("density_zero", T, {true, true, false}, oracle);
}

Ideal bounded_ideal(const TimeScale& T, const IdealOptions& opts) {
  auto oracle = [opts](const TsSet& S) { return bounded_membership(S, opts); };
  // B_j = A_j ∩ (sup A_j, ∞)_T, empty whenever A_j is known to be bounded.
  auto witness = [opts](const std::vector<TsSet>& family) {
    std::vector<TsSet> out;
    for (const auto& A : family) {
      const Extent e = A.extent();
      if (e.bounded == Tri::Yes) {
        out.push_back(A - TsSet::range(A.scale(), A.scale().t0(), e.sup));
      } else {
        out.push_back(A);
      }
    }
    return out;
  };
  return Ideal("bounded", T, {true, true, true}, oracle, witness);
}

bool subset_on_window(const TsSet& S, const TsSet& G, double horizon) {
  return (S - G).resolve(horizon).empty();
}

Ideal generated_ideal(const TimeScale& T, std::vector<TsSet> generators, double horizon) {
  TsSet all = TsSet::empty(T);
  for (const auto& g : generators) all = all | g;
  auto oracle = [all, horizon](const TsSet& S) {
    return subset_on_window(S, all, horizon) ? in("inside the generators on the window")
                                             : not_in("leaves the generators");
  };
  return Ideal("generated", T, {false, false, false}, oracle);
}

Ideal fake_non_ideal(const TimeScale& T, const TsSet& g1, const TsSet& g2, double horizon) {
  auto oracle = [g1, g2, horizon](const TsSet& S) {
    if (subset_on_window(S, g1, horizon) || subset_on_window(S, g2, horizon)) return in("inside one generator");
    return not_in("inside neither generator");
  };
  return Ideal("fake", T, {false, false, false}, oracle);
}

AxiomReport check_ideal_axioms(const Ideal& I, const std::vector<TsSet>& samples, double horizon) {
  AxiomReport r;
  const TimeScale& T = I.scale();
  auto expect_in = [&](const char* axiom, const TsSet& S, const std::string& witness) {
    ++r.checks;
    const Membership m = I.membership(S);
    if (m == Membership::Unknown) ++r.unknown;
    if (m == Membership::NotIn) r.violations.push_back({axiom, witness});
  };

  expect_in("empty set", TsSet::empty(T), "empty");
  if (I.flags().nontrivial) {
    ++r.checks;
    if (I.membership(TsSet::whole(T)) != Membership::NotIn) r.violations.push_back({"nontrivial", "T"});
  }

  std::vector<Membership> m;
  m.reserve(samples.size());
  for (const auto& S : samples) m.push_back(I.membership(S));

  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (I.flags().b_admissible && samples[i].extent().bounded == Tri::Yes) {
      expect_in("b-admissible", samples[i], samples[i].key());
    }
    if (m[i] != Membership::In) continue;
    for (std::size_t j = 0; j < samples.size(); ++j) {
      const std::string pair = samples[i].key() + " ; " + samples[j].key();
      expect_in("subset closure", samples[i] & samples[j], pair);
      if (j > i && m[j] == Membership::In) expect_in("union closure", samples[i] | samples[j], pair);
      if (j != i && subset_on_window(samples[j], samples[i], horizon)) {
        expect_in("subset closure", samples[j], pair);
      }
    }
  }
  r.passed = r.violations.empty();
  return r;
}

}  // namespace tsconv
