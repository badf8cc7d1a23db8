#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tsconv/density.hpp"
#include "tsconv/tsset.hpp"

namespace tsconv {

enum class Membership { In, NotIn, Unknown };

std::string to_string(Membership m);

struct MembershipDetail {
  Membership value = Membership::Unknown;
  std::string reason;
};

struct IdealFlags {
  bool nontrivial = true;
  bool b_admissible = false;
  bool bap = false;
};

/// Maps a disjoint family A_j in I to B_j with A_j Δ B_j bounded.
using BapWitness = std::function<std::vector<TsSet>(const std::vector<TsSet>&)>;

/// Membership oracle for an ideal on one time scale. Copies share a
/// memo table keyed by set structure.
class Ideal {
 public:
  using Oracle = std::function<MembershipDetail(const TsSet&)>;

  Ideal(std::string name, TimeScale T, IdealFlags flags, Oracle oracle, BapWitness witness = {});

  const std::string& name() const { return name_; }
  const TimeScale& scale() const { return T_; }
  const IdealFlags& flags() const { return flags_; }
  const BapWitness& bap_witness() const { return witness_; }

  /// Throws ScaleMismatch when S lives on another time scale.
  Membership membership(const TsSet& S) const { return explain(S).value; }
  MembershipDetail explain(const TsSet& S) const;

 private:
  struct Cache;
  std::string name_;
  TimeScale T_;
  IdealFlags flags_;
  Oracle oracle_;
  BapWitness witness_;
  std::shared_ptr<Cache> cache_;
};

/// The dual filter F(I) = {T ∖ A : A ∈ I}.
class FilterView {
 public:
  explicit FilterView(Ideal I) : I_(std::move(I)) {}
  Membership in_filter(const TsSet& S) const { return I_.membership(S.complement()); }
  const Ideal& ideal() const { return I_; }

 private:
  Ideal I_;
};

struct IdealOptions {
  DensityOptions density;
  /// Epochs of evidence needed before boundedness is decided numerically.
  int min_epochs = 8;
};

/// {A : μ_Δ(A) = 0}.
Ideal measure_zero_ideal(const TimeScale& T, const IdealOptions& opts = {});
/// {A : δ_T(A) = 0}.
Ideal density_zero_ideal(const TimeScale& T, const IdealOptions& opts = {});
/// Bounded subsets of T.
Ideal bounded_ideal(const TimeScale& T, const IdealOptions& opts = {});
/// Subsets of the union of a finite family, checked on [t0, horizon].
Ideal generated_ideal(const TimeScale& T, std::vector<TsSet> generators, double horizon);
/// Subsets of G1 or of G2: closed under subsets but not under unions.
Ideal fake_non_ideal(const TimeScale& T, const TsSet& g1, const TsSet& g2, double horizon);

/// Is S ⊆ G on [t0, horizon]?
bool subset_on_window(const TsSet& S, const TsSet& G, double horizon);

struct AxiomViolation {
  std::string axiom;
  std::string witness;
};

struct AxiomReport {
  bool passed = true;
  int checks = 0;
  int unknown = 0;
  std::vector<AxiomViolation> violations;
};

/// Empty set, nontriviality, union and subset closure over all sample pairs,
/// and B-admissibility on bounded samples.
AxiomReport check_ideal_axioms(const Ideal& I, const std::vector<TsSet>& samples, double horizon = 1e4);

}  // namespace tsconv
