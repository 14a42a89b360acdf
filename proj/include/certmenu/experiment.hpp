#pragma once

#include "certmenu/acceptance.hpp"
#include "certmenu/rational.hpp"
#include "certmenu/signal.hpp"

#include <map>

namespace certmenu {

/// A statistical experiment represented as a finite atom measure over
/// likelihood-ratio signals.  Atoms store the probability of each signal
/// under the high state; the low-state probability of a finite signal e > 0
/// is mass/e, a signal of inf has low-state probability 0, and whatever
/// low-state probability is left over sits at e = 0.  That residual is
/// never stored; mass_l() reconstructs it, so normalization under both
/// states has a single source of truth.
///
/// The distinguished "no certification" option is the null experiment: it
/// produces no likelihood-ratio signal at all.
class Experiment {
 public:
  /// The null experiment (no certification).
  static Experiment none();

  /// A regular experiment from state-h atom masses.  Keys must lie in
  /// (0, inf], masses must be nonnegative and sum to 1, and the implied
  /// low-state masses must sum to at most 1.
  explicit Experiment(std::map<Signal, Rat> atoms_h);

  bool is_none() const { return none_; }

  const std::map<Signal, Rat>& atoms() const { return atoms_; }

  /// Probability of signal e under the high state.
  Rat mass_h(const Signal& e) const;

  /// Probability of signal e under the low state, including the implicit
  /// residual at e = 0.  The null experiment has no signal distribution and
  /// returns 0 everywhere.
  Rat mass_l(const Signal& e) const;

  /// Probability of landing in E under each state.
  Rat mass_h_on(const AcceptanceSet& set) const;
  Rat mass_l_on(const AcceptanceSet& set) const;

  friend bool operator==(const Experiment& a, const Experiment& b) {
    return a.none_ == b.none_ && a.atoms_ == b.atoms_;
  }

 private:
  Experiment() : none_(true) {}

  std::map<Signal, Rat> atoms_;
  bool none_;
};

/// Probability of signal e under the low state; spelled out as a named
/// operation for symmetry with the likelihood-ratio identification.
Rat low_state_mass(const Experiment& x, const Signal& e);

}  // namespace certmenu
