#pragma once

#include "certmenu/rational.hpp"
#include "certmenu/signal.hpp"

#include <optional>

namespace certmenu {

/// Receiver payoffs v(action, state).  Accepting a high type must beat
/// rejecting him, and rejecting a low type must beat accepting him; both
/// orderings are strict and checked at construction.
struct ReceiverUtilities {
  Rat accept_high;  // v(a_h, h)
  Rat reject_high;  // v(a_l, h)
  Rat reject_low;   // v(a_l, l)
  Rat accept_low;   // v(a_h, l)

  ReceiverUtilities(Rat v_ah_h, Rat v_al_h, Rat v_al_l, Rat v_ah_l);
};

/// Acceptance threshold implied by the receiver's payoffs: he accepts at
/// posterior beliefs of at least this value.
Rat derive_threshold(const ReceiverUtilities& u);

/// l(mu) = mu(1-pi*)/(pi*(1-mu)).  Below 1 exactly when mu < pi*.
Rat odds_factor(const Rat& mu, const Rat& pi_star);

/// Posterior on the high type after seeing likelihood ratio e:
/// e*mu / (e*mu + 1 - mu), with posterior(mu, inf) = 1 and posterior(mu, 0) = 0.
Rat posterior(const Rat& mu, const Signal& e);

enum class Action { accept, reject };

/// a_h at beliefs >= pi*; ties resolve in the sender's favor.
Action receiver_best_response(const Rat& belief, const Rat& pi_star);

/// Prior, threshold, and the derived odds factor.  The main analysis assumes
/// a pessimistic receiver (mu < pi*); optimistic parameters are accepted so
/// the optimistic-receiver outcomes can be computed, and every solver that
/// requires pessimism checks it explicitly.
class MarketParams {
 public:
  static MarketParams from_threshold(Rat mu, Rat pi_star);
  static MarketParams from_utilities(Rat mu, ReceiverUtilities utilities);

  const Rat& mu() const { return mu_; }
  const Rat& pi_star() const { return pi_star_; }
  const Rat& odds() const { return odds_; }  // l(mu)
  const std::optional<ReceiverUtilities>& utilities() const { return utilities_; }

  bool pessimistic() const { return mu_ < pi_star_; }

  /// 1/l(mu): the smallest likelihood ratio that moves the prior to pi*.
  Signal threshold_signal() const { return Signal(Rat(1) / odds_); }

 private:
  MarketParams(Rat mu, Rat pi_star, std::optional<ReceiverUtilities> utilities);

  Rat mu_;
  Rat pi_star_;
  Rat odds_;
  std::optional<ReceiverUtilities> utilities_;
};

}  // namespace certmenu
