#pragma once

#include "certmenu/acceptance.hpp"
#include "certmenu/market.hpp"
#include "certmenu/menu.hpp"
#include "certmenu/rational.hpp"

#include <optional>

namespace certmenu {

/// One obedience condition: the signed slack and whether it is satisfied.
/// A zero margin means the constraint binds exactly.
struct CheckMargin {
  bool pass = true;
  Rat margin = Rat(0);
};

/// Result of checking a (menu, acceptance set) pair against the sender's
/// incentive and participation constraints and the receiver's obedience
/// constraint.  Violations are reported, never thrown.
struct ObedienceReport {
  CheckMargin sender_ic_high;
  CheckMargin sender_ic_low;
  CheckMargin sender_ir_high;
  CheckMargin sender_ir_low;
  CheckMargin receiver_obedience;
  bool overall = false;
};

/// Sender IC: each type weakly prefers its own option over the other's.
/// Sender IR: each type weakly prefers its own option over free
/// no-certification.  Receiver obedience: at every accepted signal the
/// low-state probability from the low type's option is at most l(mu) times
/// the high-state probability from the high type's option; the quantifier
/// over subsets of the acceptance set collapses to this pointwise check for
/// atomic experiments.
ObedienceReport check_obedience(const Menu& m, const AcceptanceSet& set, const MarketParams& p);

/// mu * rho_h + (1 - mu) * rho_l.
Rat menu_revenue(const Menu& m, const MarketParams& p);

struct WelfareAccount {
  Rat revenue;
  Rat rent_high;
  Rat rent_low;
  std::optional<Rat> receiver_payoff;  // absent without receiver utilities
  Rat accept_prob_h;
  Rat accept_prob_l;
  bool hypothetical = false;  // menu is not obedient wrt the given set
};

/// Acceptance probabilities, rents, revenue, and (when utilities are
/// available) the receiver's expected payoff under truthful selection.
WelfareAccount welfare(const Menu& m, const AcceptanceSet& set, const MarketParams& p);

/// Two obedient (menu, acceptance set) pairs are outcome equivalent when
/// the acceptance sets agree, the chosen options' signal distributions
/// restricted to the acceptance set agree per type, and revenue agrees.
bool outcome_equivalent(const Menu& menu_a, const AcceptanceSet& set_a, const Menu& menu_b,
                        const AcceptanceSet& set_b, const MarketParams& p);

}  // namespace certmenu
