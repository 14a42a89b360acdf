#pragma once

#include "certmenu/acceptance.hpp"
#include "certmenu/experiment.hpp"
#include "certmenu/market.hpp"
#include "certmenu/menu.hpp"
#include "certmenu/rational.hpp"

#include <array>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace certmenu {

struct SolveResult;

enum class RegimeLabel {
  separating,
  kg_pooling,
  partial_pooling,
  bad_news,
  degenerate,
  uninformative,
  no_trade,
};

std::string_view to_string(RegimeLabel label);

/// Labels a revenue-maximization result.  Checked in order:
///   degenerate       zero revenue on a nonempty acceptance set
///   uninformative    an accepted e = 1 carries on-path mass
///   separating       the high type is accepted surely, the low type never
///   partial-pooling  the low option's accepted support is a strict subset
///                    of the high option's (both nonempty)
///   bad-news         some accepted signal below 1 carries low-option mass
///   kg-pooling       both options share the same accepted support; covers
///                    the commitment-style menu with identical options and
///                    its price-screened variants at a pooled signal
RegimeLabel classify(const SolveResult& r, const AcceptanceSet& set);

enum class SeparatingClass { must_separate, may_separate, cannot_separate };

/// Compares inf(E) against 1/mu: above it every refined equilibrium
/// separates, below it none does, at it both outcomes coexist.
SeparatingClass separating_threshold(const AcceptanceSet& set, const MarketParams& p);

/// Outcome when the receiver accepts any signal with face-value posterior
/// at least pi*, i.e. the acceptance interval [1/l(mu), inf].  The interval
/// is approximated by a geometric grid plus inf; the optimal menu is atomic,
/// so grid refinement leaves the outcome unchanged.  Separates exactly when
/// mu <= 2 - 1/pi*; otherwise pools both types on the single signal 1/l(mu)
/// at price l(mu).
SolveResult naive_receiver_solve(const MarketParams& p, int grid_size);

struct SenderOptimum {
  Signal best;
  Rat rent;
  std::vector<std::pair<Signal, Rat>> schedule;  // candidate -> best high-type rent
};

/// High-type rent across singleton acceptance sets {e*}, taking at each
/// candidate the best rent over all revenue-maximizing menus.  The rent is
/// (e*-1) l(mu) up to 1/l(mu), then 1 - 1/e* up to 1/mu, peaks at
/// e* = 1/mu, and collapses to zero beyond.
SenderOptimum sender_optimal_search(const MarketParams& p, const std::vector<Signal>& candidates);

/// The commitment-optimal experiment: all high-state mass on 1/l(mu), which
/// moves the posterior exactly to pi*.
Experiment kg_menu(const MarketParams& p);

/// The pathological equilibrium that accepts the uninformative signal: both
/// options put their accepted mass on e = 1, the high type pays 1 and the
/// low type pays l(mu).  Revenue mu + (1-mu) l(mu) beats every informative
/// outcome.  Requires a pessimistic receiver.
std::pair<Menu, AcceptanceSet> certifier_optimal_uninformative(const MarketParams& p);

struct OptimisticOutcome {
  RegimeLabel label;
  Menu menu;
  Rat revenue;
  std::optional<Rat> receiver_payoff;
};

/// With an optimistic receiver (mu >= pi*) only two outcomes survive:
/// nobody certifies and the receiver accepts on the prior, or everyone buys
/// an uninformative experiment at price 1.
std::array<OptimisticOutcome, 2> optimistic_receiver_outcomes(const MarketParams& p);

}  // namespace certmenu
