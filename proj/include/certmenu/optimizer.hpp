#pragma once

#include "certmenu/equilibrium.hpp"
#include "certmenu/lp.hpp"
#include "certmenu/obedience.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace certmenu {

enum class SolverPath { lp, closed_form, support_enum };

std::string_view to_string(SolverPath path);

/// A solved instance: the revenue-maximizing obedient menu for an
/// acceptance set, its welfare account, the regime label, and the on-E mass
/// vectors the menu was materialized from.  certificate is the optimal LP
/// objective, which equals menu revenue.
struct SolveResult {
  Menu menu;
  WelfareAccount welfare;
  RegimeLabel regime;
  SolverPath solver_path;
  Rat certificate;
  AcceptanceSet acceptance;
  std::vector<Rat> x;  // high option state-h mass per accepted signal
  std::vector<Rat> y;  // low option state-h mass per accepted signal
};

/// Prices that extract everything not owed as incentive rent:
/// rho_h = sum x_e - sum (1-1/e) y_e and rho_l = sum y_e / e, so the low
/// type's participation constraint binds and the low type earns no rent.
std::pair<Rat, Rat> recover_prices(const std::vector<Rat>& x, const std::vector<Rat>& y,
                                   const AcceptanceSet& set);

/// Builds the menu for on-E mass vectors, placing the off-E residual
/// canonically: the mass that must leave both states goes to the
/// uninformative signal e = 1, a pure high-state remainder goes to inf, and
/// a pure low-state remainder sits at e = 0.  When e = 1 itself is accepted
/// the residual is split between inf and 0 instead so the accepted
/// distribution is untouched.  Any placement off E is outcome-equivalent.
Menu materialize_menu(const std::vector<Rat>& x, const std::vector<Rat>& y,
                      const AcceptanceSet& set);

/// Revenue-maximizing obedient menu wrt E via the exact LP, canonical
/// vertex.  If the optimum is positive the high type is accepted surely
/// (sum x = 1).  On sets below 1 the only obedient menus are free and never
/// accepted, and the zero menu is returned with the degenerate label.
SolveResult solve_revenue_max(const AcceptanceSet& set, const MarketParams& p);

/// All optimal vertices of the instance (basic feasible solutions attaining
/// the optimum), for callers that need the whole optimal face, e.g. at
/// parameter boundaries with genuinely multiple optimal menus.
std::vector<LpSolution> optimal_vertices(const LpInstance& lp);

enum class BinaryRegime { split, uniform, pooled };

std::string_view to_string(BinaryRegime regime);

struct BinaryMenuCandidate {
  BinaryRegime regime;
  Menu menu;
  std::vector<Rat> x;  // per accepted signal, ascending (e_l first)
  std::vector<Rat> y;
  Rat revenue;
};

/// Closed form for binary acceptance sets {e_h > 1 > e_l > 0}.  The regime
/// depends on where e_h sits relative to 1/mu and 1/l(mu) and on whether
/// 1/e_h clears mu + (1-mu) l(mu) e_l:
///   split    both obedience caps bind on the low option
///            (scalings e_h l(mu) at e_h and e_l l(mu) at e_l)
///   uniform  one scaling e_l l(mu) at both accepted signals
///   pooled   both types get the same experiment, all mass on e_h at
///            price 1/e_h
/// Exactly one regime applies except on boundaries, where the two adjacent
/// menus tie and both are returned.
std::vector<BinaryMenuCandidate> closed_form_binary(const Signal& e_h, const Signal& e_l,
                                                    const MarketParams& p);

struct PartialPoolingMenu {
  Menu menu;
  std::vector<Rat> x;  // masses at {e_bar, e_h, e_l} in descending signal order
  std::vector<Rat> y;
  Rat revenue;
};

/// Three-point menu on {e_bar > e_h > 1 > e_l} whose low option skips the
/// top signal: the low type's accepted support is a strict subset of the
/// high type's.  Returns nullopt when the existence conditions fail.
std::optional<PartialPoolingMenu> partial_pooling_menu(const Signal& e_bar, const Signal& e_h,
                                                       const Signal& e_l, const MarketParams& p);

/// Optimizes over all menus whose high option uses at most three accepted
/// signals and whose low option uses at most two of those.  This class is
/// rich enough to attain the unrestricted optimum.
SolveResult enumerate_support_menus(const AcceptanceSet& set, const MarketParams& p);

/// Best menu when screening is unavailable: a single (experiment, price)
/// pair faces both types, each of whom buys it or stays out.  Either both
/// types buy one pooled experiment priced at the low type's willingness to
/// pay, or only the high type buys at price 1.  The latter wins whenever
/// mu < 2 - 1/pi*, so a no-screening certifier separates exactly when the
/// adverse-selection problem is severe.
SolveResult solve_single_item(const AcceptanceSet& set, const MarketParams& p);

}  // namespace certmenu
