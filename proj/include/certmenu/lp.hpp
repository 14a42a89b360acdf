#pragma once

#include "certmenu/acceptance.hpp"
#include "certmenu/market.hpp"
#include "certmenu/simplex.hpp"

#include <cstddef>
#include <vector>

namespace certmenu {

/// The revenue-maximization linear program over a finite acceptance set E.
///
/// Variables, in this fixed order: first the high option's state-h mass
/// x_e at each accepted signal (ascending), then the low option's state-h
/// mass y_e at each accepted signal.  The objective
///
///   mu * sum x_e + sum (1/e - mu) * y_e
///
/// equals menu revenue once prices are recovered, and the rows encode the
/// probability budgets under both states, the pointwise receiver-obedience
/// caps y_e / e <= l(mu) x_e, and the allocation-monotonicity pair
/// sum (1-1/e) x_e >= sum (1-1/e) y_e >= 0 implied by sender incentive
/// compatibility.  Everything off E is residual bookkeeping handled at menu
/// materialization, so it does not appear here.
struct LpInstance {
  AcceptanceSet acceptance;
  MarketParams params;
  std::vector<Rat> objective;
  std::vector<LinearConstraint> rows;

  std::size_t atom_count() const { return acceptance.size(); }
  std::size_t variable_count() const { return 2 * acceptance.size(); }
};

/// Builds the LP for a nonempty acceptance set without e = 0.
LpInstance build_lp(const AcceptanceSet& set, const MarketParams& params);

struct LpSolution {
  std::vector<Rat> x;
  std::vector<Rat> y;
  Rat objective;
};

/// Exact optimal vertex by Bland-rule simplex.  Deterministic.
LpSolution solve_lp(const LpInstance& lp);

/// Like solve_lp, but when the optimal face is not a single vertex the
/// returned solution is canonicalized: variables are pinned to zero greedily
/// from the highest index down (y's before x's, larger signals before
/// smaller) whenever the optimum survives, so the reported support
/// concentrates on the smallest indices.  Ties such as the
/// separating-versus-pooling multiplicity resolve to the separating vertex.
LpSolution solve_lp_canonical(const LpInstance& lp);

/// Optimum of the LP with every variable outside `keep` fixed to zero.
/// Used for support enumeration and canonical-vertex selection.
LpSolution solve_lp_restricted(const LpInstance& lp, const std::vector<bool>& keep);

LpSolution split_solution(const LpInstance& lp, SimplexResult raw);

}  // namespace certmenu
