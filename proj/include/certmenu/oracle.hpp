#pragma once

#include "certmenu/lp.hpp"
#include "certmenu/market.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace certmenu {

/// Brute-force search space: mass vectors on the grid of multiples of
/// 1/resolution.  Instances for randomized verification are generated
/// deterministically from the seed with signals inside signal_bounds.
struct GridSpec {
  int resolution = 24;
  std::uint64_t seed = 0;
  std::pair<Rat, Rat> signal_bounds{Rat(1, 10), Rat(10)};
};

struct GridSearchResult {
  std::vector<Rat> x;
  std::vector<Rat> y;
  Rat objective;
};

/// Exhaustive enumeration of all grid-valued feasible mass vectors.  Every
/// candidate lies in the LP's feasible set, so the best grid objective
/// never exceeds the exact optimum and converges to it as the resolution
/// grows.  Refuses acceptance sets with more than three signals.
GridSearchResult grid_search_menus(const AcceptanceSet& set, const MarketParams& p,
                                   const GridSpec& spec);

/// All basic feasible solutions of the instance: every way of making the
/// variable count of constraints tight that yields a feasible point.  This
/// is a second exact solution path that shares nothing with the simplex.
/// Refuses acceptance sets with more than six signals.
std::vector<LpSolution> enumerate_feasible_vertices(const LpInstance& lp);

/// Best vertex by objective; equals the simplex optimum.
LpSolution vertex_enumerate(const LpInstance& lp);

struct RandomInstance {
  AcceptanceSet acceptance;
  MarketParams params;
};

/// Deterministic instance from a seed: one to three distinct rational
/// signals inside the bounds (never 0 or 1), a pessimistic prior/threshold
/// pair, and receiver utilities consistent with the threshold.
RandomInstance random_instance(std::uint64_t seed,
                               const std::pair<Rat, Rat>& bounds = {Rat(1, 10), Rat(10)});

}  // namespace certmenu
