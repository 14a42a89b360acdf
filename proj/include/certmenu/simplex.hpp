#pragma once

#include "certmenu/rational.hpp"

#include <vector>

namespace certmenu {

/// A row "coeffs . v <= rhs" of an inequality system.
struct LinearConstraint {
  std::vector<Rat> coeffs;
  Rat rhs;
};

struct SimplexResult {
  std::vector<Rat> solution;
  Rat value;
};

/// Maximizes objective . v subject to the constraint rows and v >= 0, in
/// exact rational arithmetic.  Requires every rhs >= 0 so that the slack
/// basis is feasible.  Pivots by Bland's rule (smallest eligible index
/// enters; ties in the ratio test leave by smallest basic index), which
/// cannot cycle and makes the returned vertex deterministic.
SimplexResult simplex_maximize(const std::vector<Rat>& objective,
                               const std::vector<LinearConstraint>& constraints);

}  // namespace certmenu
