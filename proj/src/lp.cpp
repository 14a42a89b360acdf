#include "certmenu/lp.hpp"

#include <stdexcept>

namespace certmenu {

LpInstance build_lp(const AcceptanceSet& set, const MarketParams& params) {
  if (set.empty()) throw std::invalid_argument("acceptance set must be nonempty");
  if (!params.pessimistic()) {
    throw std::invalid_argument("revenue maximization over experiments needs mu < pi*");
  }
  const std::size_t n = set.size();
  const auto& atoms = set.signals();

  LpInstance lp{set, params, {}, {}};
  lp.objective.assign(2 * n, Rat(0));
  for (std::size_t i = 0; i < n; ++i) {
    lp.objective[i] = params.mu();
    lp.objective[n + i] = atoms[i].inverse_coeff() - params.mu();
  }

  auto row = [&](std::vector<Rat> coeffs, Rat rhs) {
    lp.rows.push_back(LinearConstraint{std::move(coeffs), std::move(rhs)});
  };
  std::vector<Rat> coeffs(2 * n, Rat(0));

  // State-h and state-l probability budgets for each option.
  for (bool low_option : {false, true}) {
    const std::size_t offset = low_option ? n : 0;
    coeffs.assign(2 * n, Rat(0));
    for (std::size_t i = 0; i < n; ++i) coeffs[offset + i] = 1;
    row(coeffs, Rat(1));
    coeffs.assign(2 * n, Rat(0));
    for (std::size_t i = 0; i < n; ++i) coeffs[offset + i] = atoms[i].inverse_coeff();
    row(coeffs, Rat(1));
  }

  // Receiver obedience at each atom: y_e/e - l(mu) x_e <= 0.
  for (std::size_t i = 0; i < n; ++i) {
    coeffs.assign(2 * n, Rat(0));
    coeffs[i] = -params.odds();
    coeffs[n + i] = atoms[i].inverse_coeff();
    row(coeffs, Rat(0));
  }

  // Allocation monotonicity: sum (1-1/e)(y - x) <= 0 and -sum (1-1/e) y <= 0.
  coeffs.assign(2 * n, Rat(0));
  for (std::size_t i = 0; i < n; ++i) {
    Rat weight = Rat(1) - atoms[i].inverse_coeff();
    coeffs[i] = -weight;
    coeffs[n + i] = weight;
  }
  row(coeffs, Rat(0));
  coeffs.assign(2 * n, Rat(0));
  for (std::size_t i = 0; i < n; ++i) coeffs[n + i] = -(Rat(1) - atoms[i].inverse_coeff());
  row(coeffs, Rat(0));

  return lp;
}

LpSolution split_solution(const LpInstance& lp, SimplexResult raw) {
  const std::size_t n = lp.atom_count();
  LpSolution solution;
  solution.x.assign(raw.solution.begin(), raw.solution.begin() + n);
  solution.y.assign(raw.solution.begin() + n, raw.solution.end());
  solution.objective = std::move(raw.value);
  return solution;
}

LpSolution solve_lp(const LpInstance& lp) {
  return split_solution(lp, simplex_maximize(lp.objective, lp.rows));
}

LpSolution solve_lp_restricted(const LpInstance& lp, const std::vector<bool>& keep) {
  const std::size_t total = lp.variable_count();
  if (keep.size() != total) throw std::invalid_argument("keep mask width mismatch");

  std::vector<std::size_t> dense_to_full;
  for (std::size_t j = 0; j < total; ++j) {
    if (keep[j]) dense_to_full.push_back(j);
  }

  std::vector<Rat> objective;
  objective.reserve(dense_to_full.size());
  for (std::size_t j : dense_to_full) objective.push_back(lp.objective[j]);

  std::vector<LinearConstraint> rows;
  rows.reserve(lp.rows.size());
  for (const auto& full_row : lp.rows) {
    LinearConstraint reduced;
    reduced.rhs = full_row.rhs;
    reduced.coeffs.reserve(dense_to_full.size());
    for (std::size_t j : dense_to_full) reduced.coeffs.push_back(full_row.coeffs[j]);
    rows.push_back(std::move(reduced));
  }

  SimplexResult reduced = simplex_maximize(objective, rows);
  SimplexResult full;
  full.value = std::move(reduced.value);
  full.solution.assign(total, Rat(0));
  for (std::size_t k = 0; k < dense_to_full.size(); ++k) {
    full.solution[dense_to_full[k]] = std::move(reduced.solution[k]);
  }
  return split_solution(lp, std::move(full));
}

LpSolution solve_lp_canonical(const LpInstance& lp) {
  const std::size_t total = lp.variable_count();
  LpSolution best = solve_lp(lp);

  // Greedily pin variables to zero from the highest index down, keeping the
  // optimum intact.  No variable in the surviving support can be removed
  // without losing the optimum.
  std::vector<bool> keep(total, true);
  std::vector<Rat> flat;
  flat.reserve(total);
  flat.insert(flat.end(), best.x.begin(), best.x.end());
  flat.insert(flat.end(), best.y.begin(), best.y.end());

  for (std::size_t j = total; j-- > 0;) {
    if (!keep[j]) continue;
    if (flat[j] == 0) {
      keep[j] = false;
      continue;
    }
    keep[j] = false;
    LpSolution candidate = solve_lp_restricted(lp, keep);
    if (candidate.objective == best.objective) {
      best = candidate;
      flat.clear();
      flat.insert(flat.end(), best.x.begin(), best.x.end());
      flat.insert(flat.end(), best.y.begin(), best.y.end());
    } else {
      keep[j] = true;
    }
  }
  return best;
}

}  // namespace certmenu
