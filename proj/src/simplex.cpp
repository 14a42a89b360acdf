#include "certmenu/simplex.hpp"

#include <stdexcept>

namespace certmenu {

SimplexResult simplex_maximize(const std::vector<Rat>& objective,
                               const std::vector<LinearConstraint>& constraints) {
  const std::size_t n = objective.size();
  const std::size_t m = constraints.size();

  // Tableau: m constraint rows over [structural | slack | rhs], then the
  // objective row holding negated reduced costs.
  std::vector<std::vector<Rat>> tab(m + 1, std::vector<Rat>(n + m + 1, Rat(0)));
  std::vector<std::size_t> basis(m);

  for (std::size_t i = 0; i < m; ++i) {
    if (constraints[i].coeffs.size() != n) throw std::invalid_argument("constraint width mismatch");
    if (constraints[i].rhs < 0) throw std::invalid_argument("simplex requires rhs >= 0");
    for (std::size_t j = 0; j < n; ++j) tab[i][j] = constraints[i].coeffs[j];
    tab[i][n + i] = 1;
    tab[i][n + m] = constraints[i].rhs;
    basis[i] = n + i;
  }
  for (std::size_t j = 0; j < n; ++j) tab[m][j] = -objective[j];

  for (;;) {
    // Entering column: smallest index with negative objective-row entry.
    std::size_t enter = n + m;
    for (std::size_t j = 0; j < n + m; ++j) {
      if (tab[m][j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == n + m) break;  // optimal

    // Leaving row: minimum ratio, ties by smallest basic index.
    std::size_t leave = m;
    Rat best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (tab[i][enter] <= 0) continue;
      Rat ratio = tab[i][n + m] / tab[i][enter];
      if (leave == m || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) throw std::runtime_error("simplex: unbounded objective");

    // Pivot.
    const Rat pivot = tab[leave][enter];
    for (auto& cell : tab[leave]) cell /= pivot;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const Rat factor = tab[i][enter];
      if (factor == 0) continue;
      for (std::size_t j = 0; j <= n + m; ++j) tab[i][j] -= factor * tab[leave][j];
    }
    basis[leave] = enter;
  }

  SimplexResult result;
  result.solution.assign(n, Rat(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) result.solution[basis[i]] = tab[i][n + m];
  }
  result.value = tab[m][n + m];
  return result;
}

}  // namespace certmenu
