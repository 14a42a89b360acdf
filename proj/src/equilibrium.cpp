#include "certmenu/equilibrium.hpp"

#include "certmenu/obedience.hpp"
#include "certmenu/optimizer.hpp"

#include <stdexcept>

namespace certmenu {

std::string_view to_string(RegimeLabel label) {
  switch (label) {
    case RegimeLabel::separating: return "separating";
    case RegimeLabel::kg_pooling: return "kg-pooling";
    case RegimeLabel::partial_pooling: return "partial-pooling";
    case RegimeLabel::bad_news: return "bad-news";
    case RegimeLabel::degenerate: return "degenerate";
    case RegimeLabel::uninformative: return "uninformative";
    case RegimeLabel::no_trade: return "no-trade";
  }
  return "?";
}

RegimeLabel classify(const SolveResult& r, const AcceptanceSet& set) {
  const auto& atoms = set.signals();
  const std::size_t n = atoms.size();
  if (r.x.size() != n || r.y.size() != n) throw std::invalid_argument("mass vector width mismatch");

  if (r.welfare.revenue == 0) return RegimeLabel::degenerate;

  for (std::size_t i = 0; i < n; ++i) {
    if (atoms[i].is_one() && (r.x[i] > 0 || r.y[i] > 0)) return RegimeLabel::uninformative;
  }

  Rat sum_x(0);
  bool any_y = false;
  for (std::size_t i = 0; i < n; ++i) {
    sum_x += r.x[i];
    if (r.y[i] > 0) any_y = true;
  }
  if (sum_x == 1 && !any_y) return RegimeLabel::separating;

  bool y_within_x = true;
  bool strict_subset = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (r.y[i] > 0 && r.x[i] == 0) y_within_x = false;
    if (r.x[i] > 0 && r.y[i] == 0) strict_subset = true;
  }
  if (any_y && y_within_x && strict_subset) return RegimeLabel::partial_pooling;

  for (std::size_t i = 0; i < n; ++i) {
    if (atoms[i] < Signal(Rat(1)) && r.y[i] > 0) return RegimeLabel::bad_news;
  }
  return RegimeLabel::kg_pooling;
}

SeparatingClass separating_threshold(const AcceptanceSet& set, const MarketParams& p) {
  const Signal cutoff(Rat(1) / p.mu());
  const Signal& inf = set.infimum();
  if (inf > cutoff) return SeparatingClass::must_separate;
  if (inf == cutoff) return SeparatingClass::may_separate;
  return SeparatingClass::cannot_separate;
}

SolveResult naive_receiver_solve(const MarketParams& p, int grid_size) {
  if (!p.pessimistic()) throw std::invalid_argument("naive receiver analysis needs mu < pi*");
  if (grid_size < 1) throw std::invalid_argument("grid size must be positive");

  std::vector<Signal> atoms;
  Rat point = Rat(1) / p.odds();
  for (int k = 0; k < grid_size; ++k) {
    atoms.push_back(Signal(point));
    point *= Rat(3, 2);
  }
  atoms.push_back(Signal::infinity());
  const AcceptanceSet set{std::move(atoms)};

  SolveResult result = solve_revenue_max(set, p);

  // mu <= 2 - 1/pi* is the same cut as l(mu) <= mu.
  const bool expect_separating = p.odds() <= p.mu();
  if (expect_separating) {
    if (result.regime != RegimeLabel::separating || result.certificate != p.mu()) {
      throw std::logic_error("naive receiver: expected the separating outcome");
    }
  } else {
    const Rat expected_price = p.odds();
    if (result.regime != RegimeLabel::kg_pooling || result.certificate != p.odds() ||
        result.x.front() != 1 || result.y.front() != 1 ||
        result.menu.high().price != expected_price || result.menu.low().price != expected_price) {
      throw std::logic_error("naive receiver: expected pooling on 1/l(mu) at price l(mu)");
    }
  }
  return result;
}

SenderOptimum sender_optimal_search(const MarketParams& p, const std::vector<Signal>& candidates) {
  if (candidates.empty()) throw std::invalid_argument("need at least one candidate signal");
  if (!p.pessimistic()) throw std::invalid_argument("requires a pessimistic receiver");

  const Signal peak(Rat(1) / p.mu());
  bool saw_peak = false;

  SenderOptimum best;
  for (const Signal& e : candidates) {
    if (e == peak) saw_peak = true;
    const AcceptanceSet set{{e}};
    LpInstance lp = build_lp(set, p);
    // The rent can differ across revenue-maximizing menus (at 1/mu both the
    // separating and the pooled menu are optimal), so take the best rent
    // over the whole optimal face.
    Rat rent(0);
    for (const LpSolution& vertex : optimal_vertices(lp)) {
      Rat value(0);
      for (std::size_t i = 0; i < set.size(); ++i) {
        value += (Rat(1) - set.signals()[i].inverse_coeff()) * vertex.y[i];
      }
      rent = std::max(rent, value);
    }
    best.schedule.emplace_back(e, rent);
    if (best.schedule.size() == 1 || rent > best.rent) {
      best.best = e;
      best.rent = rent;
    }
  }
  if (!saw_peak) throw std::invalid_argument("candidate list must include 1/mu");

  const Rat expected = Rat(1) / p.odds() < Rat(1) / p.mu()
                           ? Rat(1) - p.mu()
                           : p.odds() * (1 - p.mu()) / p.mu();
  if (best.best != peak || best.rent != expected) {
    throw std::logic_error("sender-optimal rent must peak at 1/mu");
  }
  return best;
}

Experiment kg_menu(const MarketParams& p) {
  if (!p.pessimistic()) throw std::invalid_argument("requires a pessimistic receiver");
  return Experiment{{{p.threshold_signal(), Rat(1)}}};
}

std::pair<Menu, AcceptanceSet> certifier_optimal_uninformative(const MarketParams& p) {
  if (!p.pessimistic()) throw std::invalid_argument("requires a pessimistic receiver");
  const AcceptanceSet set{{Signal(Rat(1))}, /*allow_uninformative=*/true};
  Menu menu = materialize_menu({Rat(1)}, {p.odds()}, set);
  return {std::move(menu), set};
}

std::array<OptimisticOutcome, 2> optimistic_receiver_outcomes(const MarketParams& p) {
  if (p.pessimistic()) throw std::invalid_argument("requires an optimistic receiver (mu >= pi*)");

  std::optional<Rat> prior_payoff;
  if (p.utilities()) {
    // The receiver accepts on the prior in both outcomes.
    prior_payoff = p.mu() * p.utilities()->accept_high + (1 - p.mu()) * p.utilities()->accept_low;
  }

  Menu no_trade{PricedExperiment{Experiment::none(), Rat(0)},
                PricedExperiment{Experiment::none(), Rat(0)}};

  Experiment uninformative{{{Signal(Rat(1)), Rat(1)}}};
  Menu parasitic{PricedExperiment{uninformative, Rat(1)}, PricedExperiment{uninformative, Rat(1)}};

  return {OptimisticOutcome{RegimeLabel::no_trade, std::move(no_trade), Rat(0), prior_payoff},
          OptimisticOutcome{RegimeLabel::uninformative, std::move(parasitic), Rat(1), prior_payoff}};
}

}  // namespace certmenu
