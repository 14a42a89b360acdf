#include "certmenu/optimizer.hpp"

#include "certmenu/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace certmenu {

std::string_view to_string(SolverPath path) {
  switch (path) {
    case SolverPath::lp: return "lp";
    case SolverPath::closed_form: return "closed-form";
    case SolverPath::support_enum: return "support-enum";
  }
  return "?";
}

std::string_view to_string(BinaryRegime regime) {
  switch (regime) {
    case BinaryRegime::split: return "split";
    case BinaryRegime::uniform: return "uniform";
    case BinaryRegime::pooled: return "pooled";
  }
  return "?";
}

std::pair<Rat, Rat> recover_prices(const std::vector<Rat>& x, const std::vector<Rat>& y,
                                   const AcceptanceSet& set) {
  const auto& atoms = set.signals();
  if (x.size() != atoms.size() || y.size() != atoms.size()) {
    throw std::invalid_argument("mass vector width mismatch");
  }
  Rat rho_h(0), rho_l(0);
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const Rat inv = atoms[i].inverse_coeff();
    rho_h += x[i] - (Rat(1) - inv) * y[i];
    rho_l += y[i] * inv;
  }
  return {std::move(rho_h), std::move(rho_l)};
}

namespace {

Experiment materialize_option(const std::vector<Rat>& mass, const AcceptanceSet& set) {
  const auto& atoms = set.signals();
  Rat sum_h(0), sum_l(0);
  std::map<Signal, Rat> out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (mass[i] < 0) throw std::invalid_argument("negative mass");
    if (mass[i] == 0) continue;
    out[atoms[i]] = mass[i];
    sum_h += mass[i];
    sum_l += mass[i] * atoms[i].inverse_coeff();
  }
  if (sum_h == 0) return Experiment::none();
  if (sum_h > 1 || sum_l > 1) throw std::invalid_argument("accepted mass exceeds a probability budget");

  const Signal one{Rat(1)};
  auto place_at_infinity = [&](Rat extra) {
    if (extra == 0) return;
    if (set.contains(Signal::infinity())) {
      throw std::invalid_argument("residual needs the top signal, but it is accepted");
    }
    out[Signal::infinity()] += std::move(extra);
  };
  if (!set.contains(one)) {
    Rat common = std::min(Rat(1) - sum_h, Rat(1) - sum_l);
    if (common > 0) out[one] += common;
    place_at_infinity((Rat(1) - sum_h) - common);
  } else {
    place_at_infinity(Rat(1) - sum_h);
  }
  // Whatever the low state still needs sits at e = 0 implicitly.
  return Experiment(std::move(out));
}

SolveResult assemble(const AcceptanceSet& set, const MarketParams& p, std::vector<Rat> x,
                     std::vector<Rat> y, Rat objective, SolverPath path) {
  Menu menu = materialize_menu(x, y, set);
  WelfareAccount account = welfare(menu, set, p);
  if (account.revenue != objective) {
    throw std::logic_error("materialized revenue disagrees with the solver certificate");
  }
  if (objective > 0) {
    Rat sum_x(0);
    for (const Rat& v : x) sum_x += v;
    if (sum_x != 1) {
      throw std::logic_error("positive revenue without full acceptance of the high type");
    }
  }
  SolveResult result{std::move(menu), std::move(account), RegimeLabel::degenerate, path,
                     std::move(objective), set, std::move(x), std::move(y)};
  result.regime = classify(result, set);
  return result;
}

}  // namespace

Menu materialize_menu(const std::vector<Rat>& x, const std::vector<Rat>& y,
                      const AcceptanceSet& set) {
  Experiment high = materialize_option(x, set);
  Experiment low = materialize_option(y, set);
  auto [rho_h, rho_l] = recover_prices(x, y, set);
  return Menu{PricedExperiment{std::move(high), std::move(rho_h)},
              PricedExperiment{std::move(low), std::move(rho_l)}};
}

SolveResult solve_revenue_max(const AcceptanceSet& set, const MarketParams& p) {
  LpInstance lp = build_lp(set, p);
  LpSolution sol = solve_lp_canonical(lp);
  return assemble(set, p, std::move(sol.x), std::move(sol.y), std::move(sol.objective),
                  SolverPath::lp);
}

std::vector<LpSolution> optimal_vertices(const LpInstance& lp) {
  std::vector<LpSolution> vertices = enumerate_feasible_vertices(lp);
  Rat best(0);
  for (const LpSolution& v : vertices) best = std::max(best, v.objective);
  std::vector<LpSolution> out;
  for (LpSolution& v : vertices) {
    if (v.objective == best) out.push_back(std::move(v));
  }
  return out;
}

std::vector<BinaryMenuCandidate> closed_form_binary(const Signal& e_h, const Signal& e_l,
                                                    const MarketParams& p) {
  if (!p.pessimistic()) throw std::invalid_argument("requires a pessimistic receiver");
  if (e_h.is_infinite() || !(e_h > Signal(Rat(1)))) {
    throw std::invalid_argument("e_h must be finite and above 1");
  }
  if (!(e_l < Signal(Rat(1))) || e_l.is_zero()) {
    throw std::invalid_argument("e_l must lie strictly between 0 and 1");
  }

  const Rat eh = e_h.finite();
  const Rat el = e_l.finite();
  const Rat& mu = p.mu();
  const Rat& l = p.odds();
  const Rat uniform_revenue = mu + (1 - mu) * l * el;
  const Rat inv_mu = Rat(1) / mu;
  const Rat inv_l = Rat(1) / l;

  const AcceptanceSet set{{e_l, e_h}};

  // Index 0 is e_l, index 1 is e_h (acceptance sets sort ascending).
  auto make = [&](BinaryRegime regime, Rat x_el, Rat x_eh, Rat y_el, Rat y_eh) {
    std::vector<Rat> x{std::move(x_el), std::move(x_eh)};
    std::vector<Rat> y{std::move(y_el), std::move(y_eh)};
    Menu menu = materialize_menu(x, y, set);
    Rat revenue = menu_revenue(menu, p);
    return BinaryMenuCandidate{regime, std::move(menu), std::move(x), std::move(y),
                               std::move(revenue)};
  };

  // Share of the high option that saturates its low-state budget.
  const Rat x_sat = eh * (1 - el) / (eh - el);

  auto split_menu = [&] {
    const Rat scale = (1 - l * el) / (1 - l * eh * el);
    Rat x_eh = x_sat * scale;
    Rat x_el = 1 - x_eh;
    Rat y_eh = eh * l * x_eh;
    Rat y_el = el * l * x_el;
    return make(BinaryRegime::split, std::move(x_el), std::move(x_eh), std::move(y_el),
                std::move(y_eh));
  };
  auto uniform_menu = [&] {
    Rat x_eh = x_sat;
    Rat x_el = 1 - x_sat;
    Rat y_eh = el * l * x_eh;
    Rat y_el = el * l * x_el;
    return make(BinaryRegime::uniform, std::move(x_el), std::move(x_eh), std::move(y_el),
                std::move(y_eh));
  };
  auto pooled_menu = [&] { return make(BinaryRegime::pooled, Rat(0), Rat(1), Rat(0), Rat(1)); };

  std::vector<BinaryMenuCandidate> candidates;
  // Above 1 exactly when the pooled price 1/e_h beats the uniform menu.
  const Rat clearance = eh * uniform_revenue;
  if (eh <= inv_l && eh <= inv_mu) {
    if (clearance <= 1) {
      candidates.push_back(split_menu());
      if (clearance == 1) candidates.push_back(uniform_menu());
    } else {
      candidates.push_back(uniform_menu());
    }
  } else if (eh <= inv_mu) {
    if (clearance >= 1) {
      candidates.push_back(uniform_menu());
      if (clearance == 1) candidates.push_back(pooled_menu());
    } else {
      candidates.push_back(pooled_menu());
    }
  } else {
    candidates.push_back(uniform_menu());
  }
  return candidates;
}

std::optional<PartialPoolingMenu> partial_pooling_menu(const Signal& e_bar, const Signal& e_h,
                                                       const Signal& e_l, const MarketParams& p) {
  if (!p.pessimistic()) throw std::invalid_argument("requires a pessimistic receiver");
  if (e_bar.is_infinite() || e_h.is_infinite()) {
    throw std::invalid_argument("signals must be finite");
  }
  if (!(e_bar > e_h && e_h > Signal(Rat(1)) && Signal(Rat(1)) > e_l && !e_l.is_zero())) {
    throw std::invalid_argument("need e_bar > e_h > 1 > e_l > 0");
  }

  const Rat ebar = e_bar.finite();
  const Rat eh = e_h.finite();
  const Rat el = e_l.finite();
  const Rat& mu = p.mu();
  const Rat& l = p.odds();

  // Existence: the three-tier revenue must clear the pooled alternative
  // 1/e_h, and l(mu) must leave room for the top signal.
  const Rat k = eh * el * (ebar - 1) / (ebar * (eh - 1) + el * (ebar - eh));
  const Rat revenue = mu + (1 - mu) * l * k;
  const bool clears_pooling = l >= Rat(1) / eh && revenue >= Rat(1) / eh;
  const Rat odds_cap = (el * (ebar - eh) + ebar * (eh - 1)) / ((ebar - 1) * el * eh);
  if (!clears_pooling || l > odds_cap) return std::nullopt;

  const Rat inv_bar = Rat(1) / ebar;
  const Rat x = (1 - inv_bar) / ((Rat(1) / el - inv_bar) + (Rat(1) / eh - inv_bar) * (1 - el) / (eh - 1));
  const Rat y = x * (1 - el) / (eh - 1);

  const AcceptanceSet set{{e_l, e_h, e_bar}};
  std::vector<Rat> xv{x, y, 1 - x - y};
  std::vector<Rat> yv{el * l * x, y * eh * l, Rat(0)};
  Menu menu = materialize_menu(xv, yv, set);
  if (menu_revenue(menu, p) != revenue) {
    throw std::logic_error("three-point menu revenue mismatch");
  }
  return PartialPoolingMenu{std::move(menu), std::move(xv), std::move(yv), revenue};
}

SolveResult enumerate_support_menus(const AcceptanceSet& set, const MarketParams& p) {
  LpInstance lp = build_lp(set, p);
  const std::size_t n = set.size();

  LpSolution best;
  best.x.assign(n, Rat(0));
  best.y.assign(n, Rat(0));
  best.objective = Rat(0);

  std::vector<std::size_t> high_support;
  auto try_low_subsets = [&](const std::vector<std::size_t>& high) {
    // All low supports within the high support, at most two signals.
    std::vector<std::vector<std::size_t>> lows{{}};
    for (std::size_t i = 0; i < high.size(); ++i) {
      lows.push_back({high[i]});
      for (std::size_t j = i + 1; j < high.size(); ++j) lows.push_back({high[i], high[j]});
    }
    for (const auto& low : lows) {
      std::vector<bool> keep(2 * n, false);
      for (std::size_t i : high) keep[i] = true;
      for (std::size_t i : low) keep[n + i] = true;
      LpSolution sol = solve_lp_restricted(lp, keep);
      if (sol.objective > best.objective) best = std::move(sol);
    }
  };

  // High supports of size 1..3, in lexicographic index order.
  for (std::size_t a = 0; a < n; ++a) {
    try_low_subsets({a});
    for (std::size_t b = a + 1; b < n; ++b) {
      try_low_subsets({a, b});
      for (std::size_t c = b + 1; c < n; ++c) try_low_subsets({a, b, c});
    }
  }

  return assemble(set, p, std::move(best.x), std::move(best.y), std::move(best.objective),
                  SolverPath::support_enum);
}

SolveResult solve_single_item(const AcceptanceSet& set, const MarketParams& p) {
  const auto& atoms = set.signals();
  const std::size_t n = atoms.size();

  // Pooled scenario: both types buy one experiment, priced at the low
  // type's willingness to pay.  Obedience forces accepted mass onto signals
  // of at least 1/l(mu), where the cheapest such signal is the best carrier.
  std::vector<Rat> objective(n, Rat(0));
  bool pooling_feasible = false;
  const Signal threshold = p.threshold_signal();
  for (std::size_t i = 0; i < n; ++i) {
    if (atoms[i] >= threshold) {
      objective[i] = atoms[i].inverse_coeff();
      pooling_feasible = true;
    }
  }
  Rat pooled_value(0);
  std::vector<Rat> pooled_mass(n, Rat(0));
  if (pooling_feasible) {
    std::vector<LinearConstraint> rows(2);
    rows[0].coeffs.assign(n, Rat(1));
    rows[0].rhs = Rat(1);
    rows[1].coeffs.resize(n);
    for (std::size_t i = 0; i < n; ++i) rows[1].coeffs[i] = atoms[i].inverse_coeff();
    rows[1].rhs = Rat(1);
    // Signals below the threshold stay out of the pooled option.
    for (std::size_t i = 0; i < n; ++i) {
      if (atoms[i] < threshold) {
        LinearConstraint pin;
        pin.coeffs.assign(n, Rat(0));
        pin.coeffs[i] = 1;
        pin.rhs = Rat(0);
        rows.push_back(std::move(pin));
      }
    }
    SimplexResult pooled = simplex_maximize(objective, rows);
    pooled_value = pooled.value;
    pooled_mass = std::move(pooled.solution);
  }

  // Exclusion scenario: only the high type buys, at price 1; the low type
  // takes free no-certification.
  std::size_t carrier = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (atoms[i] > Signal(Rat(1))) {
      carrier = i;
      break;
    }
  }

  std::vector<Rat> x(n, Rat(0)), y(n, Rat(0));
  if (carrier < n && p.mu() >= pooled_value) {
    x[carrier] = 1;
    return assemble(set, p, std::move(x), std::move(y), p.mu(), SolverPath::lp);
  }
  if (pooling_feasible && pooled_value > 0) {
    y = pooled_mass;
    return assemble(set, p, std::move(pooled_mass), std::move(y), std::move(pooled_value),
                    SolverPath::lp);
  }
  return assemble(set, p, std::move(x), std::move(y), Rat(0), SolverPath::lp);
}

}  // namespace certmenu
