#include "certmenu/obedience.hpp"

#include "certmenu/optimizer.hpp"

#include <doctest.h>

#include <random>
#include <vector>

using namespace certmenu;

namespace {

const MarketParams kBase = MarketParams::from_threshold(Rat(1, 4), Rat(1, 2));  // l = 1/3

Menu kg_style_menu() {
  Experiment pooled{{{Signal(Rat(3)), Rat(1)}}};
  return Menu{PricedExperiment{pooled, Rat(1, 3)}, PricedExperiment{pooled, Rat(1, 3)}};
}

Menu separating_menu() {
  Experiment top{{{Signal(Rat(5)), Rat(1)}}};
  return Menu{PricedExperiment{top, Rat(1)}, PricedExperiment{Experiment::none(), Rat(0)}};
}

// Exhaustive subset version of receiver obedience, for the equivalence check.
bool receiver_obedience_by_subsets(const Menu& m, const AcceptanceSet& set, const MarketParams& p) {
  const auto& atoms = set.signals();
  const std::size_t n = atoms.size();
  for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
    Rat high(0), low(0);
    bool in_support = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask & (std::size_t(1) << i))) continue;
      if (m.low().experiment.mass_l(atoms[i]) > 0) in_support = true;
      high += m.high().experiment.mass_h(atoms[i]);
      low += m.low().experiment.mass_l(atoms[i]);
    }
    if (!in_support) continue;  // subsets of the low option's support only
    if (p.odds() * high < low) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("the commitment-style pooled menu is obedient with a binding receiver constraint") {
  AcceptanceSet set({Signal(Rat(3))});
  ObedienceReport report = check_obedience(kg_style_menu(), set, kBase);
  CHECK(report.overall);
  CHECK(report.receiver_obedience.pass);
  CHECK(report.receiver_obedience.margin == 0);  // sigma_l(3|l) = 1/3 = l(mu) * 1
  CHECK(report.sender_ir_low.margin == 0);
}

TEST_CASE("the separating menu is obedient") {
  AcceptanceSet set({Signal(Rat(5))});
  ObedienceReport report = check_obedience(separating_menu(), set, kBase);
  CHECK(report.overall);
  CHECK(report.sender_ir_high.margin == 0);  // pays the full acceptance probability
  CHECK(report.sender_ic_low.pass);
}

TEST_CASE("a low-type-only accepted signal violates receiver obedience") {
  Experiment low_only{{{Signal(Rat(3)), Rat(1)}}};
  Menu m{PricedExperiment{Experiment::none(), Rat(0)}, PricedExperiment{low_only, Rat(0)}};
  AcceptanceSet set({Signal(Rat(3))});
  ObedienceReport report = check_obedience(m, set, kBase);
  CHECK_FALSE(report.overall);
  CHECK_FALSE(report.receiver_obedience.pass);
  CHECK(report.receiver_obedience.margin == Rat(-1, 3));  // 1/3 beyond l(mu) * 0
}

TEST_CASE("menu revenue") {
  CHECK(menu_revenue(separating_menu(), kBase) == Rat(1, 4));
  CHECK(menu_revenue(kg_style_menu(), kBase) == Rat(1, 3));
  Experiment top{{{Signal(Rat(2)), Rat(5, 6)}, {Signal(Rat(1, 2)), Rat(1, 6)}}};
  Menu m{PricedExperiment{top, Rat(3, 4)}, PricedExperiment{top, Rat(1, 3)}};
  CHECK(menu_revenue(m, kBase) == Rat(7, 16));
}

TEST_CASE("welfare accounts") {
  auto with_utilities =
      MarketParams::from_utilities(Rat(1, 4), {Rat(1), Rat(0), Rat(1), Rat(0)});

  SUBCASE("separating: receiver first best, no rent") {
    AcceptanceSet set({Signal(Rat(5))});
    WelfareAccount account = welfare(separating_menu(), set, with_utilities);
    CHECK(account.receiver_payoff == Rat(1));
    CHECK(account.rent_high == 0);
    CHECK(account.rent_low == 0);
    CHECK(account.accept_prob_h == 1);
    CHECK(account.accept_prob_l == 0);
    CHECK_FALSE(account.hypothetical);
  }

  SUBCASE("two-signal split menu") {
    // High option saturates both budgets on {2, 1/2}; low option is the
    // doubly-bound scaling with the residual at e = 1.
    Experiment high{{{Signal(Rat(2)), Rat(5, 6)}, {Signal(Rat(1, 2)), Rat(1, 6)}}};
    Experiment low{{{Signal(Rat(2)), Rat(5, 9)},
                    {Signal(Rat(1, 2)), Rat(1, 36)},
                    {Signal(Rat(1)), Rat(5, 12)}}};
    Menu m{PricedExperiment{high, Rat(3, 4)}, PricedExperiment{low, Rat(1, 3)}};
    AcceptanceSet set({Signal(Rat(2)), Signal(Rat(1, 2))});
    CHECK(check_obedience(m, set, with_utilities).overall);
    WelfareAccount account = welfare(m, set, with_utilities);
    CHECK(account.accept_prob_l == Rat(1, 3));
    CHECK(account.receiver_payoff == Rat(3, 4));
    CHECK(account.rent_high == Rat(1, 4));
    CHECK(account.rent_low == 0);
    CHECK(account.revenue == Rat(7, 16));
  }

  SUBCASE("pooled menu concedes rent to the high type") {
    AcceptanceSet set({Signal(Rat(3))});
    WelfareAccount account = welfare(kg_style_menu(), set, with_utilities);
    CHECK(account.accept_prob_h == 1);
    CHECK(account.accept_prob_l == Rat(1, 3));
    CHECK(account.rent_high == Rat(2, 3));
  }

  SUBCASE("non-obedient menus are labeled hypothetical") {
    Experiment low_only{{{Signal(Rat(3)), Rat(1)}}};
    Menu m{PricedExperiment{Experiment::none(), Rat(0)}, PricedExperiment{low_only, Rat(0)}};
    AcceptanceSet set({Signal(Rat(3))});
    CHECK(welfare(m, set, with_utilities).hypothetical);
  }

  SUBCASE("welfare without utilities omits the receiver payoff") {
    AcceptanceSet set({Signal(Rat(5))});
    CHECK_FALSE(welfare(separating_menu(), set, kBase).receiver_payoff.has_value());
  }
}

TEST_CASE("outcome equivalence") {
  AcceptanceSet set({Signal(Rat(5))});
  Menu a = separating_menu();

  SUBCASE("reflexive") { CHECK(outcome_equivalent(a, set, a, set, kBase)); }

  SUBCASE("differences off the acceptance set do not matter") {
    // Same accepted mass at 5, but the low option parks its mass at 3/2
    // (rejected) instead of being the null experiment.
    Experiment low_alt{{{Signal(Rat(3, 2)), Rat(1)}}};
    Menu b{a.high(), PricedExperiment{low_alt, Rat(0)}};
    CHECK(outcome_equivalent(a, set, b, set, kBase));
  }

  SUBCASE("revenue differences break equivalence") {
    Menu b{PricedExperiment{a.high().experiment, Rat(1, 2)},
           PricedExperiment{Experiment::none(), Rat(0)}};
    CHECK_FALSE(outcome_equivalent(a, set, b, set, kBase));
  }

  SUBCASE("different acceptance sets break equivalence") {
    AcceptanceSet other({Signal(Rat(5)), Signal(Rat(7))});
    CHECK_FALSE(outcome_equivalent(a, set, a, other, kBase));
  }
}

TEST_CASE("sender incentive compatibility implies allocation monotonicity") {
  std::mt19937_64 rng(131);
  auto pick = [&](unsigned long k) { return rng() % k; };
  int ic_menus = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<Signal> atoms;
    const int n = 1 + static_cast<int>(pick(4));
    for (int i = 0; i < n; ++i) {
      Rat value(1 + static_cast<long>(pick(20)), 1 + static_cast<long>(pick(5)));
      if (value == 1) continue;
      atoms.push_back(Signal(value));
    }
    if (atoms.empty()) continue;
    AcceptanceSet set(atoms);

    auto random_option = [&]() {
      std::map<Signal, Rat> masses;
      Rat budget_h(1), budget_l(1);
      for (const Signal& e : set.signals()) {
        if (pick(2) == 0) continue;
        Rat cap = std::min(budget_h, budget_l / e.inverse_coeff());
        if (cap <= 0) continue;
        Rat mass = cap * Rat(1 + static_cast<long>(pick(3)), 3 + static_cast<long>(pick(3)));
        masses[e] = mass;
        budget_h -= mass;
        budget_l -= mass * e.inverse_coeff();
      }
      if (budget_h > 0) masses[Signal::infinity()] += budget_h;
      return Experiment(masses);
    };
    Menu m{PricedExperiment{random_option(), Rat(static_cast<long>(pick(4)), 4)},
           PricedExperiment{random_option(), Rat(static_cast<long>(pick(4)), 4)}};
    ObedienceReport report = check_obedience(m, set, kBase);
    if (!report.sender_ic_high.pass || !report.sender_ic_low.pass) continue;
    ++ic_menus;

    Rat monotonicity(0);
    for (const Signal& e : set.signals()) {
      monotonicity += (Rat(1) - e.inverse_coeff()) *
                      (m.high().experiment.mass_h(e) - m.low().experiment.mass_h(e));
    }
    CHECK(monotonicity >= 0);
  }
  CHECK(ic_menus > 50);
}

TEST_CASE("acceptance sets below 1 admit only free never-accepted menus") {
  std::mt19937_64 rng(151);
  auto pick = [&](unsigned long k) { return rng() % k; };
  AcceptanceSet set({Signal(Rat(1, 2)), Signal(Rat(3, 4)), Signal(Rat(1, 5))});
  int obedient = 0;
  for (int trial = 0; trial < 500; ++trial) {
    auto random_option = [&]() {
      std::map<Signal, Rat> masses;
      Rat budget_h(1), budget_l(1);
      for (const Signal& e : set.signals()) {
        if (pick(2) == 0) continue;
        Rat cap = std::min(budget_h, budget_l / e.inverse_coeff());
        if (cap <= 0) continue;
        Rat mass = cap * Rat(1, 1 + static_cast<long>(pick(4)));
        masses[e] = mass;
        budget_h -= mass;
        budget_l -= mass * e.inverse_coeff();
      }
      if (budget_h > 0) masses[Signal::infinity()] += budget_h;
      return Experiment(masses);
    };
    Menu m{PricedExperiment{random_option(), Rat(static_cast<long>(pick(3)), 4)},
           PricedExperiment{random_option(), Rat(static_cast<long>(pick(3)), 4)}};
    if (!check_obedience(m, set, kBase).overall) continue;
    ++obedient;
    CHECK(m.high().experiment.mass_h_on(set) == 0);
    CHECK(m.low().experiment.mass_l_on(set) == 0);
    CHECK(m.high().price == 0);
    CHECK(m.low().price == 0);
  }
  CHECK(obedient > 0);  // the free no-trade menu shows up
}

TEST_CASE("obedient menus keep the posterior at accepted atoms above the threshold") {
  // Feasible mass vectors materialized into menus, so obedience usually
  // holds and accepted low-option mass is common.
  std::mt19937_64 rng(173);
  auto pick = [&](unsigned long k) { return rng() % k; };
  int checked_atoms = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Signal> atoms;
    const int n = 1 + static_cast<int>(pick(3));
    for (int i = 0; i < n; ++i) {
      Rat value(1 + static_cast<long>(pick(20)), 1 + static_cast<long>(pick(4)));
      if (value == 1) continue;
      atoms.push_back(Signal(value));
    }
    if (atoms.empty()) continue;
    AcceptanceSet set(atoms);
    const std::size_t count = set.size();

    // Draw x on the probability budgets, then y below the obedience caps.
    std::vector<Rat> x(count, Rat(0)), y(count, Rat(0));
    Rat budget_h(1), budget_l(1);
    for (std::size_t i = 0; i < count; ++i) {
      Rat cap = std::min(budget_h, budget_l / set.signals()[i].inverse_coeff());
      if (cap <= 0) continue;
      x[i] = cap * Rat(static_cast<long>(pick(4)), 4);
      budget_h -= x[i];
      budget_l -= x[i] * set.signals()[i].inverse_coeff();
    }
    budget_h = 1;
    budget_l = 1;
    Rat mono_x(0), mono_y(0);
    for (std::size_t i = 0; i < count; ++i) {
      mono_x += (Rat(1) - set.signals()[i].inverse_coeff()) * x[i];
    }
    for (std::size_t i = 0; i < count; ++i) {
      const Rat inv = set.signals()[i].inverse_coeff();
      Rat cap = std::min({budget_h, inv > 0 ? budget_l / inv : budget_h,
                          inv > 0 ? kBase.odds() * x[i] / inv : budget_h});
      if (cap <= 0) continue;
      Rat mass = cap * Rat(static_cast<long>(pick(4)), 4);
      const Rat weight = Rat(1) - inv;
      // Keep the allocation-monotonicity pair intact.
      if (mono_y + weight * mass < 0 || mono_y + weight * mass > mono_x) continue;
      y[i] = mass;
      mono_y += weight * mass;
      budget_h -= mass;
      budget_l -= mass * inv;
    }

    Menu m = materialize_menu(x, y, set);
    if (!check_obedience(m, set, kBase).overall) continue;

    for (const Signal& e : set.signals()) {
      const Rat low_mass = m.low().experiment.mass_l(e);
      if (low_mass == 0) continue;
      const Rat high_mass = m.high().experiment.mass_h(e);
      const Rat belief =
          kBase.mu() * high_mass / (kBase.mu() * high_mass + (1 - kBase.mu()) * low_mass);
      CHECK(belief >= kBase.pi_star());
      ++checked_atoms;
    }
  }
  CHECK(checked_atoms > 20);
}

TEST_CASE("pointwise receiver check equals the subset quantifier") {
  std::mt19937_64 rng(71);
  auto pick = [&](unsigned long k) { return rng() % k; };
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    // Random small menus over a random acceptance set of up to 6 signals.
    std::vector<Signal> atoms;
    const int n = 1 + static_cast<int>(pick(6));
    for (int i = 0; i < n; ++i) {
      Rat value(1 + static_cast<long>(pick(24)), 1 + static_cast<long>(pick(4)));
      if (value == 1 || value == 0) continue;
      atoms.push_back(Signal(value));
    }
    if (atoms.empty()) continue;
    AcceptanceSet set(atoms);

    auto random_option = [&]() {
      std::map<Signal, Rat> masses;
      Rat budget_h(1), budget_l(1);
      for (const Signal& e : set.signals()) {
        if (pick(3) == 0) continue;
        Rat cap = std::min(budget_h, budget_l / e.inverse_coeff());
        if (cap <= 0) continue;
        Rat mass = cap * Rat(1 + static_cast<long>(pick(4)), 4 + static_cast<long>(pick(4)));
        masses[e] = mass;
        budget_h -= mass;
        budget_l -= mass * e.inverse_coeff();
      }
      if (budget_h > 0) masses[Signal::infinity()] += budget_h;
      return Experiment(masses);
    };
    Menu m{PricedExperiment{random_option(), Rat(1, 2)},
           PricedExperiment{random_option(), Rat(1, 4)}};

    ObedienceReport report = check_obedience(m, set, kBase);
    CHECK(report.receiver_obedience.pass == receiver_obedience_by_subsets(m, set, kBase));
    ++checked;
  }
  CHECK(checked > 200);
}
