#include "certmenu/obedience.hpp"

namespace certmenu {

namespace {

CheckMargin margin_of(Rat slack) { return CheckMargin{slack >= 0, std::move(slack)}; }

}  // namespace

ObedienceReport check_obedience(const Menu& m, const AcceptanceSet& set, const MarketParams& p) {
  const Experiment& sig_h = m.high().experiment;
  const Experiment& sig_l = m.low().experiment;
  const Rat& rho_h = m.high().price;
  const Rat& rho_l = m.low().price;

  // Accepted mass of each option under each state.
  const Rat high_under_h = sig_h.mass_h_on(set);
  const Rat high_under_l = sig_h.mass_l_on(set);
  const Rat low_under_h = sig_l.mass_h_on(set);
  const Rat low_under_l = sig_l.mass_l_on(set);

  ObedienceReport report;
  report.sender_ic_high = margin_of((high_under_h - rho_h) - (low_under_h - rho_l));
  report.sender_ic_low = margin_of((low_under_l - rho_l) - (high_under_l - rho_h));
  report.sender_ir_high = margin_of(high_under_h - rho_h);
  report.sender_ir_low = margin_of(low_under_l - rho_l);

  CheckMargin receiver;
  bool first = true;
  for (const Signal& e : set.signals()) {
    Rat slack = p.odds() * sig_h.mass_h(e) - sig_l.mass_l(e);
    if (first || slack < receiver.margin) receiver = margin_of(std::move(slack));
    first = false;
  }
  report.receiver_obedience = receiver;

  report.overall = report.sender_ic_high.pass && report.sender_ic_low.pass &&
                   report.sender_ir_high.pass && report.sender_ir_low.pass &&
                   report.receiver_obedience.pass;
  return report;
}

Rat menu_revenue(const Menu& m, const MarketParams& p) {
  return p.mu() * m.high().price + (1 - p.mu()) * m.low().price;
}

WelfareAccount welfare(const Menu& m, const AcceptanceSet& set, const MarketParams& p) {
  WelfareAccount account;
  account.accept_prob_h = m.high().experiment.mass_h_on(set);
  account.accept_prob_l = m.low().experiment.mass_l_on(set);
  account.rent_high = account.accept_prob_h - m.high().price;
  account.rent_low = account.accept_prob_l - m.low().price;
  account.revenue = menu_revenue(m, p);
  account.hypothetical = !check_obedience(m, set, p).overall;

  if (p.utilities()) {
    const ReceiverUtilities& u = *p.utilities();
    const Rat& ah = account.accept_prob_h;
    const Rat& al = account.accept_prob_l;
    Rat payoff = p.mu() * (ah * u.accept_high + (1 - ah) * u.reject_high) +
                 (1 - p.mu()) * (al * u.accept_low + (1 - al) * u.reject_low);
    account.receiver_payoff = std::move(payoff);
  }
  return account;
}

bool outcome_equivalent(const Menu& menu_a, const AcceptanceSet& set_a, const Menu& menu_b,
                        const AcceptanceSet& set_b, const MarketParams& p) {
  if (!(set_a == set_b)) return false;
  for (const Signal& e : set_a.signals()) {
    if (menu_a.high().experiment.mass_h(e) != menu_b.high().experiment.mass_h(e)) return false;
    if (menu_a.low().experiment.mass_h(e) != menu_b.low().experiment.mass_h(e)) return false;
  }
  return menu_revenue(menu_a, p) == menu_revenue(menu_b, p);
}

}  // namespace certmenu
