#include "certmenu/market.hpp"

#include <stdexcept>

namespace certmenu {

ReceiverUtilities::ReceiverUtilities(Rat v_ah_h, Rat v_al_h, Rat v_al_l, Rat v_ah_l)
    : accept_high(std::move(v_ah_h)),
      reject_high(std::move(v_al_h)),
      reject_low(std::move(v_al_l)),
      accept_low(std::move(v_ah_l)) {
  if (!(accept_high > reject_high)) {
    throw std::invalid_argument("receiver must strictly prefer accepting a high type");
  }
  if (!(reject_low > accept_low)) {
    throw std::invalid_argument("receiver must strictly prefer rejecting a low type");
  }
}

Rat derive_threshold(const ReceiverUtilities& u) {
  const Rat loss_accepting_low = u.reject_low - u.accept_low;
  const Rat gain_accepting_high = u.accept_high - u.reject_high;
  return loss_accepting_low / (loss_accepting_low + gain_accepting_high);
}

Rat odds_factor(const Rat& mu, const Rat& pi_star) {
  if (mu <= 0 || mu >= 1 || pi_star <= 0 || pi_star >= 1) {
    throw std::invalid_argument("mu and pi* must lie strictly in (0,1)");
  }
  return mu * (1 - pi_star) / (pi_star * (1 - mu));
}

Rat posterior(const Rat& mu, const Signal& e) {
  if (mu <= 0 || mu >= 1) throw std::invalid_argument("mu must lie strictly in (0,1)");
  if (e.is_infinite()) return Rat(1);
  const Rat& v = e.finite();
  return v * mu / (v * mu + 1 - mu);
}

Action receiver_best_response(const Rat& belief, const Rat& pi_star) {
  if (belief < 0 || belief > 1) throw std::invalid_argument("belief must lie in [0,1]");
  return belief >= pi_star ? Action::accept : Action::reject;
}

MarketParams::MarketParams(Rat mu, Rat pi_star, std::optional<ReceiverUtilities> utilities)
    : mu_(std::move(mu)),
      pi_star_(std::move(pi_star)),
      odds_(odds_factor(mu_, pi_star_)),
      utilities_(std::move(utilities)) {}

MarketParams MarketParams::from_threshold(Rat mu, Rat pi_star) {
  return MarketParams(std::move(mu), std::move(pi_star), std::nullopt);
}

MarketParams MarketParams::from_utilities(Rat mu, ReceiverUtilities utilities) {
  Rat pi_star = derive_threshold(utilities);
  return MarketParams(std::move(mu), std::move(pi_star), std::move(utilities));
}

}  // namespace certmenu
