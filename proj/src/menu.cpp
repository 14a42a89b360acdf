#include "certmenu/menu.hpp"

#include <stdexcept>

namespace certmenu {

namespace {

void check_price(const PricedExperiment& option) {
  if (option.price < 0 || option.price > 1) {
    throw std::invalid_argument("menu prices must lie in [0,1]");
  }
  if (option.experiment.is_none() && option.price != 0) {
    throw std::invalid_argument("the no-certification option must be free");
  }
}

}  // namespace

Menu::Menu(PricedExperiment high, PricedExperiment low) : high_(std::move(high)), low_(std::move(low)) {
  check_price(high_);
  check_price(low_);
}

}  // namespace certmenu
