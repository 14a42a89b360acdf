#pragma once

#include "certmenu/experiment.hpp"
#include "certmenu/rational.hpp"

namespace certmenu {

struct PricedExperiment {
  Experiment experiment;
  Rat price;
};

/// A posted menu: one priced option aimed at each type, plus the free
/// no-certification option that every menu carries implicitly.
class Menu {
 public:
  Menu(PricedExperiment high, PricedExperiment low);

  const PricedExperiment& high() const { return high_; }
  const PricedExperiment& low() const { return low_; }

  friend bool operator==(const Menu& a, const Menu& b) {
    return a.high_.experiment == b.high_.experiment && a.high_.price == b.high_.price &&
           a.low_.experiment == b.low_.experiment && a.low_.price == b.low_.price;
  }

 private:
  PricedExperiment high_;
  PricedExperiment low_;
};

}  // namespace certmenu
