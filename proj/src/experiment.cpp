#include "certmenu/experiment.hpp"

#include <stdexcept>

namespace certmenu {

Experiment Experiment::none() { return Experiment(); }

Experiment::Experiment(std::map<Signal, Rat> atoms_h) : atoms_(std::move(atoms_h)), none_(false) {
  Rat total_h(0);
  Rat total_l(0);
  for (auto it = atoms_.begin(); it != atoms_.end();) {
    const auto& [e, mass] = *it;
    if (mass < 0) throw std::invalid_argument("experiment mass must be nonnegative");
    if (mass == 0) {
      it = atoms_.erase(it);
      continue;
    }
    if (e.is_zero()) throw std::invalid_argument("state-h mass at e = 0 must be zero");
    total_h += mass;
    if (!e.is_infinite()) total_l += mass * e.inverse_coeff();
    ++it;
  }
  if (total_h != 1) throw std::invalid_argument("state-h masses must sum to 1");
  if (total_l > 1) throw std::invalid_argument("implied state-l masses exceed 1");
}

Rat Experiment::mass_h(const Signal& e) const {
  auto it = atoms_.find(e);
  return it == atoms_.end() ? Rat(0) : it->second;
}

Rat Experiment::mass_l(const Signal& e) const {
  if (none_) return Rat(0);
  if (e.is_zero()) {
    Rat used(0);
    for (const auto& [atom, mass] : atoms_) {
      if (!atom.is_infinite()) used += mass * atom.inverse_coeff();
    }
    return Rat(1) - used;
  }
  if (e.is_infinite()) return Rat(0);
  return mass_h(e) * e.inverse_coeff();
}

Rat Experiment::mass_h_on(const AcceptanceSet& set) const {
  Rat total(0);
  for (const Signal& e : set.signals()) total += mass_h(e);
  return total;
}

Rat Experiment::mass_l_on(const AcceptanceSet& set) const {
  Rat total(0);
  for (const Signal& e : set.signals()) total += mass_l(e);
  return total;
}

Rat low_state_mass(const Experiment& x, const Signal& e) { return x.mass_l(e); }

}  // namespace certmenu
