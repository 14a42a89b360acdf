#include "certmenu/acceptance.hpp"

#include <algorithm>
#include <stdexcept>

namespace certmenu {

AcceptanceSet::AcceptanceSet(std::vector<Signal> signals, bool allow_uninformative)
    : signals_(std::move(signals)), allow_uninformative_(allow_uninformative) {
  std::sort(signals_.begin(), signals_.end());
  signals_.erase(std::unique(signals_.begin(), signals_.end()), signals_.end());
  for (const Signal& e : signals_) {
    if (e.is_zero()) throw std::invalid_argument("acceptance set cannot contain e = 0");
    if (e.is_one() && !allow_uninformative_) {
      throw std::invalid_argument("acceptance set contains e = 1; pass allow_uninformative to permit it");
    }
  }
}

bool AcceptanceSet::contains(const Signal& e) const {
  return std::binary_search(signals_.begin(), signals_.end(), e);
}

bool AcceptanceSet::contains_one() const { return contains(Signal(Rat(1))); }

const Signal& AcceptanceSet::infimum() const {
  if (signals_.empty()) throw std::logic_error("acceptance set is empty");
  return signals_.front();
}

}  // namespace certmenu
