#pragma once

#include "certmenu/signal.hpp"

#include <vector>

namespace certmenu {

/// The set of signals after which the receiver accepts.  Always a finite
/// sorted set of distinct signals.  Never contains 0 (a zero likelihood
/// ratio is never disclosed on path) and, unless explicitly permitted for
/// the uninformative-equilibrium analysis, never contains 1.
class AcceptanceSet {
 public:
  AcceptanceSet() = default;
  explicit AcceptanceSet(std::vector<Signal> signals, bool allow_uninformative = false);

  const std::vector<Signal>& signals() const { return signals_; }
  std::size_t size() const { return signals_.size(); }
  bool empty() const { return signals_.empty(); }
  bool contains(const Signal& e) const;
  bool contains_one() const;
  bool allows_uninformative() const { return allow_uninformative_; }

  /// Smallest element; throws when empty.
  const Signal& infimum() const;

  friend bool operator==(const AcceptanceSet& a, const AcceptanceSet& b) {
    return a.signals_ == b.signals_;
  }

 private:
  std::vector<Signal> signals_;
  bool allow_uninformative_ = false;
};

}  // namespace certmenu
