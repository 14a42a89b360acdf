#pragma once

#include "certmenu/rational.hpp"

#include <compare>
#include <string>
#include <string_view>

namespace certmenu {

/// A test outcome identified with its likelihood ratio: an extended
/// nonnegative rational in [0, inf].  Values above 1 are evidence for the
/// high type; inf can only be produced by the high type and 0 only by the
/// low type.  The ordering is total with inf as the top element.
class Signal {
 public:
  Signal() : infinite_(false), value_(0) {}
  explicit Signal(Rat value);
  explicit Signal(long value) : Signal(Rat(value)) {}

  static Signal infinity();

  bool is_infinite() const { return infinite_; }
  bool is_zero() const { return !infinite_ && value_ == 0; }
  bool is_one() const { return !infinite_ && value_ == 1; }

  /// Finite value; throws std::logic_error when infinite.
  const Rat& finite() const;

  /// The reciprocal under the conventions 1/inf = 0 and 1/0 = inf.
  Signal reciprocal() const;

  /// 1/e as a plain rational coefficient, with 1/inf = 0.
  /// Throws for e = 0 (the coefficient would be infinite).
  Rat inverse_coeff() const;

  friend bool operator==(const Signal& a, const Signal& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend bool operator<(const Signal& a, const Signal& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator!=(const Signal& a, const Signal& b) { return !(a == b); }
  friend bool operator>(const Signal& a, const Signal& b) { return b < a; }
  friend bool operator<=(const Signal& a, const Signal& b) { return !(b < a); }
  friend bool operator>=(const Signal& a, const Signal& b) { return !(a < b); }

  std::string str() const;

  /// Accepts "inf", fractions ("5/6"), integers ("3") and decimals ("0.5").
  static Signal parse(std::string_view text);

 private:
  bool infinite_;
  Rat value_;
};

}  // namespace certmenu
