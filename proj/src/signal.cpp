#include "certmenu/signal.hpp"

#include <stdexcept>

namespace certmenu {

Signal::Signal(Rat value) : infinite_(false), value_(std::move(value)) {
  if (value_ < 0) throw std::invalid_argument("signal must be nonnegative");
}

Signal Signal::infinity() {
  Signal s;
  s.infinite_ = true;
  return s;
}

const Rat& Signal::finite() const {
  if (infinite_) throw std::logic_error("signal is infinite");
  return value_;
}

Signal Signal::reciprocal() const {
  if (infinite_) return Signal(Rat(0));
  if (value_ == 0) return infinity();
  return Signal(Rat(1) / value_);
}

Rat Signal::inverse_coeff() const {
  if (infinite_) return Rat(0);
  if (value_ == 0) throw std::logic_error("1/0 is not a finite coefficient");
  return Rat(1) / value_;
}

std::string Signal::str() const { return infinite_ ? "inf" : format_rat(value_); }

Signal Signal::parse(std::string_view text) {
  size_t begin = text.find_first_not_of(" \t");
  size_t end = text.find_last_not_of(" \t");
  std::string_view s = begin == std::string_view::npos ? std::string_view{} : text.substr(begin, end - begin + 1);
  if (s == "inf" || s == "Inf" || s == "INF" || s == "infinity") return infinity();
  return Signal(parse_rat(s));
}

}  // namespace certmenu
