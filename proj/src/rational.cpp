#include "certmenu/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace certmenu {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad(std::string_view text) {
  throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
}

}  // namespace

Rat parse_rat(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) bad(text);

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) bad(text);

  Rat result;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad(text);
    Int p{std::string(num)};
    Int q{std::string(den)};
    if (q == 0) bad(text);
    result = Rat(p, q);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty()) bad(text);
    if (!whole.empty() && !all_digits(whole)) bad(text);
    if (!frac.empty() && !all_digits(frac)) bad(text);
    Int p = whole.empty() ? Int(0) : Int(std::string(whole));
    Int scale = 1;
    for (char c : frac) {
      p *= 10;
      p += c - '0';
      scale *= 10;
    }
    result = Rat(p, scale);
  } else {
    if (!all_digits(s)) bad(text);
    result = Rat(Int(std::string(s)));
  }
  return negative ? Rat(-result) : result;
}

std::string format_rat(const Rat& value) {
  const Int num = boost::multiprecision::numerator(value);
  const Int den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rat& value) { return value.convert_to<double>(); }

}  // namespace certmenu
