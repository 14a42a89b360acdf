#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace certmenu {

// All market quantities (priors, prices, masses, payoffs) are exact
// rationals.  Floating point appears only at the reporting edge.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Parses "3", "-3", "5/6" or an exact decimal like "0.55".
/// Throws std::invalid_argument on anything else.
Rat parse_rat(std::string_view text);

/// Canonical form: "p/q" in lowest terms, or "p" when q == 1.
std::string format_rat(const Rat& value);

double to_double(const Rat& value);

}  // namespace certmenu
