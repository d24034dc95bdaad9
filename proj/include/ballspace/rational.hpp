#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

#include "ballspace/errors.hpp"

namespace ballspace {

// All numeric instance data is exact; ties in the order-theoretic checks
// must never depend on rounding.
using Rational = boost::rational<long long>;

// Rational or +infinity (absent); the codomain of Oettli–Théra functions.
using ExtRational = std::optional<Rational>;

// Accepts "p", "-p", "p/q" with q > 0 after sign normalization.
Rational parse_rational(std::string_view text);

// "p/q" reduced, or "p" when the denominator is 1.
std::string format_rational(const Rational& r);

} // namespace ballspace
