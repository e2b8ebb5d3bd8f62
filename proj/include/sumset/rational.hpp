#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <cstdlib>
#include <string>

#include "sumset/errors.hpp"

namespace sumset {

/// Exact rational arithmetic for all density/threshold comparisons.
/// Numerators and denominators stay far below 2^63 at supported group sizes.
using Rat = boost::rational<long long>;

inline Rat rat(long long num, long long den = 1) { return Rat(num, den); }

/// Canonical "p/q" (or "p" when the denominator is 1).
inline std::string format_rational(const Rat& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

} // namespace sumset
