#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

namespace bbg {

// Exact arithmetic for family ratios and rational-Q statistics. Family
// sizes stay far below 2^63 (the enumeration cap guarantees it), so a
// 64-bit rational is enough.
using Rational = boost::rational<long long>;

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace bbg
