#pragma once

#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace hexid {

// Exact charge and density arithmetic. Denominators stay tiny (products of
// 5, 29 and k <= 3), so 64-bit numerators never come close to overflow.
using Rational = boost::rational<long long>;

// "num/den", always with an explicit denominator.
std::string formatRational(const Rational& r);
// Accepts "num/den" or a bare integer.
Rational parseRational(std::string_view text);
double toDouble(const Rational& r);

}  // namespace hexid
