#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace rankgap {

using BigInt = boost::multiprecision::cpp_int;

/// A nonnegative count that may be astronomically large. `log2` is always
/// populated; `value` holds floor(2^log2) unless `overflow` is set. Values
/// above 2^63 carry only ~64 significant bits.
struct BigCount {
  BigInt value;
  long double log2 = 0;
  bool overflow = false;

  std::string to_string() const;
};

/// floor(2^x) for x >= 0. Integers within a relative 1e-12 of the exact
/// power are snapped, so floor(2^(3*log2(17))) is 4913 and not 4912.
BigCount floor_exp2(long double x);

/// floor(base^exponent) for base >= 1.
BigCount floor_pow(long double base, long double exponent);

/// Approximate log2 of a positive big integer.
long double log2_of(const BigInt& v);

}  // namespace rankgap
