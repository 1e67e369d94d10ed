#include "rankgap/bigcount.hpp"

#include "rankgap/errors.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>

namespace rankgap {

namespace {

constexpr long double kSnap = 1e-12L;
constexpr long double kMaxBits = 1.0e6L;

long double snap_floor(long double v) {
  const long double r = std::round(v);
  if (std::fabs(v - r) <= kSnap * std::fmax(1.0L, v)) return r;
  return std::floor(v);
}

}  // namespace

std::string BigCount::to_string() const {
  if (overflow) {
    std::ostringstream os;
    os.precision(12);
    os << "overflow(2^" << static_cast<double>(log2) << ")";
    return os.str();
  }
  return value.str();
}

BigCount floor_exp2(long double x) {
  if (!(x >= 0)) throw InputError("floor_exp2: exponent must be a nonnegative number");
  BigCount out;
  out.log2 = x;
  if (x > kMaxBits) {
    out.overflow = true;
    return out;
  }
  if (x < 62) {
    out.value = static_cast<std::uint64_t>(snap_floor(std::exp2(x)));
    return out;
  }
  const long double whole = std::floor(x);
  const long double mantissa = std::exp2(x - whole);  // in [1, 2)
  const auto top = static_cast<std::uint64_t>(std::floor(std::ldexp(mantissa, 62)));
  out.value = BigInt(top) << static_cast<unsigned>(whole - 62);
  return out;
}

BigCount floor_pow(long double base, long double exponent) {
  if (!(base >= 1) || !(exponent >= 0))
    throw InputError("floor_pow: requires base >= 1 and exponent >= 0");
  const long double bits = exponent * std::log2(base);
  if (base == std::floor(base) && exponent == std::floor(exponent) && bits < 4096) {
    BigCount out;
    out.log2 = bits;
    out.value = boost::multiprecision::pow(BigInt(static_cast<std::uint64_t>(base)),
                                           static_cast<unsigned>(exponent));
    return out;
  }
  if (bits < 62) {
    BigCount out;
    out.log2 = bits;
    out.value = static_cast<std::uint64_t>(snap_floor(std::pow(base, exponent)));
    return out;
  }
  return floor_exp2(bits);
}

long double log2_of(const BigInt& v) {
  if (v <= 0) throw InputError("log2_of: argument must be positive");
  const unsigned msb = boost::multiprecision::msb(v);
  if (msb < 63) return std::log2(static_cast<long double>(static_cast<std::uint64_t>(v)));
  const BigInt top = v >> (msb - 62);
  return std::log2(static_cast<long double>(static_cast<std::uint64_t>(top))) +
         static_cast<long double>(msb - 62);
}

}  // namespace rankgap
