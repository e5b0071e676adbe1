#pragma once

// Arbitrary-precision integer helpers shared by the exact arithmetic modules.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace geozeta {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline int sign(const BigInt& v) { return v.sign(); }

inline BigInt abs(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(abs(a), abs(b));
}

inline BigInt gcd(const BigInt& a, const BigInt& b, const BigInt& c) {
  return gcd(gcd(a, b), c);
}

/// Floor of the square root of a nonnegative integer.
inline BigInt isqrt(const BigInt& n) {
  if (n < 0) throw std::domain_error("isqrt of a negative integer");
  return boost::multiprecision::sqrt(n);
}

inline bool is_square(const BigInt& n) {
  if (n < 0) return false;
  BigInt r = isqrt(n);
  return r * r == n;
}

/// Rounds toward negative infinity (cpp_int division truncates).
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  if (b == 0) throw std::domain_error("division by zero");
  BigInt q = a / b;
  BigInt r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
  return -floor_div(-a, b);
}

inline std::size_t bit_length(const BigInt& v) {
  if (v == 0) return 0;
  return boost::multiprecision::msb(abs(v)) + 1;
}

inline double to_double(const BigInt& v) { return v.convert_to<double>(); }

inline double to_double(const BigRational& v) { return v.convert_to<double>(); }

inline std::string to_string(const BigInt& v) { return v.str(); }

inline std::string to_string(const BigRational& v) {
  const auto num = boost::multiprecision::numerator(v);
  const auto den = boost::multiprecision::denominator(v);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline std::int64_t to_int64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("integer does not fit in 64 bits: " + v.str());
  return v.convert_to<std::int64_t>();
}

}  // namespace geozeta
