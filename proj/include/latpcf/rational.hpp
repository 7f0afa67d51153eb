#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>

namespace latpcf {

/// Arbitrary precision rational used for exact expectations and PCF values.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace latpcf
