#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace searchlab {

// Exact probabilities for the enumeration-based checks.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational &r) {
  return static_cast<double>(r);
}

}  // namespace searchlab
