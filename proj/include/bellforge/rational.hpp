#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace bellforge {

using Rational = boost::rational<std::int64_t>;

// "p/q", or "p" when q == 1.
inline std::string to_string(const Rational& r) {
  std::string s = std::to_string(r.numerator());
  if (r.denominator() != 1) s += "/" + std::to_string(r.denominator());
  return s;
}

inline double to_double(const Rational& r) {
  return boost::rational_cast<double>(r);
}

}  // namespace bellforge
