#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace growth {

/// Exact rational; every ratio stays exact until a log or a fit needs a float.
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_ratio(std::uint64_t num, std::uint64_t den) {
  return Rational(boost::multiprecision::cpp_int(num), boost::multiprecision::cpp_int(den));
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Always "p/q", including integers ("2/1"), so exact CSV columns parse uniformly.
inline std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

}  // namespace growth
