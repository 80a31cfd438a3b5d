#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace fracsq {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational. Always stored reduced, denominator positive.
using Fraction = boost::multiprecision::cpp_rational;

inline BigInt frac_num(const Fraction& f) { return boost::multiprecision::numerator(f); }
inline BigInt frac_den(const Fraction& f) { return boost::multiprecision::denominator(f); }

/// Largest integer at most f.
inline BigInt floor_frac(const Fraction& f) {
  BigInt q = frac_num(f) / frac_den(f);
  if (f < 0 && q * frac_den(f) != frac_num(f)) --q;
  return q;
}

inline BigInt ceil_frac(const Fraction& f) { return -floor_frac(Fraction(-f)); }

inline bool is_integer(const Fraction& f) { return frac_den(f) == 1; }

/// Representative of f modulo period in [0, period). Period must be positive.
inline Fraction mod_frac(const Fraction& f, const Fraction& period) {
  Fraction q = f / period;
  return f - Fraction(floor_frac(q)) * period;
}

inline double to_double(const Fraction& f) { return f.convert_to<double>(); }

inline std::string frac_string(const Fraction& f) {
  std::string s = frac_num(f).str();
  if (frac_den(f) != 1) s += "/" + frac_den(f).str();
  return s;
}

}  // namespace fracsq
