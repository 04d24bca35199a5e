#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace dmlab {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat rat(long long num, long long den = 1) { return Rat(num, den); }

// q^j as an exact rational, j may be negative.
inline Rat q_pow(long long q, long long j) {
  BigInt p = 1;
  for (long long i = 0; i < (j >= 0 ? j : -j); ++i) p *= q;
  return j >= 0 ? Rat(p) : Rat(BigInt(1), p);
}

inline std::string rat_str(const Rat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

// Log_q-scale value that may be -infinity (for exact zeros / exact elements'
// floors). None represents -infinity.
using LogQ = std::optional<Rat>;

inline bool logq_le(const LogQ& a, const LogQ& b) {
  if (!a) return true;       // -inf <= anything
  if (!b) return false;      // finite <= -inf is false
  return *a <= *b;
}

inline LogQ logq_max(const LogQ& a, const LogQ& b) {
  if (!a) return b;
  if (!b) return a;
  return *a >= *b ? a : b;
}

inline std::string logq_str(const LogQ& v) {
  return v ? rat_str(*v) : std::string("-inf");
}

}  // namespace dmlab
