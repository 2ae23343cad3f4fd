#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <string>

namespace lsg {

// Exact integer and rational scalars used by the difference calculus.
// The rational backend keeps denominator > 0 and gcd(num, den) = 1
// canonically.  Expression templates are disabled so that arithmetic
// expressions are plain values; deduced return types (lambdas, auto)
// then never capture references to expired temporaries.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

inline BigInt numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rational& r) { return static_cast<double>(r); }

/// Converts a Rational coefficient into the scalar type of the grid data
/// it multiplies (Rational, double or complex<double>).
template <class T>
T rational_cast(const Rational& r);

template <>
inline Rational rational_cast<Rational>(const Rational& r) { return r; }

template <>
inline double rational_cast<double>(const Rational& r) { return to_double(r); }

template <>
inline std::complex<double> rational_cast<std::complex<double>>(const Rational& r) {
  return {to_double(r), 0.0};
}

inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace lsg
