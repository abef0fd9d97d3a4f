#pragma once

#include <cmath>
#include <complex>

#include "cvd/exact.hpp"

namespace cvd {

// The algebra kernel is generic over a coefficient field. ExactComplex keeps
// zero-testing honest; std::complex<double> drives every contour pipeline.
template <class F>
struct field_traits;

template <>
struct field_traits<std::complex<double>> {
  static constexpr bool exact = false;
  static std::complex<double> zero() { return {0.0, 0.0}; }
  static std::complex<double> one() { return {1.0, 0.0}; }
  static std::complex<double> from_int(long n) { return {static_cast<double>(n), 0.0}; }
  static bool is_zero(const std::complex<double>& x) { return x == zero(); }
  static double magnitude(const std::complex<double>& x) { return std::abs(x); }
  static std::complex<double> to_complex(const std::complex<double>& x) { return x; }
};

template <>
struct field_traits<ExactComplex> {
  static constexpr bool exact = true;
  static ExactComplex zero() { return ExactComplex(0); }
  static ExactComplex one() { return ExactComplex(1); }
  static ExactComplex from_int(long n) { return ExactComplex(n); }
  static bool is_zero(const ExactComplex& x) { return x.is_zero(); }
  static double magnitude(const ExactComplex& x) { return std::abs(x.to_complex()); }
  static std::complex<double> to_complex(const ExactComplex& x) { return x.to_complex(); }
};

}  // namespace cvd
