#pragma once

#include <complex>
#include <numbers>
#include <vector>

#include "cvd/field.hpp"

namespace cvd {

/// Complex scalar for expression coefficients. Values built from written
/// literals stay exact as Gaussian-rational polynomials in pi (the grammar
/// has no division, so a ring is enough); anything that passes through a
/// transcendental evaluation degrades to a tracked double.
class Scalar {
 public:
  Scalar() : exact_(true), val_(0.0) {}

  static Scalar from_exact(ExactComplex v) {
    Scalar s;
    if (!v.is_zero()) s.pi_.push_back(std::move(v));
    s.sync();
    return s;
  }
  static Scalar from_int(long n) { return from_exact(ExactComplex(n)); }
  static Scalar imaginary_unit() { return from_exact(ExactComplex(0, 1)); }
  static Scalar pi() {
    Scalar s;
    s.pi_ = {ExactComplex(0), ExactComplex(1)};
    s.sync();
    return s;
  }
  static Scalar from_double(std::complex<double> v) {
    Scalar s;
    s.exact_ = false;
    s.val_ = v;
    return s;
  }

  bool exact() const { return exact_; }
  std::complex<double> numeric() const { return val_; }

  bool is_zero() const { return exact_ ? pi_.empty() : val_ == std::complex<double>(0.0); }
  bool is_one() const {
    return exact_ ? (pi_.size() == 1 && pi_[0] == ExactComplex(1))
                  : val_ == std::complex<double>(1.0);
  }

  /// Degree in pi (-1 for zero); 0 means a plain Gaussian rational.
  int pi_degree() const { return exact_ ? static_cast<int>(pi_.size()) - 1 : 0; }
  ExactComplex pi_coeff(std::size_t j) const {
    return j < pi_.size() ? pi_[j] : ExactComplex(0);
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) {
      Scalar r;
      r.pi_.resize(std::max(a.pi_.size(), b.pi_.size()), ExactComplex(0));
      for (std::size_t i = 0; i < r.pi_.size(); ++i)
        r.pi_[i] = a.pi_coeff(i) + b.pi_coeff(i);
      r.trim();
      r.sync();
      return r;
    }
    return from_double(a.val_ + b.val_);
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
  friend Scalar operator-(const Scalar& a) {
    if (a.exact_) {
      Scalar r;
      r.pi_.reserve(a.pi_.size());
      for (const auto& c : a.pi_) r.pi_.push_back(-c);
      r.sync();
      return r;
    }
    return from_double(-a.val_);
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) {
      Scalar r;
      if (a.pi_.empty() || b.pi_.empty()) return r;
      r.pi_.assign(a.pi_.size() + b.pi_.size() - 1, ExactComplex(0));
      for (std::size_t i = 0; i < a.pi_.size(); ++i)
        for (std::size_t j = 0; j < b.pi_.size(); ++j)
          r.pi_[i + j] += a.pi_[i] * b.pi_[j];
      r.trim();
      r.sync();
      return r;
    }
    return from_double(a.val_ * b.val_);
  }
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return a.pi_ == b.pi_;
    return a.val_ == b.val_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Deterministic total order for canonical term sorting: numeric (re, im)
  /// first, exact structure as the tie-break.
  friend bool canonical_less(const Scalar& a, const Scalar& b) {
    if (a.val_.real() != b.val_.real()) return a.val_.real() < b.val_.real();
    if (a.val_.imag() != b.val_.imag()) return a.val_.imag() < b.val_.imag();
    if (a.exact_ != b.exact_) return b.exact_;
    if (a.exact_) {
      if (a.pi_.size() != b.pi_.size()) return a.pi_.size() < b.pi_.size();
      for (std::size_t i = 0; i < a.pi_.size(); ++i)
        if (a.pi_[i] != b.pi_[i]) return lex_less(a.pi_[i], b.pi_[i]);
    }
    return false;
  }

 private:
  void trim() {
    while (!pi_.empty() && pi_.back().is_zero()) pi_.pop_back();
  }
  void sync() {
    std::complex<double> acc(0.0);
    for (std::size_t i = pi_.size(); i-- > 0;)
      acc = acc * std::numbers::pi + pi_[i].to_complex();
    val_ = acc;
  }

  bool exact_;
  std::vector<ExactComplex> pi_;  // ascending powers of pi; empty = 0
  std::complex<double> val_;      // numeric value, always maintained
};

template <>
struct field_traits<Scalar> {
  static constexpr bool exact = false;  // ring only; no division defined
  static Scalar zero() { return Scalar(); }
  static Scalar one() { return Scalar::from_int(1); }
  static Scalar from_int(long n) { return Scalar::from_int(n); }
  static bool is_zero(const Scalar& x) { return x.is_zero(); }
  static double magnitude(const Scalar& x) { return std::abs(x.numeric()); }
  static std::complex<double> to_complex(const Scalar& x) { return x.numeric(); }
};

}  // namespace cvd
