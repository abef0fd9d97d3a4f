#pragma once

#include <span>
#include <vector>

#include "cvd/errors.hpp"
#include "cvd/field.hpp"

namespace cvd {

/// Dense univariate polynomial, coefficients ascending by degree.
/// The zero polynomial has an empty coefficient vector and degree -1.
template <class F>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<F> coeffs) : c_(std::move(coeffs)) { normalize(); }

  static Poly zero() { return Poly(); }
  static Poly constant(F v) { return Poly(std::vector<F>{std::move(v)}); }
  static Poly monomial(std::size_t k, F v) {
    std::vector<F> c(k + 1, field_traits<F>::zero());
    c[k] = std::move(v);
    return Poly(std::move(c));
  }
  static Poly from_roots(std::span<const F> roots) {
    Poly p = constant(field_traits<F>::one());
    for (const F& r : roots)
      p = p * Poly(std::vector<F>{-r, field_traits<F>::one()});
    return p;
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  /// Coefficient of z^i (zero beyond the stored degree).
  F coeff(std::size_t i) const {
    return i < c_.size() ? c_[i] : field_traits<F>::zero();
  }
  const std::vector<F>& coeffs() const { return c_; }

  const F& leading() const {
    if (c_.empty()) throw Error(ErrorKind::ZeroPolynomial, "zero polynomial has no leading coefficient");
    return c_.back();
  }
  bool is_monic() const {
    return !c_.empty() && c_.back() == field_traits<F>::one();
  }

  template <class X>
  X evaluate(const X& x) const {  // Horner
    if (c_.empty()) return X{};
    X acc = X(to_value<X>(c_.back()));
    for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + X(to_value<X>(c_[i]));
    return acc;
  }
  F operator()(const F& x) const {
    if (c_.empty()) return field_traits<F>::zero();
    F acc = c_.back();
    for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<F> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
      d[i - 1] = c_[i] * field_traits<F>::from_int(static_cast<long>(i));
    return Poly(std::move(d));
  }

  /// Divide by the leading coefficient (field instantiations only).
  Poly monic() const {
    if (c_.empty()) throw Error(ErrorKind::ZeroPolynomial, "cannot normalize the zero polynomial");
    if (is_monic()) return *this;
    std::vector<F> m(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) m[i] = c_[i] / c_.back();
    return Poly(std::move(m));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<F> s(std::max(a.c_.size(), b.c_.size()), field_traits<F>::zero());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = a.coeff(i) + b.coeff(i);
    return Poly(std::move(s));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<F> s(std::max(a.c_.size(), b.c_.size()), field_traits<F>::zero());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = a.coeff(i) - b.coeff(i);
    return Poly(std::move(s));
  }
  friend Poly operator-(const Poly& a) {
    std::vector<F> s(a.c_.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = -a.c_[i];
    return Poly(std::move(s));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<F> s(a.c_.size() + b.c_.size() - 1, field_traits<F>::zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) s[i + j] = s[i + j] + a.c_[i] * b.c_[j];
    return Poly(std::move(s));
  }
  friend Poly operator*(const F& s, const Poly& a) {
    std::vector<F> v(a.c_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = s * a.c_[i];
    return Poly(std::move(v));
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

 private:
  template <class X>
  static X to_value(const F& c) {
    if constexpr (std::is_same_v<X, F>) return c;
    else return X(field_traits<F>::to_complex(c));
  }

  void normalize() {
    while (!c_.empty() && field_traits<F>::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<F> c_;
};

template <class F>
double coeff_norm1(const Poly<F>& p) {
  double s = 0;
  for (const F& c : p.coeffs()) s += field_traits<F>::magnitude(c);
  return s;
}

}  // namespace cvd
