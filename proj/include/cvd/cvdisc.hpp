#pragma once

#include <span>

#include "cvd/matrix.hpp"
#include "cvd/poly.hpp"

namespace cvd {

/// Companion matrix of a monic polynomial: ones on the subdiagonal, negated
/// coefficients down the last column. Its characteristic polynomial is p.
template <class F>
SquareMatrix<F> companion(const Poly<F>& p) {
  if (p.degree() < 1) throw Error(ErrorKind::DegreeZero, "companion matrix needs degree >= 1");
  if (!p.is_monic()) throw Error(ErrorKind::NotMonic, "companion matrix needs a monic polynomial");
  const std::size_t m = static_cast<std::size_t>(p.degree());
  SquareMatrix<F> c(m);
  for (std::size_t i = 0; i + 1 < m; ++i) c(i + 1, i) = field_traits<F>::one();
  for (std::size_t i = 0; i < m; ++i) c(i, m - 1) = -p.coeff(i);
  return c;
}

/// (1/m) p' for monic p of degree m >= 2; the result is monic of degree m-1.
template <class F>
Poly<F> monic_derivative(const Poly<F>& p) {
  if (!p.is_monic()) throw Error(ErrorKind::NotMonic, "monic normalization needs a monic input");
  if (p.degree() < 2) throw Error(ErrorKind::DegreeTooSmall, "monic derivative needs degree >= 2");
  const F inv_m = field_traits<F>::one() / field_traits<F>::from_int(p.degree());
  return inv_m * p.derivative();
}

/// Sylvester-matrix resultant Res(p, q) = lc(p)^deg(q) * prod q(alpha_i).
template <class F>
F resultant(const Poly<F>& p, const Poly<F>& q) {
  if (p.is_zero() || q.is_zero())
    throw Error(ErrorKind::ZeroPolynomial, "resultant of the zero polynomial");
  const std::size_t dp = static_cast<std::size_t>(p.degree());
  const std::size_t dq = static_cast<std::size_t>(q.degree());
  if (dp == 0 && dq == 0) return field_traits<F>::one();  // empty Sylvester matrix
  SquareMatrix<F> s(dp + dq);
  for (std::size_t r = 0; r < dq; ++r)
    for (std::size_t j = 0; j <= dp; ++j) s(r, r + j) = p.coeff(dp - j);
  for (std::size_t r = 0; r < dp; ++r)
    for (std::size_t j = 0; j <= dq; ++j) s(dq + r, r + j) = q.coeff(dq - j);
  return determinant(std::move(s));
}

/// Discriminant with the empty-product convention Disc = 1 for deg <= 1.
template <class F>
F discriminant(const Poly<F>& p) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "discriminant of the zero polynomial");
  const int n = p.degree();
  if (n <= 1) return field_traits<F>::one();
  F r = resultant(p, p.derivative());
  F d = r / p.leading();
  return ((static_cast<long>(n) * (n - 1) / 2) % 2 != 0) ? -d : d;
}

/// P_m = y^m + a_{m-1} y^{m-1} + ... + a_0 from its non-leading coefficients.
template <class F>
Poly<F> monic_from_low_coeffs(std::span<const F> a) {
  std::vector<F> c(a.begin(), a.end());
  c.push_back(field_traits<F>::one());
  return Poly<F>(std::move(c));
}

/// Critical values discriminant of P_m (a = a_0..a_{m-1}, m >= 2):
/// Disc of the characteristic polynomial of P_m evaluated at the companion
/// matrix of the monic-normalized derivative. Vanishes exactly when two
/// critical values coincide or a critical point degenerates.
template <class F>
F cvd(std::span<const F> a) {
  if (a.size() < 2) throw Error(ErrorKind::DegreeTooSmall, "cvd needs degree >= 2");
  Poly<F> p = monic_from_low_coeffs(a);
  SquareMatrix<F> c = companion(monic_derivative(p));
  Poly<F> u = charpoly(matpoly_eval(p, c));
  return discriminant(u);
}

template <class F>
F cvd(const std::vector<F>& a) {
  return cvd(std::span<const F>(a));
}

/// Membership in the discriminant variety of the normalized derivative:
/// true exactly when P_m has a degenerate critical point.
template <class F>
bool disc_variety_member(std::span<const F> a) {
  if (a.size() < 2) throw Error(ErrorKind::DegreeTooSmall, "variety test needs degree >= 2");
  Poly<F> p = monic_from_low_coeffs(a);
  return field_traits<F>::is_zero(discriminant(monic_derivative(p)));
}

template <class F>
bool disc_variety_member(const std::vector<F>& a) {
  return disc_variety_member(std::span<const F>(a));
}

}  // namespace cvd
