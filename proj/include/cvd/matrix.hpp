#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "cvd/poly.hpp"

namespace cvd {

template <class F>
class SquareMatrix {
 public:
  SquareMatrix() : n_(0) {}
  explicit SquareMatrix(std::size_t n) : n_(n), e_(n * n, field_traits<F>::zero()) {}
  SquareMatrix(std::size_t n, std::vector<F> entries) : n_(n), e_(std::move(entries)) {
    if (e_.size() != n * n) throw Error(ErrorKind::InvalidInput, "matrix entry count mismatch");
  }

  static SquareMatrix identity(std::size_t n) {
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field_traits<F>::one();
    return m;
  }

  std::size_t size() const { return n_; }
  F& operator()(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }
  const std::vector<F>& entries() const { return e_; }

  F trace() const {
    F t = field_traits<F>::zero();
    for (std::size_t i = 0; i < n_; ++i) t = t + (*this)(i, i);
    return t;
  }

  friend SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix r(a.n_);
    for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] + b.e_[i];
    return r;
  }
  friend SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix r(a.n_);
    for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] - b.e_[i];
    return r;
  }
  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix r(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k) {
        const F& aik = a(i, k);
        if (field_traits<F>::is_zero(aik)) continue;
        for (std::size_t j = 0; j < a.n_; ++j) r(i, j) = r(i, j) + aik * b(k, j);
      }
    return r;
  }
  friend SquareMatrix operator*(const F& s, const SquareMatrix& a) {
    SquareMatrix r(a.n_);
    for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = s * a.e_[i];
    return r;
  }

  friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) {
    return a.n_ == b.n_ && a.e_ == b.e_;
  }

 private:
  std::size_t n_;
  std::vector<F> e_;
};

/// Determinant by Gaussian elimination. Exact fields pick the first nonzero
/// pivot; the float instantiation pivots on magnitude.
template <class F>
F determinant(SquareMatrix<F> a) {
  const std::size_t n = a.size();
  F det = field_traits<F>::one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    if constexpr (field_traits<F>::exact) {
      while (pivot < n && field_traits<F>::is_zero(a(pivot, col))) ++pivot;
      if (pivot == n) return field_traits<F>::zero();
    } else {
      for (std::size_t r = col + 1; r < n; ++r)
        if (field_traits<F>::magnitude(a(r, col)) > field_traits<F>::magnitude(a(pivot, col)))
          pivot = r;
      if (field_traits<F>::is_zero(a(pivot, col))) return field_traits<F>::zero();
    }
    if (pivot != col) {
      for (std::size_t j = col; j < n; ++j) std::swap(a(pivot, j), a(col, j));
      det = -det;
    }
    det = det * a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (field_traits<F>::is_zero(a(r, col))) continue;
      F factor = a(r, col) / a(col, col);
      for (std::size_t j = col; j < n; ++j) a(r, j) = a(r, j) - factor * a(col, j);
    }
  }
  return det;
}

/// Gauss-Jordan inverse with partial pivoting; returns false on a pivot
/// breakdown instead of throwing (callers guard with a determinant bound).
template <class F>
bool try_invert(SquareMatrix<F> a, SquareMatrix<F>& out) {
  const std::size_t n = a.size();
  SquareMatrix<F> inv = SquareMatrix<F>::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (field_traits<F>::magnitude(a(r, col)) > field_traits<F>::magnitude(a(pivot, col)))
        pivot = r;
    if (field_traits<F>::is_zero(a(pivot, col))) return false;
    if (pivot != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    F d = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) = a(col, j) / d;
      inv(col, j) = inv(col, j) / d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || field_traits<F>::is_zero(a(r, col))) continue;
      F f = a(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) = a(r, j) - f * a(col, j);
        inv(r, j) = inv(r, j) - f * inv(col, j);
      }
    }
  }
  out = std::move(inv);
  return true;
}

/// Horner evaluation of a polynomial at a matrix argument.
template <class F>
SquareMatrix<F> matpoly_eval(const Poly<F>& p, const SquareMatrix<F>& c) {
  const std::size_t n = c.size();
  SquareMatrix<F> acc(n);
  if (p.is_zero()) return acc;
  const int d = p.degree();
  acc = p.coeff(d) * SquareMatrix<F>::identity(n);
  for (int i = d - 1; i >= 0; --i) {
    acc = acc * c;
    for (std::size_t k = 0; k < n; ++k) acc(k, k) = acc(k, k) + p.coeff(i);
  }
  return acc;
}

/// Monic characteristic polynomial det(yI - A) by the Faddeev-LeVerrier
/// recurrence; the integer divisions are exact over the exact field.
template <class F>
Poly<F> charpoly(const SquareMatrix<F>& a) {
  const std::size_t n = a.size();
  std::vector<F> c(n + 1, field_traits<F>::zero());
  c[n] = field_traits<F>::one();
  SquareMatrix<F> m(n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m;
    for (std::size_t i = 0; i < n; ++i) m(i, i) = m(i, i) + c[n - k + 1];
    F t = (a * m).trace();
    c[n - k] = -(t / field_traits<F>::from_int(static_cast<long>(k)));
  }
  return Poly<F>(std::move(c));
}

}  // namespace cvd
