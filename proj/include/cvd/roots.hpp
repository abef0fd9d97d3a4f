#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <vector>

#include "cvd/poly.hpp"

namespace cvd {

struct RootOptions {
  double tol = 1e-12;
  int max_iters = 500;
};

namespace detail {

inline bool root_accepted(const Poly<ComplexValue>& p, double norm1, ComplexValue r, double tol) {
  double scale = std::pow(std::max(1.0, std::abs(r)), p.degree());
  return std::abs(p(r)) <= tol * norm1 * scale;
}

}  // namespace detail

/// All deg(p) roots with multiplicity by simultaneous Aberth-Ehrlich
/// iteration from a perturbed-circle start, with a Newton polish. Output is
/// sorted lexicographically by (re, im) for reproducibility.
inline std::vector<ComplexValue> find_roots(const Poly<ComplexValue>& p_in, RootOptions opt = {}) {
  if (p_in.degree() < 1) throw Error(ErrorKind::DegreeTooSmall, "root finder needs degree >= 1");
  Poly<ComplexValue> p = p_in.monic();
  const int n = p.degree();
  const Poly<ComplexValue> dp = p.derivative();
  const double norm1 = coeff_norm1(p);

  if (n == 1) return {-p.coeff(0)};

  // Cauchy-type enclosing radius with a fixed angular offset so symmetric
  // configurations do not stall.
  double radius = 0.0;
  for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(p.coeff(i)));
  radius = 1.0 + radius;
  std::vector<ComplexValue> z(n);
  for (int j = 0; j < n; ++j) {
    double theta = 2.0 * std::numbers::pi * j / n + 0.4;
    z[j] = radius * ComplexValue(std::cos(theta), std::sin(theta));
  }

  bool converged = false;
  for (int iter = 0; iter < opt.max_iters && !converged; ++iter) {
    converged = true;
    std::vector<ComplexValue> next = z;
    for (int j = 0; j < n; ++j) {
      ComplexValue pj = p(z[j]);
      if (detail::root_accepted(p, norm1, z[j], opt.tol)) continue;
      converged = false;
      ComplexValue dj = dp(z[j]);
      if (dj == ComplexValue(0.0)) {  // rare stall directly on a critical point
        next[j] = z[j] + ComplexValue(opt.tol + 1e-8, opt.tol);
        continue;
      }
      ComplexValue newton = pj / dj;
      ComplexValue rep(0.0);
      for (int k = 0; k < n; ++k)
        if (k != j) rep += 1.0 / (z[j] - z[k]);
      ComplexValue denom = 1.0 - newton * rep;
      next[j] = (denom == ComplexValue(0.0)) ? z[j] - newton : z[j] - newton / denom;
    }
    z = std::move(next);
  }

  // Newton polish while it improves the residual.
  for (int j = 0; j < n; ++j) {
    for (int it = 0; it < 4; ++it) {
      ComplexValue dj = dp(z[j]);
      if (dj == ComplexValue(0.0)) break;
      ComplexValue cand = z[j] - p(z[j]) / dj;
      if (std::abs(p(cand)) < std::abs(p(z[j]))) z[j] = cand; else break;
    }
  }

  for (int j = 0; j < n; ++j) {
    if (!detail::root_accepted(p, norm1, z[j], opt.tol)) {
      std::ostringstream msg;
      msg << "root iteration did not converge after " << opt.max_iters
          << " iterations; achieved residuals:";
      for (int k = 0; k < n; ++k) msg << " " << std::abs(p(z[k]));
      throw Error(ErrorKind::NoConvergence, msg.str());
    }
  }

  std::sort(z.begin(), z.end(), [](const ComplexValue& a, const ComplexValue& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return z;
}

}  // namespace cvd
