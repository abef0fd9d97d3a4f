#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "cvd/cvdisc.hpp"
#include "cvd/expr.hpp"
#include "cvd/roots.hpp"

namespace cvd {

/// Circle-contour quadrature configuration. Node counts double until two
/// successive trapezoid values agree to match_tol; guard_tol bounds the
/// integrand denominator away from zero on the sampled circle.
struct ContourConfig {
  double radius = 5.0;
  int nodes = 64;
  double guard_tol = 1e-8;
  int max_doublings = 8;
  double match_tol = 1e-10;
};

struct QuadDiag {
  int nodes = 0;
  double residual = 0.0;
  double guard_min = std::numeric_limits<double>::infinity();
};

namespace detail {

inline void validate(const ContourConfig& cfg) {
  if (!(cfg.radius > 0)) throw Error(ErrorKind::InvalidInput, "contour radius must be positive");
  if (cfg.nodes < 16 || (cfg.nodes & (cfg.nodes - 1)) != 0)
    throw Error(ErrorKind::InvalidInput, "node count must be a power of two >= 16");
  if (!(cfg.guard_tol > 0)) throw Error(ErrorKind::InvalidInput, "guard tolerance must be positive");
}

/// Deterministic tree reduction so sums are bit-reproducible for a given N
/// regardless of how node values were produced.
inline ComplexValue pairwise_sum(std::vector<ComplexValue>& v) {
  std::size_t n = v.size();
  while (n > 1) {
    std::size_t h = 0;
    for (std::size_t i = 0; i + 1 < n; i += 2) v[h++] = v[i] + v[i + 1];
    if (n & 1) v[h++] = v[n - 1];
    n = h;
  }
  return n ? v[0] : ComplexValue(0.0);
}

inline ComplexValue circle_node(double radius, int k, int n, ComplexValue center = 0.0) {
  double theta = 2.0 * std::numbers::pi * k / n;
  return center + radius * ComplexValue(std::cos(theta), std::sin(theta));
}

inline bool close(ComplexValue a, ComplexValue b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace detail

/// (1/2pii) times the contour integral of g over |z| = R by the trapezoid
/// rule, exponentially convergent for integrands analytic near the circle.
template <class G>
ComplexValue circle_quadrature(G&& g, const ContourConfig& cfg, QuadDiag* diag = nullptr) {
  detail::validate(cfg);
  ComplexValue prev(0.0);
  bool have_prev = false;
  int n = cfg.nodes;
  for (int round_ = 0; round_ <= cfg.max_doublings; ++round_, n *= 2) {
    std::vector<ComplexValue> vals(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      ComplexValue z = detail::circle_node(cfg.radius, k, n);
      ComplexValue gz = g(z);
      if (!std::isfinite(gz.real()) || !std::isfinite(gz.imag()))
        throw Error(ErrorKind::NonFiniteSample,
                    "integrand not finite at node " + std::to_string(k) + " of " + std::to_string(n));
      vals[static_cast<std::size_t>(k)] = gz * z;
    }
    ComplexValue s = detail::pairwise_sum(vals) / static_cast<double>(n);
    if (have_prev && detail::close(prev, s, cfg.match_tol)) {
      if (diag) diag->nodes = n;
      return s;
    }
    prev = s;
    have_prev = true;
  }
  throw Error(ErrorKind::NoConvergence,
              "quadrature did not stabilize after " + std::to_string(cfg.max_doublings) + " doublings");
}

/// Argument-principle zero count of f in the disk of cfg.radius.
/// Requires min |f| > guard_tol on the sampled circle.
inline int count_zeros(const EntireExpr& f, const ContourConfig& cfg, QuadDiag* diag = nullptr) {
  detail::validate(cfg);
  EntireExpr fp = differentiate(f);
  ComplexValue prev(0.0);
  bool have_prev = false;
  double guard_min = std::numeric_limits<double>::infinity();
  int n = cfg.nodes;
  for (int round_ = 0; round_ <= cfg.max_doublings; ++round_, n *= 2) {
    std::vector<ComplexValue> vals(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      ComplexValue z = detail::circle_node(cfg.radius, k, n);
      ComplexValue fz = evaluate(f, z);
      if (!std::isfinite(fz.real()) || !std::isfinite(fz.imag()))
        throw Error(ErrorKind::NonFiniteSample, "f not finite at node " + std::to_string(k));
      guard_min = std::min(guard_min, std::abs(fz));
      if (std::abs(fz) <= cfg.guard_tol) {
        std::ostringstream msg;
        msg << "|f| = " << std::abs(fz) << " <= guard " << cfg.guard_tol
            << " on the contour near node " << k << "; perturb the radius";
        throw Error(ErrorKind::ZeroNearContour, msg.str());
      }
      vals[static_cast<std::size_t>(k)] = evaluate(fp, z) / fz * z;
    }
    ComplexValue s = detail::pairwise_sum(vals) / static_cast<double>(n);
    if (have_prev && detail::close(prev, s, cfg.match_tol)) {
      double rounded = std::round(s.real());
      double residual = std::abs(s - ComplexValue(rounded, 0.0));
      if (diag) {
        diag->nodes = n;
        diag->residual = residual;
        diag->guard_min = guard_min;
      }
      if (residual >= 0.25 || rounded < 0.0)
        throw Error(ErrorKind::NotNearInteger,
                    "zero-count integral " + std::to_string(s.real()) + " is not near an integer");
      return static_cast<int>(rounded);
    }
    prev = s;
    have_prev = true;
  }
  throw Error(ErrorKind::NoConvergence, "zero count did not stabilize under node doubling");
}

/// Power sums s_k = sum of z^k over the zeros of f in the disk, k = 1..m,
/// by the argument-principle integrals with shared nodes.
inline std::vector<ComplexValue> newton_sums(const EntireExpr& f, int m, const ContourConfig& cfg,
                                             int* nodes_used = nullptr) {
  detail::validate(cfg);
  if (m < 1) throw Error(ErrorKind::InvalidInput, "newton_sums needs m >= 1");
  EntireExpr fp = differentiate(f);
  std::vector<ComplexValue> prev(static_cast<std::size_t>(m));
  bool have_prev = false;
  int n = cfg.nodes;
  for (int round_ = 0; round_ <= cfg.max_doublings; ++round_, n *= 2) {
    std::vector<std::vector<ComplexValue>> vals(static_cast<std::size_t>(m));
    for (auto& v : vals) v.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      ComplexValue z = detail::circle_node(cfg.radius, k, n);
      ComplexValue fz = evaluate(f, z);
      if (std::abs(fz) <= cfg.guard_tol)
        throw Error(ErrorKind::ZeroNearContour, "|f| under guard tolerance on the contour");
      ComplexValue base = evaluate(fp, z) / fz * z;
      ComplexValue zp(1.0);
      for (int j = 0; j < m; ++j) {
        zp *= z;
        vals[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = base * zp;
      }
    }
    std::vector<ComplexValue> s(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j)
      s[static_cast<std::size_t>(j)] =
          detail::pairwise_sum(vals[static_cast<std::size_t>(j)]) / static_cast<double>(n);
    if (have_prev) {
      bool ok = true;
      for (int j = 0; j < m; ++j)
        ok = ok && detail::close(prev[static_cast<std::size_t>(j)], s[static_cast<std::size_t>(j)],
                                 cfg.match_tol);
      if (ok) {
        if (nodes_used) *nodes_used = n;
        return s;
      }
    }
    prev = std::move(s);
    have_prev = true;
  }
  throw Error(ErrorKind::NoConvergence, "newton sums did not stabilize under node doubling");
}

/// Newton identities: monic polynomial whose root power sums are s.
inline Poly<ComplexValue> newton_to_monic(const std::vector<ComplexValue>& s) {
  if (s.empty()) throw Error(ErrorKind::InvalidInput, "newton_to_monic needs at least one power sum");
  const std::size_t m = s.size();
  std::vector<ComplexValue> e(m + 1, ComplexValue(0.0));
  e[0] = 1.0;
  for (std::size_t k = 1; k <= m; ++k) {
    ComplexValue acc(0.0);
    for (std::size_t j = 1; j <= k; ++j) {
      ComplexValue term = e[k - j] * s[j - 1];
      acc += (j % 2 == 1) ? term : -term;
    }
    e[k] = acc / static_cast<double>(k);
  }
  std::vector<ComplexValue> c(m + 1);
  c[m] = 1.0;
  for (std::size_t k = 1; k <= m; ++k) c[m - k] = (k % 2 == 0) ? e[k] : -e[k];
  return Poly<ComplexValue>(std::move(c));
}

/// W(C) = -(1/2pii) contour integral of w(zeta) (C - zeta I)^{-1} over the
/// circle; the resolvent is evaluated by linear solves at each node. The
/// eigenvalues of the result are w at the eigenvalues of C.
inline SquareMatrix<ComplexValue> cauchy_matrix_fn(const EntireExpr& w,
                                                   const SquareMatrix<ComplexValue>& c,
                                                   const ContourConfig& cfg,
                                                   int* nodes_used = nullptr) {
  detail::validate(cfg);
  const std::size_t dim = c.size();
  if (dim == 0) throw Error(ErrorKind::InvalidInput, "cauchy_matrix_fn needs a nonempty matrix");
  SquareMatrix<ComplexValue> prev(dim);
  bool have_prev = false;
  int n = cfg.nodes;
  for (int round_ = 0; round_ <= cfg.max_doublings; ++round_, n *= 2) {
    std::vector<SquareMatrix<ComplexValue>> vals;
    vals.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      ComplexValue z = detail::circle_node(cfg.radius, k, n);
      SquareMatrix<ComplexValue> a = c;
      for (std::size_t i = 0; i < dim; ++i) a(i, i) -= z;
      ComplexValue det = determinant(a);
      if (std::abs(det) <= cfg.guard_tol)
        throw Error(ErrorKind::ResolventNearSingular,
                    "|det(C - zI)| = " + std::to_string(std::abs(det)) + " at node " +
                        std::to_string(k));
      SquareMatrix<ComplexValue> inv(dim);
      if (!try_invert(a, inv))
        throw Error(ErrorKind::ResolventNearSingular, "resolvent solve failed at node " + std::to_string(k));
      ComplexValue scale = -evaluate(w, z) * z;
      vals.push_back(scale * inv);
    }
    // entry-wise deterministic pairwise reduction
    SquareMatrix<ComplexValue> s(dim);
    {
      std::vector<ComplexValue> col(vals.size());
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
          for (std::size_t t = 0; t < vals.size(); ++t) col[t] = vals[t](i, j);
          std::vector<ComplexValue> tmp = col;
          s(i, j) = detail::pairwise_sum(tmp) / static_cast<double>(n);
        }
    }
    if (have_prev) {
      bool ok = true;
      for (std::size_t i = 0; i < dim && ok; ++i)
        for (std::size_t j = 0; j < dim && ok; ++j)
          ok = detail::close(prev(i, j), s(i, j), cfg.match_tol);
      if (ok) {
        if (nodes_used) *nodes_used = n;
        return s;
      }
    }
    prev = std::move(s);
    have_prev = true;
  }
  throw Error(ErrorKind::NoConvergence, "matrix Cauchy integral did not stabilize");
}

/// Full radius-truncated critical-values-discriminant pipeline output.
struct TruncatedCvdReport {
  double radius = 0.0;
  int m = 0;
  Poly<ComplexValue> critical_poly;            // monic, recovered from Newton sums
  SquareMatrix<ComplexValue> companion_matrix;
  SquareMatrix<ComplexValue> w_matrix;
  Poly<ComplexValue> u_poly;                   // charpoly of W(C)
  ComplexValue cvd_value{1.0, 0.0};
  std::vector<ComplexValue> critical_points;   // roots of critical_poly
  QuadDiag count_diag;
  int sums_nodes = 0;
  int cauchy_nodes = 0;
  double min_critical_separation = std::numeric_limits<double>::infinity();
  double cayley_residual = 0.0;
};

namespace detail {
template <class Fn>
auto staged(const char* stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (Error& e) {
    e.set_stage(stage);
    throw;
  }
}
}  // namespace detail

/// Count critical points of w in the disk, recover their monic polynomial
/// from contour Newton sums, form its companion matrix, take w of it by the
/// Cauchy integral, and return the discriminant of its characteristic
/// polynomial. Nonzero exactly when the critical values of w in the disk are
/// pairwise different; m = 0 yields 1 by convention.
inline TruncatedCvdReport truncated_cvd(const EntireExpr& w, const ContourConfig& cfg) {
  detail::validate(cfg);
  TruncatedCvdReport rep;
  rep.radius = cfg.radius;
  EntireExpr wp = differentiate(w);

  rep.m = detail::staged("count_zeros", [&] { return count_zeros(wp, cfg, &rep.count_diag); });
  if (rep.m == 0) return rep;  // cvd_value = 1 exactly

  std::vector<ComplexValue> sums =
      detail::staged("newton_sums", [&] { return newton_sums(wp, rep.m, cfg, &rep.sums_nodes); });
  rep.critical_poly = detail::staged("newton_identities", [&] { return newton_to_monic(sums); });
  rep.companion_matrix = detail::staged("companion", [&] { return companion(rep.critical_poly); });
  rep.w_matrix = detail::staged(
      "cauchy_integral", [&] { return cauchy_matrix_fn(w, rep.companion_matrix, cfg, &rep.cauchy_nodes); });
  rep.u_poly = detail::staged("charpoly", [&] { return charpoly(rep.w_matrix); });
  rep.cvd_value = detail::staged("discriminant", [&] { return discriminant(rep.u_poly); });

  // condition diagnostics: critical-point separation and a Cayley-Hamilton residual
  rep.critical_points = detail::staged("critical_roots", [&] { return find_roots(rep.critical_poly); });
  for (std::size_t i = 0; i < rep.critical_points.size(); ++i)
    for (std::size_t j = i + 1; j < rep.critical_points.size(); ++j)
      rep.min_critical_separation = std::min(
          rep.min_critical_separation, std::abs(rep.critical_points[i] - rep.critical_points[j]));
  SquareMatrix<ComplexValue> ch = matpoly_eval(rep.u_poly, rep.w_matrix);
  double wmax = 0.0, chmax = 0.0;
  for (std::size_t i = 0; i < ch.size(); ++i)
    for (std::size_t j = 0; j < ch.size(); ++j) {
      chmax = std::max(chmax, std::abs(ch(i, j)));
      wmax = std::max(wmax, std::abs(rep.w_matrix(i, j)));
    }
  rep.cayley_residual = chmax / std::max(1.0, std::pow(wmax, rep.m));
  return rep;
}

/// Rough magnitude scale of g on the disk boundary, for residual thresholds.
inline double coeff_scale(const EntireExpr& g, double R) {
  double s = 0.0;
  for (const auto& t : g.terms()) {
    double mag = std::abs(t.c.numeric()) * std::pow(std::max(1.0, R), t.k);
    s += mag;
  }
  return std::max(1.0, s);
}

/// Locate the zeros of g inside the disk by Newton refinement from polar
/// grids of doubling density until `expected` distinct zeros are found.
/// Output sorted by (|w|, arg w).
inline std::vector<ComplexValue> zeros_in_disk(const EntireExpr& g, const ContourConfig& cfg,
                                               int expected) {
  if (expected == 0) return {};
  EntireExpr gp = differentiate(g);
  const double R = cfg.radius;
  const double dedup = 1e-7 * std::max(1.0, R);
  for (int level = 0; level < 5; ++level) {
    int nr = 8 << level;
    int na = 4 * nr;
    std::vector<ComplexValue> found;
    auto try_start = [&](ComplexValue w) {
      for (int it = 0; it < 60; ++it) {
        ComplexValue gw = evaluate(g, w);
        ComplexValue dw = evaluate(gp, w);
        if (std::abs(dw) < 1e-300) return;
        ComplexValue step = gw / dw;
        w -= step;
        if (std::abs(w) > 4.0 * R) return;  // escaped
        if (std::abs(step) < 1e-13 * std::max(1.0, std::abs(w))) break;
      }
      if (std::abs(evaluate(g, w)) > 1e-9 * std::max(1.0, coeff_scale(g, R))) return;
      if (std::abs(w) >= R) return;
      for (const auto& r : found)
        if (std::abs(r - w) < dedup) return;
      found.push_back(w);
    };
    try_start(ComplexValue(0.0));
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < na; ++j) {
        double r = R * (i + 0.5) / nr;
        double a = 2 * std::numbers::pi * (j + 0.25 * (i % 2)) / na;
        try_start(ComplexValue(r * std::cos(a), r * std::sin(a)));
      }
    if (static_cast<int>(found.size()) == expected) {
      // polish and order deterministically
      for (auto& w : found)
        for (int it = 0; it < 6; ++it) {
          ComplexValue dw = evaluate(gp, w);
          if (std::abs(dw) < 1e-300) break;
          ComplexValue cand = w - evaluate(g, w) / dw;
          if (std::abs(evaluate(g, cand)) < std::abs(evaluate(g, w))) w = cand;
          else break;
        }
      std::sort(found.begin(), found.end(), [](ComplexValue a, ComplexValue b) {
        double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) return ma < mb;
        double aa = std::atan2(a.imag(), a.real()), ab = std::atan2(b.imag(), b.real());
        if (aa != ab) return aa < ab;
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
      });
      return found;
    }
    if (static_cast<int>(found.size()) > expected)
      throw Error(ErrorKind::GridExhausted,
                  "found " + std::to_string(found.size()) + " zeros, expected " +
                      std::to_string(expected) + " (zeros too close to the boundary?)");
  }
  throw Error(ErrorKind::GridExhausted,
              "grid refinement exhausted before locating all " + std::to_string(expected) + " zeros");
}

}  // namespace cvd
