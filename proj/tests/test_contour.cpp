#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include "cvd/contour.hpp"

using namespace cvd;

namespace {
const double kPi = std::numbers::pi;
std::mt19937_64 rng(5150123ull);

ContourConfig with_radius(double r) {
  ContourConfig cfg;
  cfg.radius = r;
  return cfg;
}

ComplexValue rand_in_disk(double radius) {
  std::uniform_real_distribution<double> rd(0.0, radius);
  std::uniform_real_distribution<double> ad(0.0, 2 * kPi);
  double r = rd(rng), a = ad(rng);
  return {r * std::cos(a), r * std::sin(a)};
}

Poly<ComplexValue> to_float_poly(const Poly<ExactComplex>& p) {
  std::vector<ComplexValue> c;
  for (const auto& x : p.coeffs()) c.push_back(x.to_complex());
  return Poly<ComplexValue>(std::move(c));
}
}  // namespace

TEST_CASE("circle quadrature residues") {
  ContourConfig cfg = with_radius(1.0);
  ComplexValue a = circle_quadrature([](ComplexValue z) { return 1.0 / z; }, cfg);
  CHECK(std::abs(a - ComplexValue(1, 0)) < 1e-12);

  ComplexValue b = circle_quadrature([](ComplexValue z) { return z; }, cfg);
  CHECK(std::abs(b) < 1e-12);

  ComplexValue c = circle_quadrature([](ComplexValue z) { return 1.0 / (z - 2.0); }, cfg);
  CHECK(std::abs(c) < 1e-12);
}

TEST_CASE("circle quadrature rejects bad configs and samples") {
  ContourConfig bad = with_radius(1.0);
  bad.nodes = 20;  // not a power of two
  CHECK_THROWS_AS(circle_quadrature([](ComplexValue z) { return z; }, bad), Error);

  ContourConfig cfg = with_radius(1.0);
  CHECK_THROWS_MATCHES(
      circle_quadrature([](ComplexValue z) { return ComplexValue(1.0, 0.0) / (z - z); }, cfg), Error,
      Catch::Matchers::Predicate<Error>(
          [](const Error& e) { return e.kind() == ErrorKind::NonFiniteSample; }));
}

TEST_CASE("argument principle counts") {
  EntireExpr f = parse_expr("exp(z) - 1");
  CHECK(count_zeros(f, with_radius(1.0)) == 1);
  CHECK(count_zeros(f, with_radius(7.0)) == 3);  // 0 and +-2pi i

  EntireExpr g = parse_expr("3*z^2 - 3");
  CHECK(count_zeros(g, with_radius(2.0)) == 2);

  // zero exactly on the contour trips the guard
  CHECK_THROWS_MATCHES(count_zeros(g, with_radius(1.0)), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.kind() == ErrorKind::ZeroNearContour; }));
}

TEST_CASE("zero count monotone in radius") {
  EntireExpr f = parse_expr("exp(z) - 1");
  int last = 0;
  for (double r : {1.0, 3.0, 5.0, 7.0, 9.0, 11.0, 13.0}) {
    int c = count_zeros(f, with_radius(r));
    CHECK(c >= last);
    last = c;
  }
  CHECK(last == 5);  // 0, +-2pi i, +-4pi i inside D13
}

TEST_CASE("newton sums") {
  EntireExpr g = parse_expr("3*z^2 - 3");
  auto s = newton_sums(g, 2, with_radius(2.0));
  REQUIRE(s.size() == 2);
  CHECK(std::abs(s[0]) < 1e-9);
  CHECK(std::abs(s[1] - ComplexValue(2, 0)) < 1e-9);

  EntireExpr f = parse_expr("exp(z) - 1");
  auto s1 = newton_sums(f, 1, with_radius(1.0));
  CHECK(std::abs(s1[0]) < 1e-10);

  auto s3 = newton_sums(f, 3, with_radius(7.0));
  REQUIRE(s3.size() == 3);
  CHECK(std::abs(s3[0]) < 1e-8);
  CHECK(std::abs(s3[1] - ComplexValue(-8 * kPi * kPi, 0)) < 1e-6 * 8 * kPi * kPi);
  CHECK(std::abs(s3[2]) < 1e-6);
}

TEST_CASE("newton identities recover monic polynomials") {
  auto p1 = newton_to_monic({ComplexValue(0, 0), ComplexValue(2, 0)});
  CHECK(p1.degree() == 2);
  CHECK(std::abs(p1.coeff(0) - ComplexValue(-1, 0)) < 1e-14);
  CHECK(std::abs(p1.coeff(1)) < 1e-14);

  auto p2 = newton_to_monic({ComplexValue(2.5, -1)});
  CHECK(p2.degree() == 1);
  CHECK(std::abs(p2.coeff(0) - ComplexValue(-2.5, 1)) < 1e-14);

  auto p3 = newton_to_monic({{0, 0}, {-8 * kPi * kPi, 0}, {0, 0}});
  CHECK(p3.degree() == 3);
  CHECK(std::abs(p3.coeff(1) - ComplexValue(4 * kPi * kPi, 0)) < 1e-12);
  CHECK(std::abs(p3.coeff(0)) < 1e-12);
  CHECK(std::abs(p3.coeff(2)) < 1e-12);

  // power sums of the result reproduce the input
  std::vector<ComplexValue> s{{1.25, 0.5}, {-0.75, 2.0}, {0.1, -0.2}, {2.0, 0.0}};
  auto p = newton_to_monic(s);
  auto roots = find_roots(p);
  for (std::size_t k = 1; k <= s.size(); ++k) {
    ComplexValue acc(0.0);
    for (auto r : roots) acc += detail::pow_uint(r, k);
    CHECK(std::abs(acc - s[k - 1]) < 1e-9);
  }
}

TEST_CASE("cauchy matrix function basics") {
  SquareMatrix<ComplexValue> c(2, {ComplexValue(0), ComplexValue(1), ComplexValue(1), ComplexValue(0)});
  ContourConfig cfg = with_radius(2.0);

  auto ident = cauchy_matrix_fn(parse_expr("z"), c, cfg);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(std::abs(ident(i, j) - c(i, j)) < 1e-10);

  auto cons = cauchy_matrix_fn(parse_expr("(2.5,1)"), c, cfg);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      ComplexValue want = i == j ? ComplexValue(2.5, 1) : ComplexValue(0, 0);
      CHECK(std::abs(cons(i, j) - want) < 1e-10);
    }

  auto cube = cauchy_matrix_fn(parse_expr("z^3 - 3*z"), c, cfg);
  auto direct = matpoly_eval(Poly<ComplexValue>(std::vector<ComplexValue>{{0, 0}, {-3, 0}, {0, 0}, {1, 0}}), c);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(std::abs(cube(i, j) - direct(i, j)) < 1e-9);
}

TEST_CASE("spectral mapping on random diagonalizable matrices") {
  EntireExpr w = parse_expr("exp(z) + z^2");
  ContourConfig cfg = with_radius(3.0);
  for (int trial = 0; trial < 6; ++trial) {
    // spectrum well inside D_{R/2}
    std::vector<ComplexValue> lambda{rand_in_disk(1.2), rand_in_disk(1.2), rand_in_disk(1.2)};
    bool separated = true;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        separated = separated && std::abs(lambda[i] - lambda[j]) > 0.15;
    if (!separated) continue;

    std::uniform_int_distribution<int> vi(-3, 3);
    SquareMatrix<ComplexValue> v(3);
    do {
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) v(i, j) = ComplexValue(vi(rng), 0);
    } while (std::abs(determinant(v)) < 0.5);
    SquareMatrix<ComplexValue> vinv(3);
    REQUIRE(try_invert(v, vinv));
    SquareMatrix<ComplexValue> d(3);
    for (std::size_t i = 0; i < 3; ++i) d(i, i) = lambda[i];
    SquareMatrix<ComplexValue> a = v * d * vinv;

    auto wa = cauchy_matrix_fn(w, a, cfg);
    auto eig = find_roots(charpoly(wa));
    std::vector<ComplexValue> expect;
    for (auto l : lambda) expect.push_back(evaluate(w, l));
    std::sort(expect.begin(), expect.end(), [](ComplexValue x, ComplexValue y) {
      if (x.real() != y.real()) return x.real() < y.real();
      return x.imag() < y.imag();
    });
    REQUIRE(eig.size() == expect.size());
    for (std::size_t i = 0; i < eig.size(); ++i) CHECK(std::abs(eig[i] - expect[i]) < 1e-6);
  }
}

TEST_CASE("truncated cvd on the polynomial case matches the exact pipeline") {
  EntireExpr w = parse_expr("z^3 - 3*z");
  auto rep = truncated_cvd(w, with_radius(2.0));
  CHECK(rep.m == 2);
  CHECK(std::abs(rep.cvd_value - ComplexValue(16, 0)) < 1e-8 * 16);
  CHECK(rep.u_poly.degree() == 2);
  CHECK(rep.critical_poly.degree() == 2);
}

TEST_CASE("truncated cvd reproduces the exponential example") {
  auto rep = truncated_cvd(parse_expr("exp(z) - z"), with_radius(7.0));
  CHECK(rep.m == 3);
  double want = -256.0 * std::pow(kPi, 6);
  CHECK(std::abs(rep.cvd_value - ComplexValue(want, 0)) < 1e-6 * std::abs(want));

  // w' = e^z never vanishes: m = 0, cvd = 1 exactly
  auto rep0 = truncated_cvd(parse_expr("exp(z)"), with_radius(4.0));
  CHECK(rep0.m == 0);
  CHECK(rep0.cvd_value == ComplexValue(1, 0));
}

TEST_CASE("truncated cvd agrees with exact cvd on random polynomials") {
  std::uniform_int_distribution<int> degd(3, 6);
  std::uniform_int_distribution<long> lat(-20, 20);
  int done = 0;
  while (done < 8) {
    int deg = degd(rng);
    std::vector<ExactComplex> roots;
    for (int i = 0; i < deg; ++i)
      roots.emplace_back(Rational(lat(rng), 10), Rational(lat(rng), 10));
    Poly<ExactComplex> pe = Poly<ExactComplex>::from_roots(std::span<const ExactComplex>(roots));
    std::vector<ExactComplex> a(pe.coeffs().begin(), pe.coeffs().end() - 1);
    ExactComplex exact = cvd<ExactComplex>(a);
    if (exact.is_zero()) continue;

    auto rep = truncated_cvd(EntireExpr::from_polynomial(to_float_poly(pe)), with_radius(3.0));
    CHECK(rep.m == deg - 1);
    ComplexValue ex = exact.to_complex();
    CHECK(std::abs(rep.cvd_value - ex) <= 1e-6 * std::abs(ex));
    ++done;
  }
}

TEST_CASE("truncated cvd invariant under constant shifts") {
  EntireExpr w = parse_expr("exp(z) - z");
  auto a = truncated_cvd(w, with_radius(7.0));
  auto b = truncated_cvd(w + parse_expr("(3,-11)"), with_radius(7.0));
  CHECK(std::abs(a.cvd_value - b.cvd_value) <= 1e-6 * std::abs(a.cvd_value));
}

TEST_CASE("doubling stability") {
  EntireExpr w = parse_expr("exp(z) - z");
  ContourConfig c64 = with_radius(7.0);
  ContourConfig c128 = with_radius(7.0);
  c128.nodes = 128;
  auto a = truncated_cvd(w, c64);
  auto b = truncated_cvd(w, c128);
  CHECK(std::abs(a.cvd_value - b.cvd_value) <= 1e-8 * std::abs(a.cvd_value));
}

TEST_CASE("zeros_in_disk enumerates critical points") {
  EntireExpr fp = differentiate(parse_expr("exp(z) - z"));  // e^z - 1
  auto zs = zeros_in_disk(fp, with_radius(10.0), 3);
  REQUIRE(zs.size() == 3);
  CHECK(std::abs(zs[0]) < 1e-9);
  // sorted by modulus then argument: +2pi i (arg pi/2) before -2pi i (arg -pi/2)?
  // atan2 of -2pi i is negative, so it sorts first among equal moduli
  CHECK(std::abs(zs[1] - ComplexValue(0, -2 * kPi)) < 1e-9);
  CHECK(std::abs(zs[2] - ComplexValue(0, 2 * kPi)) < 1e-9);
}
