#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include "cvd/cvdisc.hpp"
#include "cvd/roots.hpp"

using namespace cvd;

namespace {

using EC = ExactComplex;
using CV = ComplexValue;
using PolyE = Poly<EC>;
using PolyC = Poly<CV>;

PolyE epoly(std::initializer_list<long> ascending) {
  std::vector<EC> c;
  for (long v : ascending) c.emplace_back(v);
  return PolyE(std::move(c));
}

PolyC cpoly(std::initializer_list<double> ascending) {
  std::vector<CV> c;
  for (double v : ascending) c.emplace_back(v, 0.0);
  return PolyC(std::move(c));
}

EC rq(long num, long den = 1) { return EC(Rational(num, den), Rational(0)); }

std::mt19937_64 rng(20240901ull);

EC random_rational(long span = 6) {
  std::uniform_int_distribution<long> d(-span, span);
  return EC(Rational(d(rng), 2), Rational(d(rng), 2));
}

}  // namespace

TEST_CASE("exact rational parsing and printing") {
  CHECK(rational_to_string(rational_from_string("16")) == "16/1");
  CHECK(rational_to_string(rational_from_string("-4/8")) == "-1/2");
  CHECK(rational_from_decimal("2.25e-1") == Rational(9, 40));
  CHECK(rational_from_decimal("0.15") == Rational(3, 20));
  CHECK(rational_from_decimal("-7") == Rational(-7));
  CHECK_THROWS_AS(rational_from_string("1.5"), Error);

  EC z = exact_complex_from_string("1/2-3/4i");
  CHECK(z.re == Rational(1, 2));
  CHECK(z.im == Rational(-3, 4));
  CHECK(exact_complex_from_string("i") == EC(0, 1));
  CHECK(exact_complex_from_string("-i") == EC(0, -1));
  CHECK(exact_complex_from_string("2i") == EC(0, 2));
  CHECK(exact_complex_to_string(EC(Rational(1, 2), Rational(-3, 4))) == "1/2-3/4i");
  CHECK_THROWS_AS(exact_complex_from_string("0.5"), Error);
}

TEST_CASE("exact complex field ops") {
  EC a(Rational(1, 2), Rational(3));
  EC b(Rational(-2), Rational(1, 5));
  CHECK((a * b) / b == a);
  CHECK(a + (-a) == EC(0));
  CHECK_THROWS_AS(a / EC(0), Error);
}

TEST_CASE("companion matrix layout") {
  // y^2 - 1
  auto c = companion(epoly({-1, 0, 1}));
  CHECK(c(0, 0) == rq(0));
  CHECK(c(0, 1) == rq(1));
  CHECK(c(1, 0) == rq(1));
  CHECK(c(1, 1) == rq(0));

  // y + c0, 1x1
  auto c1 = companion(epoly({5, 1}));
  CHECK(c1.size() == 1);
  CHECK(c1(0, 0) == rq(-5));

  // y^2
  auto c2 = companion(epoly({0, 0, 1}));
  CHECK(c2(0, 1) == rq(0));
  CHECK(c2(1, 0) == rq(1));

  CHECK_THROWS_AS(companion(epoly({3, 2, 2})), Error);  // not monic
  CHECK_THROWS_AS(companion(epoly({3})), Error);        // degree zero
}

TEST_CASE("monic derivative normalization") {
  CHECK(monic_derivative(epoly({0, -3, 0, 1})) == epoly({-1, 0, 1}));  // y^3-3y -> y^2-1
  // y^2 + a1 y + a0 -> y + a1/2
  PolyE q(std::vector<EC>{rq(7), rq(3), rq(1)});
  PolyE mq = monic_derivative(q);
  CHECK(mq.degree() == 1);
  CHECK(mq.coeff(0) == rq(3, 2));
  // y^m -> y^{m-1}
  CHECK(monic_derivative(epoly({0, 0, 0, 0, 1})) == epoly({0, 0, 0, 1}));
  CHECK_THROWS_AS(monic_derivative(epoly({1, 1})), Error);
}

TEST_CASE("resultant") {
  CHECK(resultant(epoly({-1, 0, 1}), epoly({0, 2})) == rq(-4));  // q(1)q(-1) * lc^1
  CHECK(resultant(epoly({-1, 0, 1}), epoly({-1, 1})) == rq(0));  // shared root
  // Res(p, c) = c^{deg p}
  CHECK(resultant(epoly({0, 1, 0, 1}), epoly({7})) == rq(343));
  CHECK_THROWS_AS(resultant(PolyE(), epoly({1, 1})), Error);
}

TEST_CASE("discriminant") {
  CHECK(discriminant(epoly({-4, 0, 1})) == rq(16));  // y^2 - 4
  CHECK(discriminant(epoly({0, 0, 1})) == rq(0));    // y^2
  CHECK(discriminant(epoly({5, 1})) == rq(1));       // degree 1 convention
  CHECK(discriminant(epoly({42})) == rq(1));         // degree 0 convention
}

TEST_CASE("matrix polynomial evaluation") {
  SquareMatrix<EC> c(2, {rq(0), rq(1), rq(1), rq(0)});
  auto r = matpoly_eval(epoly({0, -3, 0, 1}), c);  // C^2 = I so p(C) = -2C
  CHECK(r(0, 1) == rq(-2));
  CHECK(r(1, 0) == rq(-2));
  CHECK(r(0, 0) == rq(0));

  CHECK(matpoly_eval(epoly({0, 1}), c) == c);
  CHECK(matpoly_eval(epoly({1}), c) == SquareMatrix<EC>::identity(2));
}

TEST_CASE("characteristic polynomial") {
  SquareMatrix<EC> a(2, {rq(0), rq(-2), rq(-2), rq(0)});
  CHECK(charpoly(a) == epoly({-4, 0, 1}));  // eigenvalues +-2
  CHECK(charpoly(SquareMatrix<EC>::identity(2)) == epoly({1, -2, 1}));
  CHECK(charpoly(SquareMatrix<EC>(2)) == epoly({0, 0, 1}));
}

TEST_CASE("charpoly of companion recovers the polynomial") {
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_int_distribution<int> degd(1, 8);
    int deg = degd(rng);
    std::vector<EC> c;
    for (int i = 0; i < deg; ++i) c.push_back(random_rational());
    c.push_back(rq(1));
    PolyE p(std::move(c));
    CHECK(charpoly(companion(p)) == p);
  }
}

TEST_CASE("cvd examples") {
  // y^3 - 3y: hand pipeline gives U = y^2 - 4, Disc = 16
  std::vector<EC> a{rq(0), rq(-3), rq(0)};
  CHECK(cvd<EC>(a) == rq(16));

  // y^3: repeated critical value
  std::vector<EC> a0{rq(0), rq(0), rq(0)};
  CHECK(cvd<EC>(a0) == rq(0));

  // quadratics: U has degree 1, convention Disc = 1
  std::vector<EC> q{random_rational(), random_rational()};
  CHECK(cvd<EC>(q) == rq(1));

  std::vector<EC> tooshort{rq(1)};
  CHECK_THROWS_AS(cvd<EC>(tooshort), Error);
}

TEST_CASE("cvd invariants") {
  // translation invariance in a0, exactly
  for (int trial = 0; trial < 10; ++trial) {
    std::uniform_int_distribution<int> degd(2, 6);
    int m = degd(rng);
    std::vector<EC> a;
    for (int i = 0; i < m; ++i) a.push_back(random_rational());
    std::vector<EC> shifted = a;
    shifted[0] += random_rational();
    CHECK(cvd<EC>(a) == cvd<EC>(shifted));
  }

  // V' subset of V_cvd: a degenerate critical point forces cvd = 0.
  // Build P with P'(y) = m (y - r)^2 (y - s)... by integrating exactly.
  for (int trial = 0; trial < 8; ++trial) {
    std::uniform_int_distribution<int> extra(0, 2);
    int extras = extra(rng);
    std::vector<EC> roots{random_rational(), random_rational()};
    roots.push_back(roots[0]);  // double critical point
    for (int i = 0; i < extras; ++i) roots.push_back(random_rational());
    PolyE dp = PolyE::from_roots(std::span<const EC>(roots));
    int m = dp.degree() + 1;
    // integrate m * dp
    std::vector<EC> pc(static_cast<std::size_t>(m) + 1, EC(0));
    for (int i = 0; i <= dp.degree(); ++i)
      pc[i + 1] = rq(m) * dp.coeff(i) / rq(i + 1);
    PolyE p(std::move(pc));
    REQUIRE(p.is_monic());
    std::vector<EC> a(p.coeffs().begin(), p.coeffs().end() - 1);
    CHECK(disc_variety_member<EC>(a));
    CHECK(cvd<EC>(a) == rq(0));
  }
}

TEST_CASE("disc variety membership") {
  std::vector<EC> a{rq(0), rq(-3), rq(0)};
  CHECK_FALSE(disc_variety_member<EC>(a));  // Disc(y^2-1) = 4
  std::vector<EC> a0{rq(0), rq(0), rq(0)};
  CHECK(disc_variety_member<EC>(a0));  // double critical point at 0
  // quadratics: derivative has degree 1, Disc = 1, never a member
  std::vector<EC> q{random_rational(), random_rational()};
  CHECK_FALSE(disc_variety_member<EC>(q));
}

TEST_CASE("root finder closed forms") {
  auto r1 = find_roots(cpoly({1, 0, 1}));  // z^2 + 1
  REQUIRE(r1.size() == 2);
  CHECK(std::abs(r1[0] - CV(0, -1)) < 1e-10);
  CHECK(std::abs(r1[1] - CV(0, 1)) < 1e-10);

  auto r2 = find_roots(cpoly({0, -3, 0, 1}));  // z^3 - 3z
  REQUIRE(r2.size() == 3);
  const double s3 = std::sqrt(3.0);
  CHECK(std::abs(r2[0] - CV(-s3, 0)) < 1e-9);
  CHECK(std::abs(r2[1] - CV(0, 0)) < 1e-9);
  CHECK(std::abs(r2[2] - CV(s3, 0)) < 1e-9);

  auto r3 = find_roots(cpoly({1, -2, 1}));  // (z-1)^2
  REQUIRE(r3.size() == 2);
  CHECK(std::abs(r3[0] - r3[1]) < 1e-6);  // cluster diameter
  CHECK(std::abs(r3[0] - CV(1, 0)) < 1e-5);
}

TEST_CASE("root finder Vieta sums and products") {
  std::uniform_real_distribution<double> coeffd(-2.0, 2.0);
  for (int trial = 0; trial < 25; ++trial) {
    std::uniform_int_distribution<int> degd(2, 7);
    int deg = degd(rng);
    std::vector<CV> c;
    for (int i = 0; i < deg; ++i) c.emplace_back(coeffd(rng), coeffd(rng));
    c.emplace_back(1.0, 0.0);
    PolyC p(std::move(c));
    auto roots = find_roots(p);
    CV sum(0), prod(1);
    for (auto& r : roots) {
      sum += r;
      prod *= r;
    }
    double scale = 1.0 + std::abs(p.coeff(deg - 1));
    CHECK(std::abs(sum + p.coeff(deg - 1)) < 1e-8 * scale);
    CV expect_prod = (deg % 2 == 0) ? p.coeff(0) : -p.coeff(0);
    CHECK(std::abs(prod - expect_prod) < 1e-8 * (1.0 + std::abs(p.coeff(0))));
  }
}

TEST_CASE("discriminant matches root products") {
  // exact resultant route vs float product over the numeric roots
  for (int trial = 0; trial < 12; ++trial) {
    std::uniform_int_distribution<int> degd(2, 7);
    int deg = degd(rng);
    std::vector<EC> c;
    for (int i = 0; i < deg; ++i) c.push_back(random_rational(4));
    c.push_back(rq(1));
    PolyE p(std::move(c));

    std::vector<CV> fc;
    for (auto& x : p.coeffs()) fc.push_back(x.to_complex());
    PolyC pf(std::move(fc));
    auto roots = find_roots(pf);

    // keep only well-separated instances
    double minsep = 1e9;
    for (std::size_t i = 0; i < roots.size(); ++i)
      for (std::size_t j = i + 1; j < roots.size(); ++j)
        minsep = std::min(minsep, std::abs(roots[i] - roots[j]));
    if (minsep < 0.2) continue;

    CV prod(1);
    for (std::size_t i = 0; i < roots.size(); ++i)
      for (std::size_t j = i + 1; j < roots.size(); ++j) {
        CV d = roots[i] - roots[j];
        prod *= d * d;
      }
    CV exact = discriminant(p).to_complex();
    CHECK(std::abs(exact - prod) <= 1e-6 * std::max(1.0, std::abs(exact)));
  }
}
