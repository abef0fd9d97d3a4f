#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "cvd/poly.hpp"
#include "cvd/scalar.hpp"

namespace cvd {

// ---------------------------------------------------------------------------
// Entire-function expressions: finite sums  c * z^k * exp(Q(z))  with
// polynomial Q. This class is closed under +, *, d/dz and contains every
// normal form the classifiers pattern-match on.
// ---------------------------------------------------------------------------

struct ExprTerm {
  Scalar c;
  unsigned k = 0;
  Poly<Scalar> expo;  // zero constant term by construction
};

struct OrderType {
  unsigned rho = 0;
  double type = 0.0;
};

class EntireExpr {
 public:
  EntireExpr() = default;

  static EntireExpr zero() { return EntireExpr(); }
  static EntireExpr constant(Scalar c) {
    EntireExpr e;
    e.terms_.push_back({std::move(c), 0, {}});
    e.canonicalize();
    return e;
  }
  static EntireExpr variable() {
    EntireExpr e;
    e.terms_.push_back({Scalar::from_int(1), 1, {}});
    return e;
  }
  static EntireExpr term(Scalar c, unsigned k, Poly<Scalar> q) {
    EntireExpr e;
    e.terms_.push_back({std::move(c), k, std::move(q)});
    e.canonicalize();
    return e;
  }
  static EntireExpr from_polynomial(const Poly<Scalar>& p) {
    EntireExpr e;
    for (int i = 0; i <= p.degree(); ++i)
      e.terms_.push_back({p.coeff(static_cast<std::size_t>(i)), static_cast<unsigned>(i), {}});
    e.canonicalize();
    return e;
  }
  static EntireExpr from_polynomial(const Poly<ComplexValue>& p) {
    std::vector<Scalar> c;
    for (int i = 0; i <= p.degree(); ++i)
      c.push_back(Scalar::from_double(p.coeff(static_cast<std::size_t>(i))));
    return from_polynomial(Poly<Scalar>(std::move(c)));
  }

  const std::vector<ExprTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].k == 0 && terms_[0].expo.is_zero());
  }
  Scalar constant_value() const {
    return terms_.empty() ? Scalar() : terms_[0].c;
  }
  /// True when no term carries an exponential factor.
  bool is_polynomial() const {
    for (const auto& t : terms_)
      if (!t.expo.is_zero()) return false;
    return true;
  }
  /// Coefficient view of a polynomial expression.
  Poly<Scalar> polynomial_part() const {
    std::vector<Scalar> c;
    for (const auto& t : terms_) {
      if (t.k >= c.size()) c.resize(t.k + 1, Scalar());
      c[t.k] += t.c;
    }
    return Poly<Scalar>(std::move(c));
  }

  friend EntireExpr operator+(const EntireExpr& a, const EntireExpr& b) {
    EntireExpr e;
    e.terms_ = a.terms_;
    e.terms_.insert(e.terms_.end(), b.terms_.begin(), b.terms_.end());
    e.canonicalize();
    return e;
  }
  friend EntireExpr operator-(const EntireExpr& a, const EntireExpr& b) { return a + (-b); }
  friend EntireExpr operator-(const EntireExpr& a) {
    EntireExpr e = a;
    for (auto& t : e.terms_) t.c = -t.c;
    return e;
  }
  friend EntireExpr operator*(const EntireExpr& a, const EntireExpr& b) {
    EntireExpr e;
    for (const auto& ta : a.terms_)
      for (const auto& tb : b.terms_)
        e.terms_.push_back({ta.c * tb.c, ta.k + tb.k, ta.expo + tb.expo});
    e.canonicalize();
    return e;
  }
  EntireExpr pow(unsigned long n) const {
    EntireExpr acc = constant(Scalar::from_int(1));
    EntireExpr base = *this;
    while (n > 0) {
      if (n & 1) acc = acc * base;
      base = base * base;
      n >>= 1;
    }
    return acc;
  }

  friend bool operator==(const EntireExpr& a, const EntireExpr& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (a.terms_[i].k != b.terms_[i].k) return false;
      if (!(a.terms_[i].c == b.terms_[i].c)) return false;
      if (a.terms_[i].expo != b.terms_[i].expo) return false;
    }
    return true;
  }
  friend bool operator!=(const EntireExpr& a, const EntireExpr& b) { return !(a == b); }

 private:
  static bool expo_less(const Poly<Scalar>& qa, const Poly<Scalar>& qb) {
    if (qa.degree() != qb.degree()) return qa.degree() < qb.degree();
    for (int i = qa.degree(); i >= 1; --i) {
      Scalar ca = qa.coeff(static_cast<std::size_t>(i));
      Scalar cb = qb.coeff(static_cast<std::size_t>(i));
      if (ca != cb) return canonical_less(ca, cb);
    }
    return false;
  }

  void canonicalize() {
    std::stable_sort(terms_.begin(), terms_.end(), [](const ExprTerm& a, const ExprTerm& b) {
      if (a.expo != b.expo) return expo_less(a.expo, b.expo);
      return a.k < b.k;
    });
    std::vector<ExprTerm> merged;
    for (auto& t : terms_) {
      if (!merged.empty() && merged.back().k == t.k && merged.back().expo == t.expo)
        merged.back().c += t.c;
      else
        merged.push_back(std::move(t));
    }
    terms_.clear();
    for (auto& t : merged)
      if (!t.c.is_zero()) terms_.push_back(std::move(t));
  }

  std::vector<ExprTerm> terms_;
};

// ---------------------------------------------------------------------------
// Calculus and classification hooks
// ---------------------------------------------------------------------------

/// Exact term-wise derivative; the class is closed under d/dz.
inline EntireExpr differentiate(const EntireExpr& f) {
  EntireExpr out;
  for (const auto& t : f.terms()) {
    if (t.k >= 1)
      out = out + EntireExpr::term(t.c * Scalar::from_int(t.k), t.k - 1, t.expo);
    for (int j = 1; j <= t.expo.degree(); ++j) {
      Scalar qj = t.expo.coeff(static_cast<std::size_t>(j));
      out = out + EntireExpr::term(t.c * qj * Scalar::from_int(j),
                                   t.k + static_cast<unsigned>(j) - 1, t.expo);
    }
  }
  return out;
}

namespace detail {
inline ComplexValue pow_uint(ComplexValue z, unsigned long k) {
  ComplexValue acc(1.0);
  while (k > 0) {
    if (k & 1) acc *= z;
    z *= z;
    k >>= 1;
  }
  return acc;
}
}  // namespace detail

/// Per-term Horner evaluation; exponent overflow is reported, never saturated.
inline ComplexValue evaluate(const EntireExpr& f, ComplexValue z) {
  ComplexValue acc(0.0);
  for (const auto& t : f.terms()) {
    ComplexValue v = t.c.numeric() * detail::pow_uint(z, t.k);
    if (!t.expo.is_zero()) {
      ComplexValue q = t.expo.template evaluate<ComplexValue>(z);
      if (std::abs(q.real()) > 709.0)
        throw Error(ErrorKind::OverflowToInfinity,
                    "exponent real part " + std::to_string(q.real()) +
                        " exceeds the double exponent range");
      v *= std::exp(q);
    }
    acc += v;
  }
  return acc;
}

/// Growth order rho = max deg Q, type p = max |leading Q coefficient| among
/// exponent polynomials of maximal degree; polynomials are (0, 0).
inline OrderType order_and_type(const EntireExpr& f) {
  OrderType ot;
  int rho = 0;
  for (const auto& t : f.terms()) rho = std::max(rho, t.expo.degree());
  if (rho <= 0) return ot;
  double p = 0.0;
  for (const auto& t : f.terms())
    if (t.expo.degree() == rho)
      p = std::max(p, std::abs(t.expo.leading().numeric()));
  ot.rho = static_cast<unsigned>(rho);
  ot.type = p;
  return ot;
}

/// Membership in the growth class of order rho and type at most p.
inline bool in_class(const EntireExpr& f, unsigned rho, double p) {
  OrderType ot = order_and_type(f);
  if (ot.rho < rho) return true;
  return ot.rho == rho && ot.type <= p;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace detail {

enum class Tok { Num, ImagNum, Z, Pi, I, Exp, Plus, Minus, Star, Caret, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  Rational value;  // Num / ImagNum payload
  std::size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : s_(text) {}

  Token next() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    std::size_t pos = i_;
    if (i_ >= s_.size()) return {Tok::End, Rational(0), pos};
    char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return lex_number(pos);
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string id;
      while (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_]))) id += s_[i_++];
      if (id == "z") return {Tok::Z, Rational(0), pos};
      if (id == "pi") return {Tok::Pi, Rational(0), pos};
      if (id == "i") return {Tok::I, Rational(0), pos};
      if (id == "exp") return {Tok::Exp, Rational(0), pos};
      throw syntax_error(pos, "unknown identifier '" + id + "' (expected z, pi, i or exp)");
    }
    ++i_;
    switch (c) {
      case '+': return {Tok::Plus, Rational(0), pos};
      case '-': return {Tok::Minus, Rational(0), pos};
      case '*': return {Tok::Star, Rational(0), pos};
      case '^': return {Tok::Caret, Rational(0), pos};
      case '(': return {Tok::LParen, Rational(0), pos};
      case ')': return {Tok::RParen, Rational(0), pos};
      case ',': return {Tok::Comma, Rational(0), pos};
      default: throw syntax_error(pos, std::string("unexpected character '") + c + "'");
    }
  }

  static Error syntax_error(std::size_t pos, const std::string& what) {
    Error e(ErrorKind::SyntaxError, "syntax error at position " + std::to_string(pos) + ": " + what);
    e.set_position(static_cast<long>(pos));
    return e;
  }

 private:
  Token lex_number(std::size_t pos) {
    std::size_t start = i_;
    bool saw_digit = false;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) { ++i_; saw_digit = true; }
    if (i_ < s_.size() && s_[i_] == '.') {
      ++i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) { ++i_; saw_digit = true; }
    }
    if (!saw_digit) throw syntax_error(pos, "malformed number");
    if (i_ < s_.size() && (s_[i_] == 'e' || s_[i_] == 'E')) {
      std::size_t save = i_;
      ++i_;
      if (i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-')) ++i_;
      if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      } else {
        i_ = save;  // 'e' belongs to something else, e.g. "2exp" is an error later
      }
    }
    Rational v = rational_from_decimal(s_.substr(start, i_ - start));
    // an 'i' glued to a number is an imaginary literal: 2i, 0.5i
    if (i_ < s_.size() && s_[i_] == 'i' &&
        (i_ + 1 >= s_.size() || !std::isalnum(static_cast<unsigned char>(s_[i_ + 1])))) {
      ++i_;
      return {Tok::ImagNum, v, pos};
    }
    return {Tok::Num, v, pos};
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) { advance(); }

  EntireExpr parse() {
    EntireExpr e = expression();
    expect(Tok::End, "end of input");
    return e;
  }

  static EntireExpr apply_exp(const EntireExpr& arg, std::size_t pos);

 private:
  void advance() { cur_ = lex_.next(); }
  void expect(Tok k, const std::string& what) {
    if (cur_.kind != k) throw Lexer::syntax_error(cur_.pos, "expected " + what);
    advance();
  }

  EntireExpr expression() {
    bool neg = false;
    if (cur_.kind == Tok::Plus) advance();
    else if (cur_.kind == Tok::Minus) { neg = true; advance(); }
    EntireExpr acc = term();
    if (neg) acc = -acc;
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      bool minus = cur_.kind == Tok::Minus;
      advance();
      EntireExpr t = term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }

  EntireExpr term() {
    EntireExpr acc = factor();
    while (cur_.kind == Tok::Star) {
      advance();
      acc = acc * factor();
    }
    return acc;
  }

  EntireExpr factor() {
    EntireExpr base = primary();
    while (cur_.kind == Tok::Caret) {
      std::size_t pos = cur_.pos;
      advance();
      if (cur_.kind != Tok::Num || cur_.value.get_den() != 1 || cur_.value < 0)
        throw Lexer::syntax_error(cur_.kind == Tok::End ? pos : cur_.pos,
                                  "expected a nonnegative integer exponent");
      unsigned long n = cur_.value.get_num().get_ui();
      advance();
      base = base.pow(n);
    }
    return base;
  }

  EntireExpr primary() {
    switch (cur_.kind) {
      case Tok::Num: {
        Scalar v = Scalar::from_exact(ExactComplex(cur_.value, Rational(0)));
        advance();
        return EntireExpr::constant(v);
      }
      case Tok::ImagNum: {
        Scalar v = Scalar::from_exact(ExactComplex(Rational(0), cur_.value));
        advance();
        return EntireExpr::constant(v);
      }
      case Tok::I:
        advance();
        return EntireExpr::constant(Scalar::imaginary_unit());
      case Tok::Pi:
        advance();
        return EntireExpr::constant(Scalar::pi());
      case Tok::Z:
        advance();
        return EntireExpr::variable();
      case Tok::Exp: {
        std::size_t pos = cur_.pos;
        advance();
        expect(Tok::LParen, "'(' after exp");
        EntireExpr arg = expression();
        expect(Tok::RParen, "')'");
        return apply_exp(arg, pos);
      }
      case Tok::LParen: {
        advance();
        EntireExpr first = expression();
        if (cur_.kind == Tok::Comma) {
          std::size_t pos = cur_.pos;
          advance();
          EntireExpr second = expression();
          expect(Tok::RParen, "')'");
          if (!first.is_constant() || !second.is_constant())
            throw Lexer::syntax_error(pos, "components of a (re,im) literal must be constants");
          return first + EntireExpr::constant(Scalar::imaginary_unit() * second.constant_value());
        }
        expect(Tok::RParen, "')'");
        return first;
      }
      default:
        throw Lexer::syntax_error(cur_.pos, "expected a value, z, pi, exp(...) or '('");
    }
  }

  static EntireExpr apply_exp(const EntireExpr& arg, std::size_t pos) {
    if (!arg.is_polynomial()) {
      Error e(ErrorKind::NonPolynomialExponent,
              "argument of exp at position " + std::to_string(pos) +
                  " must be a polynomial in z");
      e.set_position(static_cast<long>(pos));
      throw e;
    }
    Poly<Scalar> p = arg.polynomial_part();
    Scalar c0 = p.coeff(0);
    std::vector<Scalar> qc(p.coeffs());
    if (!qc.empty()) qc[0] = Scalar();
    Poly<Scalar> q(std::move(qc));

    Scalar factor = Scalar::from_int(1);
    if (!c0.is_zero()) {  // fold exp of the constant term into the coefficient
      ComplexValue v = std::exp(c0.numeric());
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw Error(ErrorKind::OverflowToInfinity, "constant term of exponent overflows");
      factor = Scalar::from_double(v);
    }
    return EntireExpr::term(factor, 0, q);
  }

  Lexer lex_;
  Token cur_;
};

}  // namespace detail

/// Total on the grammar: complex literals a+bi or (re,im), variable z,
/// operators + - * ^, exp(polynomial), named constant pi.
inline EntireExpr parse_expr(const std::string& text) {
  return detail::Parser(text).parse();
}

/// exp of a polynomial expression (the constant term folds into the
/// coefficient); rejects arguments that carry exponential factors.
inline EntireExpr exp_of(const EntireExpr& arg) {
  return detail::Parser::apply_exp(arg, 0);
}

/// f(z + w0); exponent constant terms fold into (inexact) coefficients.
inline EntireExpr shift_argument(const EntireExpr& f, ComplexValue w0) {
  EntireExpr shifted_var = EntireExpr::variable() + EntireExpr::constant(Scalar::from_double(w0));
  EntireExpr out;
  for (const auto& t : f.terms()) {
    EntireExpr part = EntireExpr::constant(t.c) * shifted_var.pow(t.k);
    if (!t.expo.is_zero()) {
      EntireExpr qs;
      for (int j = 1; j <= t.expo.degree(); ++j)
        qs = qs + EntireExpr::constant(t.expo.coeff(static_cast<std::size_t>(j))) *
                      shifted_var.pow(static_cast<unsigned long>(j));
      part = part * exp_of(qs);
    }
    out = out + part;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Printer (canonical text; parse_expr(to_text(e)) == e for canonical e)
// ---------------------------------------------------------------------------

namespace detail {

inline std::string double_text(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Exact decimal text when the denominator is 2^a 5^b, shortest double
/// otherwise (only reachable for values built programmatically).
inline std::string rational_text(const Rational& q) {
  mpz_class den = q.get_den();
  unsigned long twos = 0, fives = 0;
  while (den % 2 == 0) { den /= 2; ++twos; }
  while (den % 5 == 0) { den /= 5; ++fives; }
  if (den != 1) return double_text(q.get_d());
  unsigned long k = std::max(twos, fives);
  mpz_class scale;
  mpz_class ten = 10;
  mpz_pow_ui(scale.get_mpz_t(), ten.get_mpz_t(), k);
  mpz_class n = q.get_num() * (scale / q.get_den());
  bool neg = n < 0;
  mpz_class mag = abs(n);
  std::string digits = mag.get_str();
  if (digits.size() <= k) digits.insert(0, k - digits.size() + 1, '0');
  std::string out = digits;
  if (k > 0) {
    out.insert(out.size() - k, ".");
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return neg ? "-" + out : out;
}

struct ScalarText {
  std::string text;
  bool atomic;  // usable as a product factor without parentheses
};

inline ScalarText gaussian_text(const ExactComplex& g) {
  if (g.im == 0) return {rational_text(g.re), true};
  std::string im_mag = rational_text(abs(g.im));
  std::string im_part = (im_mag == "1") ? "i" : im_mag + "i";
  if (g.re == 0) return {(g.im < 0 ? "-" : "") + im_part, true};
  return {rational_text(g.re) + (g.im < 0 ? "-" : "+") + im_part, false};
}

inline ScalarText scalar_text(const Scalar& s) {
  if (!s.exact()) {
    ComplexValue v = s.numeric();
    if (v.imag() == 0.0) return {double_text(v.real()), true};
    std::string im_part = double_text(std::abs(v.imag())) + "i";
    if (v.real() == 0.0) return {(v.imag() < 0 ? "-" : "") + im_part, true};
    return {double_text(v.real()) + (v.imag() < 0 ? "-" : "+") + im_part, false};
  }
  if (s.pi_degree() <= 0) return gaussian_text(s.pi_coeff(0));
  std::string out;
  int monomials = 0;
  for (int j = 0; j <= s.pi_degree(); ++j) {
    ExactComplex c = s.pi_coeff(static_cast<std::size_t>(j));
    if (c.is_zero()) continue;
    ScalarText ct = gaussian_text(c);
    std::string piece;
    std::string pi_pow = j == 0 ? "" : (j == 1 ? "pi" : "pi^" + std::to_string(j));
    if (j == 0) piece = ct.text;
    else if (c == ExactComplex(1)) piece = pi_pow;
    else if (c == ExactComplex(-1)) piece = "-" + pi_pow;
    else piece = (ct.atomic ? ct.text : "(" + ct.text + ")") + "*" + pi_pow;
    if (out.empty()) out = piece;
    else if (!piece.empty() && piece[0] == '-') out += "-" + piece.substr(1);
    else out += "+" + piece;
    ++monomials;
  }
  return {out, monomials == 1 && out.find('+', 1) == std::string::npos &&
                   out.find('-', 1) == std::string::npos};
}

inline std::string expo_text(const Poly<Scalar>& q) {
  std::string out;
  for (int j = 1; j <= q.degree(); ++j) {
    Scalar c = q.coeff(static_cast<std::size_t>(j));
    if (c.is_zero()) continue;
    std::string zpow = j == 1 ? "z" : "z^" + std::to_string(j);
    std::string piece;
    if (c.is_one()) piece = zpow;
    else if ((-c).is_one()) piece = "-" + zpow;
    else {
      ScalarText ct = scalar_text(c);
      piece = (ct.atomic ? ct.text : "(" + ct.text + ")") + "*" + zpow;
    }
    if (out.empty()) out = piece;
    else if (piece[0] == '-') out += " - " + piece.substr(1);
    else out += " + " + piece;
  }
  return out;
}

inline std::string term_text(const ExprTerm& t) {
  std::string factors;
  if (t.k > 0) factors = t.k == 1 ? "z" : "z^" + std::to_string(t.k);
  if (!t.expo.is_zero()) {
    if (!factors.empty()) factors += "*";
    factors += "exp(" + expo_text(t.expo) + ")";
  }
  if (factors.empty()) {
    ScalarText ct = scalar_text(t.c);
    return ct.atomic ? ct.text : "(" + ct.text + ")";
  }
  if (t.c.is_one()) return factors;
  if ((-t.c).is_one()) return "-" + factors;
  ScalarText ct = scalar_text(t.c);
  return (ct.atomic ? ct.text : "(" + ct.text + ")") + "*" + factors;
}

}  // namespace detail

inline std::string to_text(const EntireExpr& e) {
  if (e.is_zero()) return "0";
  std::string out;
  for (const auto& t : e.terms()) {
    std::string tt = detail::term_text(t);
    if (out.empty()) out = tt;
    else if (tt[0] == '-') out += " - " + tt.substr(1);
    else out += " + " + tt;
  }
  return out;
}

}  // namespace cvd
