#pragma once

#include <gmpxx.h>

#include <cctype>
#include <complex>
#include <cstdlib>
#include <string>

#include "cvd/errors.hpp"

namespace cvd {

using Rational = mpq_class;
using ComplexValue = std::complex<double>;

/// "p/q" with the denominator always written, so exact values survive a
/// round trip through text untouched.
inline std::string rational_to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational rational_from_string(std::string s) {
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  if (s.empty()) throw Error(ErrorKind::InvalidInput, "empty rational token");
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-'))
      throw Error(ErrorKind::InvalidInput, "bad rational token '" + s + "' (expected p or p/q)");
  }
  try {
    Rational q(s, 10);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw Error(ErrorKind::InvalidInput, "bad rational token '" + s + "'");
  }
}

/// Exact value of a decimal literal such as "2.25e-1" (= 9/40).
inline Rational rational_from_decimal(const std::string& text) {
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) neg = text[i++] == '-';
  std::string digits;
  long frac_digits = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) digits += text[i++];
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      digits += text[i++];
      ++frac_digits;
    }
  }
  long exp10 = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) eneg = text[i++] == '-';
    std::string ed;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ed += text[i++];
    if (ed.empty()) throw Error(ErrorKind::InvalidInput, "bad exponent in decimal literal '" + text + "'");
    exp10 = std::strtol(ed.c_str(), nullptr, 10);
    if (eneg) exp10 = -exp10;
  }
  if (digits.empty() || i != text.size())
    throw Error(ErrorKind::InvalidInput, "bad decimal literal '" + text + "'");

  mpz_class num(digits.empty() ? "0" : digits, 10);
  mpz_class den = 1;
  long shift = exp10 - frac_digits;
  mpz_class ten = 10;
  if (shift >= 0) {
    mpz_class scale;
    mpz_pow_ui(scale.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(shift));
    num *= scale;
  } else {
    mpz_pow_ui(den.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(-shift));
  }
  Rational q(num, den);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

/// Gaussian rational: the exact coefficient field of the CVD pipeline.
struct ExactComplex {
  Rational re;
  Rational im;

  ExactComplex() : re(0), im(0) {}
  ExactComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }
  explicit ExactComplex(long r) : re(r), im(0) {}
  ExactComplex(long r, long i) : re(r), im(i) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  ComplexValue to_complex() const { return {re.get_d(), im.get_d()}; }

  Rational norm() const { return re * re + im * im; }

  friend ExactComplex operator+(const ExactComplex& a, const ExactComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ExactComplex operator-(const ExactComplex& a, const ExactComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ExactComplex operator-(const ExactComplex& a) { return {-a.re, -a.im}; }
  friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ExactComplex operator/(const ExactComplex& a, const ExactComplex& b) {
    if (b.is_zero()) throw Error(ErrorKind::InvalidInput, "exact division by zero");
    Rational n = b.norm();
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  ExactComplex& operator+=(const ExactComplex& b) { return *this = *this + b; }
  ExactComplex& operator-=(const ExactComplex& b) { return *this = *this - b; }
  ExactComplex& operator*=(const ExactComplex& b) { return *this = *this * b; }

  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const ExactComplex& a, const ExactComplex& b) { return !(a == b); }

  /// Total order used for deterministic sorting (not a field order).
  friend bool lex_less(const ExactComplex& a, const ExactComplex& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  }
};

/// Accepts "p/q", "p/q+r/si", "r/si", "i", "-i" and plain integers.
inline ExactComplex exact_complex_from_string(const std::string& token) {
  std::string s;
  for (char c : token)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw Error(ErrorKind::InvalidInput, "empty exact complex token");
  if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
      s.find('E') != std::string::npos)
    throw Error(ErrorKind::InvalidInput,
                "decimal literal '" + token + "' in an exact context (use p/q form)");

  auto parse_part = [](std::string t) -> Rational {
    if (t.empty() || t == "+") t = "1";
    else if (t == "-") t = "-1";
    return rational_from_string(t);
  };

  if (s.back() == 'i') {
    std::string body = s.substr(0, s.size() - 1);
    // split at the last top-level sign that is not the leading one
    std::size_t split = std::string::npos;
    for (std::size_t j = 1; j < body.size(); ++j)
      if (body[j] == '+' || body[j] == '-') split = j;
    if (split == std::string::npos) return {Rational(0), parse_part(body)};
    return {parse_part(body.substr(0, split)), parse_part(body.substr(split))};
  }
  return {parse_part(s), Rational(0)};
}

inline std::string exact_complex_to_string(const ExactComplex& z) {
  if (z.im == 0) return rational_to_string(z.re);
  std::string out = rational_to_string(z.re);
  out += (z.im < 0) ? "-" : "+";
  Rational a = abs(z.im);
  out += rational_to_string(a) + "i";
  return out;
}

}  // namespace cvd
