#pragma once

// Exact scalar types: complex rationals, polynomials over them, and
// finite sums of square roots used for Fock-space amplitudes.

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qesb {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "3", "-1/3", "0.25", "1.5e-3" exactly. Returns nullopt on malformed input.
std::optional<Rational> parse_rational(std::string_view text);

/// Canonical text form: "p" or "p/q" in lowest terms.
std::string to_string(const Rational& q);

Integer factorial(unsigned long n);
/// n (n-1) ... (n-m+1); zero when m > n.
Integer falling_factorial(unsigned long n, unsigned long m);
Integer binomial(unsigned long n, unsigned long k);

class QComplex {
 public:
  QComplex() = default;
  QComplex(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
  QComplex(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }
  QComplex(long v) : re_(v) {}  // NOLINT
  QComplex(int v) : re_(v) {}   // NOLINT
  /// Exact: every finite double is a dyadic rational.
  static QComplex from_double(std::complex<double> z);

  const Rational& re() const noexcept { return re_; }
  const Rational& im() const noexcept { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  QComplex conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }
  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  QComplex& operator+=(const QComplex& o);
  QComplex& operator-=(const QComplex& o);
  QComplex& operator*=(const QComplex& o);
  QComplex& operator/=(const QComplex& o);

  friend QComplex operator+(QComplex a, const QComplex& b) { return a += b; }
  friend QComplex operator-(QComplex a, const QComplex& b) { return a -= b; }
  friend QComplex operator*(QComplex a, const QComplex& b) { return a *= b; }
  friend QComplex operator/(QComplex a, const QComplex& b) { return a /= b; }
  QComplex operator-() const { return {-re_, -im_}; }

  friend bool operator==(const QComplex& a, const QComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

std::string to_string(const QComplex& z);

/// Dense univariate polynomial, coefficients in ascending powers.
/// Trailing zero coefficients are trimmed, so the zero polynomial is empty.
class QPolynomial {
 public:
  QPolynomial() = default;
  explicit QPolynomial(std::vector<QComplex> coeffs);
  static QPolynomial constant(QComplex c);
  /// x - root
  static QPolynomial linear_factor(QComplex root);
  /// x (x-1) ... (x-m+1)
  static QPolynomial falling_factorial(unsigned m);
  /// x^m
  static QPolynomial power(unsigned m);

  const std::vector<QComplex>& coeffs() const noexcept { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  QComplex coeff(std::size_t power) const;
  QComplex leading() const;

  QComplex operator()(const QComplex& x) const;
  std::complex<double> operator()(std::complex<double> x) const;
  QPolynomial derivative() const;

  QPolynomial& operator+=(const QPolynomial& o);
  QPolynomial& operator-=(const QPolynomial& o);
  QPolynomial& operator*=(const QComplex& c);
  friend QPolynomial operator+(QPolynomial a, const QPolynomial& b) { return a += b; }
  friend QPolynomial operator-(QPolynomial a, const QPolynomial& b) { return a -= b; }
  friend QPolynomial operator*(QPolynomial a, const QComplex& c) { return a *= c; }
  friend QPolynomial operator*(const QPolynomial& a, const QPolynomial& b);
  friend bool operator==(const QPolynomial& a, const QPolynomial& b) = default;

 private:
  void trim();
  std::vector<QComplex> coeffs_;
};

/// Exact element of Q(i)[sqrt 2, sqrt 3, ...]: a finite sum of c_r * sqrt(r)
/// with squarefree radicands r >= 1 and complex-rational c_r. Canonical form
/// (no zero coefficients, squarefree keys) makes == an exact test.
class ExactAmplitude {
 public:
  ExactAmplitude() = default;
  ExactAmplitude(QComplex c);  // NOLINT
  /// c * sqrt(radicand), radicand any non-negative integer.
  ExactAmplitude(QComplex c, const Integer& radicand);

  const std::map<Integer, QComplex>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// The rational part if this is a plain complex rational.
  std::optional<QComplex> as_rational() const;
  std::complex<double> to_complex() const;

  ExactAmplitude& operator+=(const ExactAmplitude& o);
  ExactAmplitude& operator*=(const ExactAmplitude& o);
  ExactAmplitude& operator*=(const QComplex& c);
  /// Multiply by sqrt(n).
  ExactAmplitude& scale_by_sqrt(const Integer& n);
  friend ExactAmplitude operator+(ExactAmplitude a, const ExactAmplitude& b) { return a += b; }
  friend ExactAmplitude operator*(ExactAmplitude a, const ExactAmplitude& b) { return a *= b; }
  friend bool operator==(const ExactAmplitude& a, const ExactAmplitude& b) = default;

 private:
  void add_term(const Integer& squarefree, const QComplex& c);
  std::map<Integer, QComplex> terms_;
};

/// n = square^2 * squarefree. Trial division; intended for products of small
/// ladder factors.
struct SquarefreeSplit {
  Integer square;
  Integer squarefree;
};
SquarefreeSplit split_squarefree(const Integer& n);

}  // namespace qesb
