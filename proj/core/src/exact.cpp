#include "qesboson/exact.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace qesb {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  });
}

Integer pow10(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    Integer d(std::string(den), 10);
    if (d == 0) return std::nullopt;
    value = Rational(Integer(std::string(num), 10), d);
  } else {
    std::string_view mantissa = text;
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      mantissa = text.substr(0, e);
      auto exp_text = text.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!all_digits(exp_text) || exp_text.size() > 6) return std::nullopt;
      exponent = std::stol(std::string(exp_text));
      if (exp_negative) exponent = -exponent;
    }
    std::string digits;
    long frac_len = 0;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
      auto int_part = mantissa.substr(0, dot);
      auto frac_part = mantissa.substr(dot + 1);
      if (int_part.empty() && frac_part.empty()) return std::nullopt;
      if ((!int_part.empty() && !all_digits(int_part)) ||
          (!frac_part.empty() && !all_digits(frac_part)))
        return std::nullopt;
      digits = std::string(int_part) + std::string(frac_part);
      frac_len = static_cast<long>(frac_part.size());
    } else {
      if (!all_digits(mantissa)) return std::nullopt;
      digits = std::string(mantissa);
    }
    Integer n(digits, 10);
    long shift = exponent - frac_len;
    if (shift >= 0) {
      value = Rational(n * pow10(static_cast<unsigned long>(shift)));
    } else {
      value = Rational(n, pow10(static_cast<unsigned long>(-shift)));
    }
  }
  value.canonicalize();
  if (negative) value = -value;
  return value;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Integer falling_factorial(unsigned long n, unsigned long m) {
  if (m > n) return 0;
  Integer r = 1;
  for (unsigned long j = 0; j < m; ++j) r *= n - j;
  return r;
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// ---------------------------------------------------------------- QComplex

QComplex QComplex::from_double(std::complex<double> z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::invalid_argument("non-finite coefficient");
  return {Rational(z.real()), Rational(z.imag())};
}

QComplex& QComplex::operator+=(const QComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

QComplex& QComplex::operator-=(const QComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

QComplex& QComplex::operator*=(const QComplex& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

QComplex& QComplex::operator/=(const QComplex& o) {
  Rational n = o.norm();
  if (sgn(n) == 0) throw std::domain_error("division by zero complex rational");
  *this *= o.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

std::string to_string(const QComplex& z) {
  if (z.is_real()) return to_string(z.re());
  if (sgn(z.re()) == 0) return to_string(z.im()) + "i";
  std::string im = to_string(z.im());
  if (im.front() != '-') im = "+" + im;
  return "(" + to_string(z.re()) + im + "i)";
}

// ------------------------------------------------------------- QPolynomial

QPolynomial::QPolynomial(std::vector<QComplex> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

QPolynomial QPolynomial::constant(QComplex c) { return QPolynomial({std::move(c)}); }

QPolynomial QPolynomial::linear_factor(QComplex root) { return QPolynomial({-root, QComplex(1)}); }

QPolynomial QPolynomial::falling_factorial(unsigned m) {
  QPolynomial r = constant(1);
  for (unsigned j = 0; j < m; ++j) r = r * linear_factor(QComplex(static_cast<long>(j)));
  return r;
}

QPolynomial QPolynomial::power(unsigned m) {
  std::vector<QComplex> c(m + 1);
  c[m] = 1;
  return QPolynomial(std::move(c));
}

void QPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

QComplex QPolynomial::coeff(std::size_t power) const {
  return power < coeffs_.size() ? coeffs_[power] : QComplex();
}

QComplex QPolynomial::leading() const { return coeffs_.empty() ? QComplex() : coeffs_.back(); }

QComplex QPolynomial::operator()(const QComplex& x) const {
  QComplex acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::complex<double> QPolynomial::operator()(std::complex<double> x) const {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->to_complex();
  return acc;
}

QPolynomial QPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<QComplex> d(coeffs_.size() - 1);
  for (std::size_t j = 1; j < coeffs_.size(); ++j)
    d[j - 1] = coeffs_[j] * QComplex(static_cast<long>(j));
  return QPolynomial(std::move(d));
}

QPolynomial& QPolynomial::operator+=(const QPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t j = 0; j < o.coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
  trim();
  return *this;
}

QPolynomial& QPolynomial::operator-=(const QPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t j = 0; j < o.coeffs_.size(); ++j) coeffs_[j] -= o.coeffs_[j];
  trim();
  return *this;
}

QPolynomial& QPolynomial::operator*=(const QComplex& c) {
  for (auto& x : coeffs_) x *= c;
  trim();
  return *this;
}

QPolynomial operator*(const QPolynomial& a, const QPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<QComplex> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return QPolynomial(std::move(c));
}

// ---------------------------------------------------------- ExactAmplitude

SquarefreeSplit split_squarefree(const Integer& n) {
  if (sgn(n) < 0) throw std::domain_error("negative radicand");
  SquarefreeSplit out{1, 1};
  if (sgn(n) == 0) return {0, 1};
  Integer rest = n;
  for (Integer p = 2; p * p <= rest; ++p) {
    unsigned count = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
      rest /= p;
      ++count;
    }
    for (unsigned j = 0; j < count / 2; ++j) out.square *= p;
    if (count % 2 == 1) out.squarefree *= p;
  }
  out.squarefree *= rest;
  return out;
}

ExactAmplitude::ExactAmplitude(QComplex c) {
  if (!c.is_zero()) terms_.emplace(Integer(1), std::move(c));
}

ExactAmplitude::ExactAmplitude(QComplex c, const Integer& radicand) {
  auto [square, squarefree] = split_squarefree(radicand);
  if (sgn(square) == 0) return;
  add_term(squarefree, c * QComplex(Rational(square)));
}

void ExactAmplitude::add_term(const Integer& squarefree, const QComplex& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(squarefree, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::optional<QComplex> ExactAmplitude::as_rational() const {
  if (terms_.empty()) return QComplex();
  if (terms_.size() == 1 && terms_.begin()->first == 1) return terms_.begin()->second;
  return std::nullopt;
}

std::complex<double> ExactAmplitude::to_complex() const {
  std::complex<double> acc = 0.0;
  for (const auto& [r, c] : terms_) acc += c.to_complex() * std::sqrt(r.get_d());
  return acc;
}

ExactAmplitude& ExactAmplitude::operator+=(const ExactAmplitude& o) {
  for (const auto& [r, c] : o.terms_) add_term(r, c);
  return *this;
}

ExactAmplitude& ExactAmplitude::operator*=(const QComplex& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [r, v] : terms_) v *= c;
  return *this;
}

ExactAmplitude& ExactAmplitude::operator*=(const ExactAmplitude& o) {
  ExactAmplitude out;
  for (const auto& [r1, c1] : terms_) {
    for (const auto& [r2, c2] : o.terms_) {
      // sqrt(r1) sqrt(r2) = g sqrt((r1/g)(r2/g)) for squarefree r1, r2
      Integer g;
      mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), r2.get_mpz_t());
      Integer radicand = (r1 / g) * (r2 / g);
      out.add_term(radicand, c1 * c2 * QComplex(Rational(g)));
    }
  }
  terms_ = std::move(out.terms_);
  return *this;
}

ExactAmplitude& ExactAmplitude::scale_by_sqrt(const Integer& n) {
  return *this *= ExactAmplitude(QComplex(1), n);
}

}  // namespace qesb
