#pragma once

// Normal-ordered algebra of two boson modes. Every term is stored as
//   coeff * (a1+)^m1 (a1)^m2 (a2+)^m3 (a2)^m4
// with [a_i, a_j+] = delta_ij and all other commutators zero.

#include <compare>
#include <cstdint>
#include <map>
#include <string>

#include "qesboson/exact.hpp"

namespace qesb {

struct Exponents {
  unsigned m1 = 0;  // a1+
  unsigned m2 = 0;  // a1
  unsigned m3 = 0;  // a2+
  unsigned m4 = 0;  // a2
  friend auto operator<=>(const Exponents&, const Exponents&) = default;
};

struct BosonMonomial {
  QComplex coeff;
  Exponents exps;
};

class OperatorPolynomial {
 public:
  using TermMap = std::map<Exponents, QComplex>;

  OperatorPolynomial() = default;
  OperatorPolynomial(const BosonMonomial& m);  // NOLINT
  static OperatorPolynomial identity(QComplex c = 1);
  static OperatorPolynomial term(QComplex c, unsigned m1, unsigned m2, unsigned m3, unsigned m4);

  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  QComplex coeff(const Exponents& e) const;

  void add_term(const Exponents& e, const QComplex& c);

  /// Reverse factor order, swap daggers, conjugate; result re-normal-ordered.
  OperatorPolynomial adjoint() const;

  OperatorPolynomial& operator+=(const OperatorPolynomial& o);
  OperatorPolynomial& operator-=(const OperatorPolynomial& o);
  OperatorPolynomial& operator*=(const QComplex& c);
  friend OperatorPolynomial operator+(OperatorPolynomial a, const OperatorPolynomial& b) {
    return a += b;
  }
  friend OperatorPolynomial operator-(OperatorPolynomial a, const OperatorPolynomial& b) {
    return a -= b;
  }
  friend OperatorPolynomial operator*(OperatorPolynomial a, const QComplex& c) { return a *= c; }
  friend OperatorPolynomial operator*(const QComplex& c, OperatorPolynomial a) { return a *= c; }
  friend OperatorPolynomial operator*(const OperatorPolynomial& a, const OperatorPolynomial& b);
  friend bool operator==(const OperatorPolynomial&, const OperatorPolynomial&) = default;

 private:
  TermMap terms_;
};

std::string to_string(const OperatorPolynomial& op);

namespace ops {
OperatorPolynomial a1();
OperatorPolynomial a1dag();
OperatorPolynomial a2();
OperatorPolynomial a2dag();
}  // namespace ops

/// Coefficients of a^m (a+)^n = sum_j C(m,j) C(n,j) j! (a+)^(n-j) a^(m-j),
/// indexed by j = 0..min(m,n).
std::vector<Integer> single_mode_reorder(unsigned annihilations, unsigned creations);

OperatorPolynomial monomial_product(const BosonMonomial& lhs, const BosonMonomial& rhs);
OperatorPolynomial commutator(const OperatorPolynomial& a, const OperatorPolynomial& b);

/// K = s a1+ a1 + p a2+ a2, stored with gcd(s, p) = 1.
class ConservedCharge {
 public:
  ConservedCharge(long s, long p);
  long s() const noexcept { return s_; }
  long p() const noexcept { return p_; }
  OperatorPolynomial as_operator() const;
  /// s(m1 - m2) + p(m3 - m4): the eigenvalue of ad_K on a monomial.
  long weight(const Exponents& e) const;
  friend bool operator==(const ConservedCharge&, const ConservedCharge&) = default;

 private:
  long s_;
  long p_;
};

/// sum_terms weight(term) * term, the closed form of [K, H].
OperatorPolynomial charge_commutator_termwise(const ConservedCharge& charge,
                                              const OperatorPolynomial& h);

bool conserves(const OperatorPolynomial& h, const ConservedCharge& charge);
bool is_hermitian(const OperatorPolynomial& h);

struct FockState {
  unsigned n1 = 0;
  unsigned n2 = 0;
  friend auto operator<=>(const FockState&, const FockState&) = default;
};

std::int64_t charge_of_state(const ConservedCharge& charge, const FockState& state);

using FockVector = std::map<FockState, ExactAmplitude>;

/// Exact image of |n1,n2> under h; absent keys have amplitude zero.
FockVector apply_to_fock(const OperatorPolynomial& h, const FockState& state);
FockVector apply_to_fock(const OperatorPolynomial& h, const FockVector& state);

}  // namespace qesb
