#pragma once

// Hamiltonian constructors and the line-oriented model file.
//
//   # qesb v1
//   name <free text>            (optional)
//   charge <s> <p>
//   term <re> <im> <m1> <m2> <m3> <m4>
//
// Coefficients are integers, decimals or fractions ("1/3") and are read
// exactly. `#` starts a comment; blank lines are ignored.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qesboson/op_algebra.hpp"

namespace qesb {

struct ModelTerm {
  QComplex coeff;
  Exponents exps;
  friend bool operator==(const ModelTerm&, const ModelTerm&) = default;
};

struct ModelFile {
  ConservedCharge charge{1, 1};
  std::vector<ModelTerm> terms;  // canonical: sorted by exponents, no zeros, no duplicates
  std::optional<std::string> name;

  OperatorPolynomial hamiltonian() const;
  static ModelFile from_operator(const OperatorPolynomial& h, const ConservedCharge& charge,
                                 std::optional<std::string> name = std::nullopt);
  friend bool operator==(const ModelFile&, const ModelFile&) = default;
};

/// Generic builder: sum of coeff * (a1+)^m1 a1^m2 (a2+)^m3 a2^m4.
OperatorPolynomial build_hamiltonian(std::span<const ModelTerm> terms);

/// w1 N1 + w2 N2 + k (a1+)^2 a2 + kb a2+ a1^2; conserves (1, 2).
OperatorPolynomial build_shg(const QComplex& omega1, const QComplex& omega2,
                             const QComplex& kappa, const QComplex& kappa_bar);

/// w1 N1 + w2 N2 + k (a1+)^n a2 + kb a2+ a1^n; conserves (1, n).
/// Throws InvalidOrder for n < 1.
OperatorPolynomial build_nth_harmonic(const QComplex& omega1, const QComplex& omega2,
                                      const QComplex& kappa, const QComplex& kappa_bar, int n);
ConservedCharge nth_harmonic_charge(int n);

/// Every (s, p) in [1, max]^2 (not reduced) for which h conserves s N1 + p N2.
std::vector<std::pair<long, long>> conserving_charges(const OperatorPolynomial& h, long max = 12);

/// Throws ParseError with the 1-based line number.
ModelFile parse_model_file(std::string_view text);
std::string write_model_file(const ModelFile& model);

}  // namespace qesb
