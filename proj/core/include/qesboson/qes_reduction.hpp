#pragma once

// Single-boson reduction of charge-conserving two-mode Hamiltonians.
//
// Inside the block K = kappa the mode-2 occupation is slaved to the mode-1
// occupation, nu(n) = (kappa - s n) / p. The similarity transforms
//   S = (a2+)^(eta N1),  T = a2^(alpha N1),   eta = alpha = s/p,
// eliminate mode 2 and leave an operator in a1, a1+ and diagonal functions of
// nu. In the Bargmann realization a1 = d/dx, a1+ = x it acts on the monomials
// x^n with n restricted to the physical degrees {n : nu(n) in N}.
//
// The reduced block in the monomial basis is D^-1 M D, M the Fock block and
// D = diag(sqrt(n1! n2!)); the S-route produces exactly this matrix, the
// T-route a further diagonal similarity diag(nu!) of it.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "qesboson/fock_oracle.hpp"
#include "qesboson/op_algebra.hpp"

namespace qesb {

enum class TransformVariant { S, T };
enum class Route { S, T, MatrixElement };
enum class SlavedForm { FallingFactorial, PaperLiteralPower };
enum class SlavedAt { Input, Output };
enum class RecurrenceMode { Corrected, PaperLiteral };

const char* to_string(Route r);
const char* to_string(RecurrenceMode m);

/// Coefficients (c1, c2) of the transformed charge c1 N1 + c2 N2.
struct ChargeCoefficients {
  Rational n1;
  Rational n2;
  friend bool operator==(const ChargeCoefficients&, const ChargeCoefficients&) = default;
};

/// S K S^-1 = (s - p eta) N1 + p N2;  T K T^-1 = (s + p eta) N1 + p N2.
ChargeCoefficients transformed_charge(const ConservedCharge& charge, const Rational& eta,
                                      TransformVariant variant);

/// coeff * (a1+)^m1 (a1)^m2 * factor(nu), nu the slaved occupation of the
/// input (S-route) or output (T-route) degree.
struct ReducedTerm {
  unsigned m1 = 0;
  unsigned m2 = 0;
  QComplex coeff;
  QPolynomial slaved_factor;
  SlavedAt evaluated_at = SlavedAt::Input;
};

struct ReducedOperator {
  ConservedCharge charge{1, 1};
  Route variant = Route::S;
  SlavedForm form = SlavedForm::FallingFactorial;
  std::vector<ReducedTerm> terms;

  /// Exponent of the transform, eta = alpha = s/p.
  Rational eta() const { return Rational(charge.s(), charge.p()); }
};

/// Throws NonConservingHamiltonian; UnsupportedTermShape for a term with
/// m3 > 0, m4 > 0 and m3 != m4.
ReducedOperator reduce_via_S(const OperatorPolynomial& h, const ConservedCharge& charge,
                             SlavedForm form = SlavedForm::FallingFactorial);
ReducedOperator reduce_via_T(const OperatorPolynomial& h, const ConservedCharge& charge,
                             SlavedForm form = SlavedForm::FallingFactorial);

/// (kappa - s n) / p when it is a non-negative integer.
std::optional<std::int64_t> slaved_occupation(const ConservedCharge& charge, std::int64_t kappa,
                                              std::int64_t degree);

/// {n >= 0 : s n <= kappa, p | (kappa - s n)}, ascending.
std::vector<unsigned> physical_degrees(const ConservedCharge& charge, std::int64_t kappa);

using QMatrix = std::vector<std::vector<QComplex>>;
ComplexMatrix to_complex_matrix(const QMatrix& m);

struct ReducedBlock {
  std::int64_t kappa = 0;
  std::vector<unsigned> degrees;
  Route route = Route::S;
  QMatrix exact;         // exact[row][col], rows/cols follow `degrees`
  ComplexMatrix matrix;  // floating copy of `exact`
};

ReducedBlock reduced_block_matrix(const ReducedOperator& op, std::int64_t kappa);

/// Uses the S-route when every term admits it and the matrix-element route
/// (exact D-conjugation of the Fock block) otherwise, unless `route` is given.
ReducedBlock reduced_block_matrix(const OperatorPolynomial& h, const ConservedCharge& charge,
                                  std::int64_t kappa, std::optional<Route> route = std::nullopt);

/// Physical-sector dimension.
std::size_t termination_degree(const OperatorPolynomial& h, const ConservedCharge& charge,
                               std::int64_t kappa);

/// Energy polynomials P_0 = 1, P_1, ..., P_{d-1} and the terminating P_d
/// whose roots are the block spectrum. P_m is indexed by the mode-2
/// occupation of the m-th Fock basis state, i.e. the power of z in
/// phi(z) = sum P_m z^m.
struct EnergyPolynomialTable {
  std::int64_t kappa = 0;
  RecurrenceMode mode = RecurrenceMode::Corrected;
  std::vector<QPolynomial> polys;
  QPolynomial termination;
  std::size_t termination_degree = 0;
  /// recurrence[m][j]: coefficient of P_j in the m-th relation
  ///   sum_j recurrence[m][j] P_j(E) = E P_m(E).
  QMatrix recurrence;
};

/// Throws BandStructureUnsupported unless the recurrence couples P_{m+1}
/// through a nonzero superdiagonal and nothing further right.
EnergyPolynomialTable energy_polynomial_table(const OperatorPolynomial& h,
                                              const ConservedCharge& charge, std::int64_t kappa,
                                              RecurrenceMode mode = RecurrenceMode::Corrected);

/// Eigenvalues of the recurrence matrix, sorted.
std::vector<cdouble> recurrence_spectrum(const EnergyPolynomialTable& table);

/// Roots via the companion matrix; fine for low degrees only.
std::vector<cdouble> polynomial_roots(const QPolynomial& p);

SpectrumReport reduced_spectrum(const ReducedBlock& block, const SpectrumOptions& options = {});

SpectrumReport qes_spectrum(const OperatorPolynomial& h, const ConservedCharge& charge,
                            std::int64_t kappa, const SpectrumOptions& options = {});

struct FockAmplitude {
  FockState state;
  cdouble amplitude;
};

/// Maps monomial-basis coefficients c(n) to unit-norm Fock amplitudes
/// A(n1, n2) = c(n1) sqrt(n1! n2!) / norm, ordered like enumerate_block.
/// Throws DegreeOutsidePhysicalSector.
std::vector<FockAmplitude> eigenvector_to_fock(const std::map<unsigned, cdouble>& coeffs,
                                               const ConservedCharge& charge, std::int64_t kappa);

/// Second-order ODE  d2(z) phi'' + d1(z) phi' + (d0(z) - E) phi = 0  obtained
/// from the SHG Hamiltonian with psi = x1^k phi(x2 / x1^2).
struct ODECoefficients {
  QPolynomial d2;
  QPolynomial d1;
  QPolynomial d0;
  RecurrenceMode mode = RecurrenceMode::Corrected;
};

ODECoefficients shg_ode(const QComplex& omega1, const QComplex& omega2, const QComplex& kappa,
                        const QComplex& kappa_bar, unsigned k,
                        RecurrenceMode mode = RecurrenceMode::Corrected);

/// Collects powers of z for phi = sum_{j<cols} P_j z^j: entry [m][j] is the
/// coefficient of P_j in the z^m equation (E excluded), m < rows.
QMatrix ode_recurrence(const ODECoefficients& ode, std::size_t rows, std::size_t cols);

}  // namespace qesb
