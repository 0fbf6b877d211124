#pragma once

// Ground-truth spectra from exact Fock-space blocks.
//
// When H commutes with K = s N1 + p N2 (s, p >= 1), each eigenspace of K is
// finite: {(n1, n2) : s n1 + p n2 = kappa}. H restricted to it is a finite
// matrix with no truncation error, so diagonalizing it gives the exact block
// spectrum up to floating-point roundoff. Everything in qes_reduction is
// checked against this.

#include <cstdint>
#include <string>
#include <vector>

#include "qesboson/dense_eigen.hpp"
#include "qesboson/op_algebra.hpp"

namespace qesb {

/// All (n1, n2) >= 0 with s n1 + p n2 = kappa, by increasing n2.
std::vector<FockState> enumerate_block(const ConservedCharge& charge, std::int64_t kappa);

/// Exact matrix entries: entry(row, col) = <basis[row]| h |basis[col]>.
using ExactMatrix = std::vector<std::vector<ExactAmplitude>>;

/// Throws BlockClosureViolation if h leaks out of the span of `basis`.
ExactMatrix exact_block_matrix(const OperatorPolynomial& h, const std::vector<FockState>& basis);

/// Same, converted to floating point once per entry.
ComplexMatrix block_matrix(const OperatorPolynomial& h, const std::vector<FockState>& basis);

struct FockBlock {
  std::int64_t kappa = 0;
  std::vector<FockState> basis;
  ComplexMatrix matrix;
};

FockBlock build_fock_block(const OperatorPolynomial& h, const ConservedCharge& charge,
                           std::int64_t kappa);

struct SpectrumReport {
  std::int64_t kappa = 0;
  std::size_t dimension = 0;
  std::vector<cdouble> eigenvalues;  // ascending by (real, imag)
  ComplexMatrix eigenvectors;        // unit columns aligned with eigenvalues
  std::string method;
  double max_residual = 0.0;
};

struct SpectrumOptions {
  /// NumericalFailure when max_residual > residual_tol * max(1, ||M||_F).
  double residual_tol = 1e-10;
};

/// Hermitian solver when is_hermitian(h) holds exactly, general otherwise.
/// Throws NonConservingHamiltonian, NumericalFailure.
SpectrumReport block_spectrum(const OperatorPolynomial& h, const ConservedCharge& charge,
                              std::int64_t kappa, const SpectrumOptions& options = {});

}  // namespace qesb
