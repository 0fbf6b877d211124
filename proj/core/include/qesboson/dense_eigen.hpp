#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace qesb {

using cdouble = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Eigenpairs sorted ascending by (real, imag); column j of `vectors` is a
/// unit eigenvector for values[j].
struct EigenPairs {
  std::vector<cdouble> values;
  ComplexMatrix vectors;
};

/// Less-than on (real, imag).
bool spectral_less(const cdouble& a, const cdouble& b);
void sort_spectrum(std::vector<cdouble>& values);

EigenPairs solve_hermitian(const ComplexMatrix& m);

/// General complex eigensolve. The matrix is first balanced by a radix-2
/// diagonal similarity so that strongly graded matrices (e.g. monomial-basis
/// blocks with factorial scales) keep their eigenvalues well conditioned.
EigenPairs solve_general(const ComplexMatrix& m);

/// Diagonal d with d^-1 m d having comparable row and column norms.
Eigen::VectorXd balancing_scale(const ComplexMatrix& m);

/// ||m v - value v||_2 / ||v||_2. Throws ZeroVector for v = 0.
double eigen_residual(const ComplexMatrix& m, cdouble value, const ComplexVector& v);

/// Largest eigen_residual over all pairs.
double max_residual(const ComplexMatrix& m, const EigenPairs& pairs);

/// Element-wise max |a_i - b_i| of two sorted spectra; infinity when sizes differ.
double max_sorted_deviation(const std::vector<cdouble>& a, const std::vector<cdouble>& b);

}  // namespace qesb
