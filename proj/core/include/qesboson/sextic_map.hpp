#pragma once

// Gauge map from the SHG reduced ODE to a one-dimensional Schrodinger
// operator with a sextic potential, and a finite-difference solver to check it.
//
// With z = -1 / (kb y^2) the ODE operator L (E excluded) becomes
//   L = -d^2/dy^2 - 2 W(y) d/dy + k w1 - k (k - 1) / y^2,
//   W(y) = k / y + (w2 - 2 w1) y / 4 - k kb y^3 / 4,
// and phi = exp(-int W) psi turns it into -d^2/dy^2 + W^2 + W' + const.

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qesboson/errors.hpp"
#include "qesboson/exact.hpp"
#include "qesboson/qes_reduction.hpp"

namespace qesb {

struct SexticParams {
  QComplex omega1;
  QComplex omega2;
  QComplex kappa;
  QComplex kappa_bar;
  long k = 0;
};

/// W(y) = inv_y / y + lin * y + cubic * y^3.
struct Superpotential {
  QComplex inv_y;
  QComplex lin;
  QComplex cubic;

  cdouble operator()(cdouble y) const;
  /// Antiderivative inv_y log y + lin y^2 / 2 + cubic y^4 / 4 (y > 0).
  cdouble integral(double y) const;
};

Superpotential gauge_superpotential(const SexticParams& params);

/// V(y) = c0 + c2 y^2 + c4 y^4 + c6 y^6.
struct SexticPotential {
  QComplex c0;
  QComplex c2;
  QComplex c4;
  QComplex c6;
  SexticParams params;

  cdouble operator()(cdouble y) const;
};

SexticPotential sextic_potential(const SexticParams& params);

/// Sign and normalization freedoms searched when checking the gauge identity.
/// phi = exp(-exponent_sign * int (w_sign W)) psi; Schrodinger operator
/// -kinetic d^2/dy^2 + V; the ODE operator is scaled by `kinetic` so the
/// second-derivative terms agree.
struct GaugeConvention {
  int w_sign = 1;
  int exponent_sign = 1;
  double kinetic = 0.5;
  std::string describe() const;
};

struct ConventionTrial {
  GaugeConvention convention;
  double residual = 0.0;
  /// Fitted constant c with  kinetic L  =  H_sextic + c  on the samples.
  cdouble shift;
};

struct GaugeCheck {
  double residual = 0.0;
  GaugeConvention convention;
  cdouble shift;
  std::vector<ConventionTrial> trials;
};

class ConventionMismatch : public Error {
 public:
  ConventionMismatch(const std::string& what, std::vector<ConventionTrial> trials)
      : Error(what), trials_(std::move(trials)) {}
  const std::vector<ConventionTrial>& trials() const noexcept { return trials_; }

 private:
  std::vector<ConventionTrial> trials_;
};

/// All conventions in the search order used by gauge_identity_residual.
std::vector<GaugeConvention> gauge_conventions();

/// Compares the ODE operator applied to each test polynomial phi(z) at
/// z(y) against the sextic operator applied to psi = exp(+-int W) phi, using
/// 7-point numerical second derivatives of psi. Returns the best convention;
/// throws ConventionMismatch when every convention exceeds `tol`.
GaugeCheck gauge_identity_residual(const SexticParams& params,
                                   std::span<const QPolynomial> test_polys,
                                   std::span<const double> sample_points,
                                   RecurrenceMode mode = RecurrenceMode::Corrected,
                                   double tol = 1e-6);

/// Same with `count` random test polynomials of the given degree.
GaugeCheck gauge_identity_residual(const SexticParams& params, unsigned test_poly_degree,
                                   std::span<const double> sample_points, std::uint64_t seed,
                                   std::size_t count = 5,
                                   RecurrenceMode mode = RecurrenceMode::Corrected,
                                   double tol = 1e-6);

/// 7-point central difference with step h.
cdouble second_derivative(const std::function<cdouble(double)>& f, double y, double h);

/// Lowest `count` eigenvalues of -kinetic psi'' + V psi on [-L, L], Dirichlet
/// ends, `grid_points` interior nodes, second-order central differences.
std::vector<double> fd_spectrum(const std::function<double(double)>& v, double half_width,
                                std::size_t grid_points, std::size_t count,
                                double kinetic = 0.5);

/// Real part of the sextic potential; returns max(5, k + 2) levels.
std::vector<double> fd_spectrum(const SexticPotential& potential, double half_width,
                                std::size_t grid_points, double kinetic = 0.5);

/// Solves on N and 2N nodes; throws GridTooCoarse when any level moves by
/// more than `tol`. Returns the 2N result.
std::vector<double> fd_spectrum_refined(const std::function<double(double)>& v, double half_width,
                                        std::size_t grid_points, std::size_t count, double tol,
                                        double kinetic = 0.5);

/// QES block energies (kappa = k, charge (1, 2)) matched against the FD
/// spectrum of the sextic operator under a convention.
struct FdComparison {
  std::vector<double> qes;
  std::vector<double> fd;
  std::vector<std::size_t> matched;  // fd index per qes level
  double shift = 0.0;                // mean of fd[matched] - qes
  double shift_spread = 0.0;         // max - min of fd[matched] - qes
};

FdComparison compare_fd_with_qes(const SexticParams& params, const GaugeConvention& convention,
                                 double half_width, std::size_t grid_points);

}  // namespace qesb
