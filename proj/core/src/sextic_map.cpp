#include "qesboson/sextic_map.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "qesboson/model_catalog.hpp"

namespace qesb {

cdouble Superpotential::operator()(cdouble y) const {
  return inv_y.to_complex() / y + lin.to_complex() * y + cubic.to_complex() * y * y * y;
}

cdouble Superpotential::integral(double y) const {
  const double y2 = y * y;
  return inv_y.to_complex() * std::log(y) + lin.to_complex() * (y2 / 2.0) +
         cubic.to_complex() * (y2 * y2 / 4.0);
}

Superpotential gauge_superpotential(const SexticParams& p) {
  const QComplex detuning = p.omega2 - QComplex(2) * p.omega1;
  return {QComplex(p.k), detuning * QComplex(Rational(1, 4)),
          -(p.kappa * p.kappa_bar) * QComplex(Rational(1, 4))};
}

cdouble SexticPotential::operator()(cdouble y) const {
  const cdouble y2 = y * y;
  return c0.to_complex() +
         y2 * (c2.to_complex() + y2 * (c4.to_complex() + y2 * c6.to_complex()));
}

SexticPotential sextic_potential(const SexticParams& p) {
  const QComplex k(p.k);
  const QComplex detuning = p.omega2 - QComplex(2) * p.omega1;
  const QComplex coupling = p.kappa * p.kappa_bar;
  SexticPotential v;
  v.params = p;
  v.c0 = ((QComplex(2) * k + QComplex(5)) * p.omega2 - QComplex(2) * p.omega1) *
         QComplex(Rational(1, 4));
  v.c2 = (detuning * detuning - QComplex(4) * coupling * (QComplex(2) * k + QComplex(3))) *
         QComplex(Rational(1, 16));
  v.c4 = -(coupling * detuning) * QComplex(Rational(1, 8));
  v.c6 = coupling * coupling * QComplex(Rational(1, 16));
  return v;
}

std::string GaugeConvention::describe() const {
  std::ostringstream os;
  os << "W sign " << (w_sign > 0 ? '+' : '-') << ", phi = exp(" << (exponent_sign > 0 ? '-' : '+')
     << "int W) psi, kinetic " << (kinetic == 0.5 ? "-1/2 d2" : "-1 d2");
  return os.str();
}

std::vector<GaugeConvention> gauge_conventions() {
  std::vector<GaugeConvention> out;
  for (double kinetic : {0.5, 1.0})
    for (int exponent_sign : {1, -1})
      for (int w_sign : {1, -1}) out.push_back({w_sign, exponent_sign, kinetic});
  return out;
}

cdouble second_derivative(const std::function<cdouble(double)>& f, double y, double h) {
  static constexpr double w[] = {2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0};
  cdouble acc = 0.0;
  for (int j = -3; j <= 3; ++j) acc += w[j + 3] * f(y + j * h);
  return acc / (180.0 * h * h);
}

namespace {

struct Sample {
  cdouble lhs_unscaled;  // (L phi)(z(y)) / g(y) with kinetic = 1
  cdouble psi;
  cdouble psi_dd;
  cdouble potential;
};

ConventionTrial evaluate(const SexticParams& params, const ODECoefficients& ode,
                         const Superpotential& w, const SexticPotential& v,
                         std::span<const QPolynomial> polys, std::span<const double> ys,
                         const GaugeConvention& conv) {
  const cdouble kb = params.kappa_bar.to_complex();
  const double gauge_sign = conv.exponent_sign * conv.w_sign;
  std::vector<Sample> samples;
  for (const auto& phi : polys) {
    const QPolynomial dphi = phi.derivative();
    const QPolynomial ddphi = dphi.derivative();
    auto psi = [&](double y) {
      cdouble z = -1.0 / (kb * y * y);
      return phi(z) * std::exp(gauge_sign * w.integral(y));
    };
    for (double y : ys) {
      cdouble z = -1.0 / (kb * y * y);
      cdouble l_phi = ode.d2(z) * ddphi(z) + ode.d1(z) * dphi(z) + ode.d0(z) * phi(z);
      Sample s;
      s.lhs_unscaled = l_phi * std::exp(gauge_sign * w.integral(y));
      s.psi = psi(y);
      s.psi_dd = second_derivative(psi, y, 1e-3 * std::abs(y));
      s.potential = v(cdouble(y));
      samples.push_back(s);
    }
  }
  // residual_i = kinetic L phi / g - (-kinetic psi'' + V psi), then fit a
  // constant shift c in residual_i ~ c psi_i by weighted least squares.
  std::vector<cdouble> r;
  std::vector<double> scale;
  for (const auto& s : samples) {
    cdouble lhs = conv.kinetic * s.lhs_unscaled;
    cdouble rhs = -conv.kinetic * s.psi_dd + s.potential * s.psi;
    r.push_back(lhs - rhs);
    scale.push_back(std::abs(lhs) + std::abs(conv.kinetic * s.psi_dd) +
                    std::abs(s.potential * s.psi) + std::numeric_limits<double>::min());
  }
  cdouble num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double wgt = 1.0 / (scale[i] * scale[i]);
    num += wgt * std::conj(samples[i].psi) * r[i];
    den += wgt * std::norm(samples[i].psi);
  }
  ConventionTrial trial{conv, 0.0, den > 0 ? num / den : cdouble(0.0)};
  for (std::size_t i = 0; i < samples.size(); ++i)
    trial.residual = std::max(trial.residual, std::abs(r[i] - trial.shift * samples[i].psi) / scale[i]);
  return trial;
}

}  // namespace

GaugeCheck gauge_identity_residual(const SexticParams& params,
                                   std::span<const QPolynomial> test_polys,
                                   std::span<const double> sample_points, RecurrenceMode mode,
                                   double tol) {
  if (params.kappa_bar.is_zero())
    throw Error("gauge map needs kappa_bar != 0 (z = -1/(kb y^2))");
  for (double y : sample_points)
    if (!(y > 0.0)) throw Error("gauge sample points must be positive");
  if (params.k < 0) throw Error("k must be non-negative");
  const ODECoefficients ode = shg_ode(params.omega1, params.omega2, params.kappa,
                                      params.kappa_bar, static_cast<unsigned>(params.k), mode);
  const Superpotential w = gauge_superpotential(params);
  const SexticPotential v = sextic_potential(params);

  GaugeCheck check;
  check.residual = std::numeric_limits<double>::infinity();
  for (const auto& conv : gauge_conventions()) {
    ConventionTrial t = evaluate(params, ode, w, v, test_polys, sample_points, conv);
    check.trials.push_back(t);
    if (t.residual < check.residual) {
      check.residual = t.residual;
      check.convention = t.convention;
      check.shift = t.shift;
    }
  }
  if (!(check.residual <= tol)) {
    std::ostringstream os;
    os << "gauge identity fails under every convention; best residual " << check.residual
       << " (" << check.convention.describe() << ")";
    throw ConventionMismatch(os.str(), check.trials);
  }
  return check;
}

GaugeCheck gauge_identity_residual(const SexticParams& params, unsigned test_poly_degree,
                                   std::span<const double> sample_points, std::uint64_t seed,
                                   std::size_t count, RecurrenceMode mode, double tol) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-8, 8);
  std::uniform_int_distribution<long> den(1, 8);
  std::vector<QPolynomial> polys;
  for (std::size_t j = 0; j < count; ++j) {
    std::vector<QComplex> c;
    for (unsigned d = 0; d <= test_poly_degree; ++d) c.emplace_back(Rational(num(rng), den(rng)));
    c.back() = QComplex(Rational(1 + den(rng), den(rng)));  // keep the stated degree
    polys.emplace_back(std::move(c));
  }
  return gauge_identity_residual(params, polys, sample_points, mode, tol);
}

std::vector<double> fd_spectrum(const std::function<double(double)>& v, double half_width,
                                std::size_t grid_points, std::size_t count, double kinetic) {
  if (grid_points < 3) throw Error("fd_spectrum needs at least 3 grid points");
  if (!(half_width > 0.0)) throw Error("fd_spectrum needs a positive half-width");
  const auto n = static_cast<Eigen::Index>(grid_points);
  const double h = 2.0 * half_width / static_cast<double>(grid_points + 1);
  Eigen::VectorXd diag(n);
  Eigen::VectorXd off = Eigen::VectorXd::Constant(n - 1, -kinetic / (h * h));
  for (Eigen::Index i = 0; i < n; ++i)
    diag[i] = 2.0 * kinetic / (h * h) + v(-half_width + static_cast<double>(i + 1) * h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericalFailure("tridiagonal eigensolver did not converge", std::nan(""));
  std::vector<double> out(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + solver.eigenvalues().size());
  out.resize(std::min(count, out.size()));
  return out;
}

std::vector<double> fd_spectrum(const SexticPotential& potential, double half_width,
                                std::size_t grid_points, double kinetic) {
  const std::size_t count = static_cast<std::size_t>(std::max<long>(5, potential.params.k + 2));
  return fd_spectrum([&](double y) { return potential(cdouble(y)).real(); }, half_width,
                     grid_points, count, kinetic);
}

std::vector<double> fd_spectrum_refined(const std::function<double(double)>& v, double half_width,
                                        std::size_t grid_points, std::size_t count, double tol,
                                        double kinetic) {
  auto coarse = fd_spectrum(v, half_width, grid_points, count, kinetic);
  auto fine = fd_spectrum(v, half_width, 2 * grid_points, count, kinetic);
  double worst = 0.0;
  for (std::size_t j = 0; j < std::min(coarse.size(), fine.size()); ++j)
    worst = std::max(worst, std::abs(coarse[j] - fine[j]));
  if (worst > tol)
    throw GridTooCoarse("grid refinement moved a level by " + std::to_string(worst), worst);
  return fine;
}

FdComparison compare_fd_with_qes(const SexticParams& params, const GaugeConvention& convention,
                                 double half_width, std::size_t grid_points) {
  FdComparison cmp;
  const auto h = build_shg(params.omega1, params.omega2, params.kappa, params.kappa_bar);
  for (const auto& e : qes_spectrum(h, ConservedCharge(1, 2), params.k).eigenvalues)
    cmp.qes.push_back(e.real());
  const SexticPotential v = sextic_potential(params);
  const std::size_t count = static_cast<std::size_t>(std::max<long>(5, params.k + 2)) + cmp.qes.size();
  cmp.fd = fd_spectrum([&](double y) { return v(cdouble(y)).real(); }, half_width, grid_points,
                       count, convention.kinetic);
  if (cmp.qes.empty() || cmp.fd.empty()) return cmp;

  double best_spread = std::numeric_limits<double>::infinity();
  for (std::size_t anchor = 0; anchor < cmp.fd.size(); ++anchor) {
    const double guess = cmp.fd[anchor] - cmp.qes.front();
    std::vector<std::size_t> matched;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double sum = 0.0;
    for (double e : cmp.qes) {
      auto nearest = std::min_element(cmp.fd.begin(), cmp.fd.end(), [&](double a, double b) {
        return std::abs(a - e - guess) < std::abs(b - e - guess);
      });
      double offset = *nearest - e;
      matched.push_back(static_cast<std::size_t>(nearest - cmp.fd.begin()));
      lo = std::min(lo, offset);
      hi = std::max(hi, offset);
      sum += offset;
    }
    if (hi - lo < best_spread) {
      best_spread = hi - lo;
      cmp.matched = matched;
      cmp.shift = sum / static_cast<double>(cmp.qes.size());
      cmp.shift_spread = hi - lo;
    }
  }
  return cmp;
}

}  // namespace qesb
