#include "qesboson/qes_reduction.hpp"

#include <algorithm>
#include <cmath>

#include "qesboson/errors.hpp"

namespace qesb {

const char* to_string(Route r) {
  switch (r) {
    case Route::S: return "S";
    case Route::T: return "T";
    case Route::MatrixElement: return "matrix-element";
  }
  return "?";
}

const char* to_string(RecurrenceMode m) {
  return m == RecurrenceMode::Corrected ? "corrected" : "paper-literal";
}

ChargeCoefficients transformed_charge(const ConservedCharge& charge, const Rational& eta,
                                      TransformVariant variant) {
  Rational s(charge.s());
  Rational p(charge.p());
  Rational n1 = variant == TransformVariant::S ? Rational(s - p * eta) : Rational(s + p * eta);
  n1.canonicalize();
  return {n1, p};
}

namespace {

void require_conserving(const OperatorPolynomial& h, const ConservedCharge& charge) {
  if (!conserves(h, charge))
    throw NonConservingHamiltonian("Hamiltonian does not commute with K = " +
                                   std::to_string(charge.s()) + " N1 + " +
                                   std::to_string(charge.p()) + " N2");
}

void require_shape(const Exponents& e) {
  if (e.m3 > 0 && e.m4 > 0 && e.m3 != e.m4)
    throw UnsupportedTermShape("term with mode-2 exponents (" + std::to_string(e.m3) + "," +
                               std::to_string(e.m4) +
                               ") is neither pure raising, pure lowering nor number-diagonal");
}

QPolynomial slaved_polynomial(unsigned order, SlavedForm form) {
  return form == SlavedForm::FallingFactorial ? QPolynomial::falling_factorial(order)
                                              : QPolynomial::power(order);
}

ReducedOperator reduce(const OperatorPolynomial& h, const ConservedCharge& charge, Route route,
                       SlavedForm form) {
  require_conserving(h, charge);
  ReducedOperator out;
  out.charge = charge;
  out.variant = route;
  out.form = form;
  for (const auto& [e, c] : h.terms()) {
    require_shape(e);
    ReducedTerm t;
    t.m1 = e.m1;
    t.m2 = e.m2;
    t.coeff = c;
    if (route == Route::S) {
      // S a2 S^-1 leaves the a2 factors acting on the slaved input occupation.
      t.slaved_factor = slaved_polynomial(e.m4, form);
      t.evaluated_at = SlavedAt::Input;
    } else {
      // T a2+ T^-1 does the same for raising factors, on the output side.
      t.slaved_factor = slaved_polynomial(e.m3, form);
      t.evaluated_at = SlavedAt::Output;
    }
    out.terms.push_back(std::move(t));
  }
  return out;
}

}  // namespace

ReducedOperator reduce_via_S(const OperatorPolynomial& h, const ConservedCharge& charge,
                             SlavedForm form) {
  return reduce(h, charge, Route::S, form);
}

ReducedOperator reduce_via_T(const OperatorPolynomial& h, const ConservedCharge& charge,
                             SlavedForm form) {
  return reduce(h, charge, Route::T, form);
}

std::optional<std::int64_t> slaved_occupation(const ConservedCharge& charge, std::int64_t kappa,
                                              std::int64_t degree) {
  if (degree < 0) return std::nullopt;
  std::int64_t rest = kappa - charge.s() * degree;
  if (rest < 0 || rest % charge.p() != 0) return std::nullopt;
  return rest / charge.p();
}

std::vector<unsigned> physical_degrees(const ConservedCharge& charge, std::int64_t kappa) {
  std::vector<unsigned> out;
  for (std::int64_t n = 0; charge.s() * n <= kappa; ++n)
    if (slaved_occupation(charge, kappa, n)) out.push_back(static_cast<unsigned>(n));
  return out;
}

ComplexMatrix to_complex_matrix(const QMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  ComplexMatrix out(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) out(r, c) = m[r][c].to_complex();
  return out;
}

namespace {

std::optional<std::size_t> index_of(const std::vector<unsigned>& degrees, std::int64_t n) {
  if (n < 0) return std::nullopt;
  auto it = std::lower_bound(degrees.begin(), degrees.end(), static_cast<unsigned>(n));
  if (it == degrees.end() || *it != static_cast<unsigned>(n)) return std::nullopt;
  return static_cast<std::size_t>(it - degrees.begin());
}

QMatrix zero_matrix(std::size_t n) { return QMatrix(n, std::vector<QComplex>(n)); }

ReducedBlock matrix_element_block(const OperatorPolynomial& h, const ConservedCharge& charge,
                                  std::int64_t kappa) {
  require_conserving(h, charge);
  ReducedBlock block;
  block.kappa = kappa;
  block.route = Route::MatrixElement;
  block.degrees = physical_degrees(charge, kappa);
  const std::size_t d = block.degrees.size();
  std::vector<FockState> basis;
  for (unsigned n : block.degrees)
    basis.push_back({n, static_cast<unsigned>(*slaved_occupation(charge, kappa, n))});
  ExactMatrix fock = exact_block_matrix(h, basis);
  std::vector<Integer> weight;  // n1! n2!
  for (const auto& s : basis) weight.push_back(factorial(s.n1) * factorial(s.n2));
  block.exact = zero_matrix(d);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      if (fock[r][c].is_zero()) continue;
      // (D^-1 M D)_rc = M_rc sqrt(w_c / w_r) = M_rc sqrt(w_c w_r) / w_r
      ExactAmplitude v = fock[r][c];
      v.scale_by_sqrt(weight[c] * weight[r]);
      v *= QComplex(Rational(Integer(1), weight[r]));
      auto q = v.as_rational();
      if (!q) throw NumericalFailure("monomial-basis entry is not rational", std::nan(""));
      block.exact[r][c] = *q;
    }
  }
  block.matrix = to_complex_matrix(block.exact);
  return block;
}

bool route_admissible(const OperatorPolynomial& h) {
  return std::all_of(h.terms().begin(), h.terms().end(), [](const auto& kv) {
    const Exponents& e = kv.first;
    return !(e.m3 > 0 && e.m4 > 0 && e.m3 != e.m4);
  });
}

}  // namespace

ReducedBlock reduced_block_matrix(const ReducedOperator& op, std::int64_t kappa) {
  ReducedBlock block;
  block.kappa = kappa;
  block.route = op.variant;
  block.degrees = physical_degrees(op.charge, kappa);
  const std::size_t d = block.degrees.size();
  block.exact = zero_matrix(d);
  for (std::size_t col = 0; col < d; ++col) {
    const unsigned n = block.degrees[col];
    const std::int64_t nu_in = *slaved_occupation(op.charge, kappa, n);
    for (const auto& t : op.terms) {
      if (t.m2 > n) continue;
      const std::int64_t out_degree = static_cast<std::int64_t>(n) - t.m2 + t.m1;
      auto row = index_of(block.degrees, out_degree);
      auto nu_out = slaved_occupation(op.charge, kappa, out_degree);
      std::optional<std::int64_t> nu = t.evaluated_at == SlavedAt::Input
                                           ? std::optional<std::int64_t>(nu_in)
                                           : nu_out;
      if (!nu) continue;  // output leaves the sector; its falling factorial vanishes
      QComplex value = t.coeff * QComplex(Rational(falling_factorial(n, t.m2))) *
                       t.slaved_factor(QComplex(static_cast<long>(*nu)));
      if (value.is_zero()) continue;
      if (!row) {
        if (op.form == SlavedForm::PaperLiteralPower) continue;
        throw BlockClosureViolation("reduced operator leaves the physical sector at degree " +
                                    std::to_string(out_degree));
      }
      block.exact[*row][col] += value;
    }
  }
  block.matrix = to_complex_matrix(block.exact);
  return block;
}

ReducedBlock reduced_block_matrix(const OperatorPolynomial& h, const ConservedCharge& charge,
                                  std::int64_t kappa, std::optional<Route> route) {
  Route chosen = route.value_or(route_admissible(h) ? Route::S : Route::MatrixElement);
  switch (chosen) {
    case Route::S: return reduced_block_matrix(reduce_via_S(h, charge), kappa);
    case Route::T: return reduced_block_matrix(reduce_via_T(h, charge), kappa);
    case Route::MatrixElement: return matrix_element_block(h, charge, kappa);
  }
  throw Error("unknown route");
}

std::size_t termination_degree(const OperatorPolynomial& h, const ConservedCharge& charge,
                               std::int64_t kappa) {
  require_conserving(h, charge);
  return enumerate_block(charge, kappa).size();
}

EnergyPolynomialTable energy_polynomial_table(const OperatorPolynomial& h,
                                              const ConservedCharge& charge, std::int64_t kappa,
                                              RecurrenceMode mode) {
  ReducedBlock block = reduced_block_matrix(h, charge, kappa);
  const std::size_t d = block.degrees.size();
  EnergyPolynomialTable table;
  table.kappa = kappa;
  table.mode = mode;
  table.termination_degree = d;

  // Fock order (ascending n2) is descending degree; the P_m obey the
  // transposed relations of the wavefunction coefficients.
  auto at = [d](std::size_t m) { return d - 1 - m; };
  table.recurrence = zero_matrix(d);
  for (std::size_t m = 0; m < d; ++m)
    for (std::size_t j = 0; j < d; ++j) table.recurrence[m][j] = block.exact[at(j)][at(m)];
  if (mode == RecurrenceMode::PaperLiteral) {
    QComplex omega2 = h.coeff({0, 0, 1, 1});
    for (std::size_t m = 0; m < d; ++m) table.recurrence[m][m] += omega2;
  }

  const QMatrix& c = table.recurrence;
  for (std::size_t m = 0; m < d; ++m) {
    for (std::size_t j = m + 2; j < d; ++j)
      if (!c[m][j].is_zero())
        throw BandStructureUnsupported("relation " + std::to_string(m) + " couples P_" +
                                       std::to_string(j) + "; no scalar recurrence");
    if (m + 1 < d && c[m][m + 1].is_zero())
      throw BandStructureUnsupported("vanishing superdiagonal at relation " + std::to_string(m));
  }

  const QPolynomial e = QPolynomial::power(1);
  if (d == 0) {
    table.termination = QPolynomial::constant(1);
    return table;
  }
  table.polys.push_back(QPolynomial::constant(1));
  for (std::size_t m = 0; m < d; ++m) {
    QPolynomial next = (e - QPolynomial::constant(c[m][m])) * table.polys[m];
    for (std::size_t j = 0; j < m; ++j) next -= table.polys[j] * c[m][j];
    if (m + 1 < d) {
      table.polys.push_back(next * (QComplex(1) / c[m][m + 1]));
    } else {
      table.termination = std::move(next);
    }
  }
  return table;
}

std::vector<cdouble> recurrence_spectrum(const EnergyPolynomialTable& table) {
  return solve_general(to_complex_matrix(table.recurrence)).values;
}

std::vector<cdouble> polynomial_roots(const QPolynomial& p) {
  const int n = p.degree();
  if (n <= 0) return {};
  ComplexMatrix companion = ComplexMatrix::Zero(n, n);
  const cdouble lead = p.leading().to_complex();
  for (int i = 0; i < n; ++i) {
    companion(i, n - 1) = -p.coeff(static_cast<std::size_t>(i)).to_complex() / lead;
    if (i > 0) companion(i, i - 1) = 1.0;
  }
  return solve_general(companion).values;
}

SpectrumReport reduced_spectrum(const ReducedBlock& block, const SpectrumOptions& options) {
  SpectrumReport report;
  report.kappa = block.kappa;
  report.dimension = block.degrees.size();
  report.method = std::string("reduced-") + to_string(block.route);
  if (report.dimension == 0) return report;
  EigenPairs pairs = solve_general(block.matrix);
  report.max_residual = max_residual(block.matrix, pairs);
  double scale = std::max(1.0, block.matrix.norm());
  if (report.max_residual > options.residual_tol * scale)
    throw NumericalFailure("reduced eigen-residual " + std::to_string(report.max_residual) +
                               " exceeds tolerance",
                           report.max_residual);
  report.eigenvalues = std::move(pairs.values);
  report.eigenvectors = std::move(pairs.vectors);
  return report;
}

SpectrumReport qes_spectrum(const OperatorPolynomial& h, const ConservedCharge& charge,
                            std::int64_t kappa, const SpectrumOptions& options) {
  return reduced_spectrum(reduced_block_matrix(h, charge, kappa), options);
}

std::vector<FockAmplitude> eigenvector_to_fock(const std::map<unsigned, cdouble>& coeffs,
                                               const ConservedCharge& charge, std::int64_t kappa) {
  for (const auto& [n, c] : coeffs)
    if (!slaved_occupation(charge, kappa, n))
      throw DegreeOutsidePhysicalSector("degree " + std::to_string(n) +
                                        " is not in the physical sector of kappa=" +
                                        std::to_string(kappa));
  std::vector<FockState> basis = enumerate_block(charge, kappa);
  std::vector<double> log_weight;
  double top = -INFINITY;
  for (const auto& s : basis) {
    double w = 0.5 * (std::lgamma(s.n1 + 1.0) + std::lgamma(s.n2 + 1.0));
    log_weight.push_back(w);
    if (coeffs.count(s.n1)) top = std::max(top, w);
  }
  std::vector<FockAmplitude> out;
  double norm2 = 0.0;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    auto it = coeffs.find(basis[j].n1);
    cdouble a = it == coeffs.end() ? cdouble(0.0) : it->second * std::exp(log_weight[j] - top);
    norm2 += std::norm(a);
    out.push_back({basis[j], a});
  }
  if (norm2 == 0.0) throw ZeroVector("eigenvector_to_fock: zero coefficient vector");
  const double norm = std::sqrt(norm2);
  for (auto& fa : out) fa.amplitude /= norm;
  return out;
}

ODECoefficients shg_ode(const QComplex& omega1, const QComplex& omega2, const QComplex& kappa,
                        const QComplex& kappa_bar, unsigned k, RecurrenceMode mode) {
  const QComplex kk(static_cast<long>(k));
  ODECoefficients ode;
  ode.mode = mode;
  ode.d2 = QPolynomial({0, 0, 0, QComplex(4) * kappa_bar});
  ode.d1 = QPolynomial({kappa, omega2 - QComplex(2) * omega1,
                        QComplex(2) * kappa_bar * (QComplex(3) - QComplex(2) * kk)});
  QComplex constant = kk * omega1;
  if (mode == RecurrenceMode::PaperLiteral) constant += omega2;
  ode.d0 = QPolynomial({constant, kappa_bar * kk * (kk - QComplex(1))});
  return ode;
}

QMatrix ode_recurrence(const ODECoefficients& ode, std::size_t rows, std::size_t cols) {
  QMatrix q(rows, std::vector<QComplex>(cols));
  for (std::size_t m = 0; m < rows; ++m) {
    for (std::size_t j = 0; j < cols; ++j) {
      const auto mi = static_cast<long>(m);
      const auto ji = static_cast<long>(j);
      QComplex v;
      // z^a phi'' contributes j(j-1) P_j z^(j-2+a), and so on.
      if (long a = mi - ji + 2; a >= 0) v += ode.d2.coeff(a) * QComplex(ji * (ji - 1));
      if (long a = mi - ji + 1; a >= 0) v += ode.d1.coeff(a) * QComplex(ji);
      if (long a = mi - ji; a >= 0) v += ode.d0.coeff(a);
      q[m][j] = v;
    }
  }
  return q;
}

}  // namespace qesb
