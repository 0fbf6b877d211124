#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qesboson/errors.hpp"
#include "qesboson/fock_oracle.hpp"
#include "qesboson/model_catalog.hpp"
#include "qesboson/qes_reduction.hpp"

namespace qesb {
namespace {

using testing::Rng;

const ConservedCharge kShg(1, 2);
const ConservedCharge kNth3(1, 3);
OperatorPolynomial shg() { return build_shg(1, 2, Rational(1, 2), Rational(1, 2)); }
OperatorPolynomial nth3() { return build_nth_harmonic(1, 2, Rational(1, 2), Rational(1, 2), 3); }

const double kRoot2 = std::sqrt(2.0);

std::vector<cdouble> values(const ComplexMatrix& m) { return solve_general(m).values; }

QMatrix transpose_reversed(const QMatrix& m) {
  const std::size_t d = m.size();
  QMatrix t(d, std::vector<QComplex>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) t[i][j] = m[d - 1 - j][d - 1 - i];
  return t;
}

const ReducedTerm* find_term(const ReducedOperator& op, unsigned m1, unsigned m2) {
  for (const auto& t : op.terms)
    if (t.m1 == m1 && t.m2 == m2) return &t;
  return nullptr;
}

TEST(TransformedCharge, Examples) {
  EXPECT_EQ(transformed_charge(kShg, Rational(1, 2), TransformVariant::S),
            (ChargeCoefficients{0, 2}));
  EXPECT_EQ(transformed_charge(kShg, Rational(-1, 2), TransformVariant::T),
            (ChargeCoefficients{0, 2}));
  EXPECT_EQ(transformed_charge(ConservedCharge(2, 3), 0, TransformVariant::S),
            (ChargeCoefficients{2, 3}));
}

TEST(ReduceViaS, ShgTerms) {
  const auto op = reduce_via_S(shg(), kShg);
  EXPECT_EQ(op.eta(), Rational(1, 2));
  ASSERT_EQ(op.terms.size(), 4u);
  const auto* n1 = find_term(op, 1, 1);
  const auto* raise = find_term(op, 2, 0);
  const auto* lower = find_term(op, 0, 2);
  ASSERT_TRUE(n1 && raise && lower);
  EXPECT_EQ(n1->coeff * n1->slaved_factor(QComplex(7)), QComplex(1));
  EXPECT_EQ(raise->coeff * raise->slaved_factor(QComplex(7)), QComplex(Rational(7, 2)));
  EXPECT_EQ(lower->coeff * lower->slaved_factor(QComplex(7)), QComplex(Rational(1, 2)));
  bool found_n2 = false;
  for (const auto& t : op.terms)
    if (t.m1 == 0 && t.m2 == 0) {
      found_n2 = true;
      EXPECT_EQ(t.slaved_factor * t.coeff, QPolynomial::power(1) * QComplex(2));
    }
  EXPECT_TRUE(found_n2);
}

TEST(ReduceViaS, ModeOneOnly) {
  const auto op = reduce_via_S(OperatorPolynomial::term(3, 1, 1, 0, 0), kShg);
  ASSERT_EQ(op.terms.size(), 1u);
  EXPECT_EQ(op.terms[0].m1, 1u);
  EXPECT_EQ(op.terms[0].m2, 1u);
  EXPECT_EQ(op.terms[0].slaved_factor * op.terms[0].coeff, QPolynomial::constant(3));
}

TEST(ReduceViaST, NumberOperatorOfModeTwo) {
  for (const auto& op : {reduce_via_S(OperatorPolynomial::term(2, 0, 0, 1, 1), kShg),
                         reduce_via_T(OperatorPolynomial::term(2, 0, 0, 1, 1), kShg)}) {
    ASSERT_EQ(op.terms.size(), 1u);
    EXPECT_EQ(op.terms[0].slaved_factor * op.terms[0].coeff, QPolynomial::power(1) * QComplex(2));
  }
}

TEST(ReduceViaS, RejectsMixedModeTwoTerms) {
  // s(0 - 2) + p(2 - 1) = 0 with both a2+ and a2 present.
  const auto h = OperatorPolynomial::term(1, 0, 2, 2, 1) + OperatorPolynomial::term(1, 2, 0, 1, 2);
  ASSERT_TRUE(conserves(h, kShg));
  EXPECT_THROW(reduce_via_S(h, kShg), UnsupportedTermShape);
  EXPECT_THROW(reduce_via_T(h, kShg), UnsupportedTermShape);
  // The automatic route falls back to D-conjugation and stays isospectral.
  for (std::int64_t kappa = 0; kappa <= 12; ++kappa) {
    const auto block = reduced_block_matrix(h, kShg, kappa);
    EXPECT_EQ(block.route, Route::MatrixElement);
    EXPECT_LE(max_sorted_deviation(values(block.matrix), block_spectrum(h, kShg, kappa).eigenvalues),
              1e-9);
  }
}

TEST(ReduceViaS, RejectsNonConserving) {
  EXPECT_THROW(reduce_via_S(shg(), ConservedCharge(1, 1)), NonConservingHamiltonian);
  EXPECT_THROW(reduced_block_matrix(shg(), ConservedCharge(1, 1), 2), NonConservingHamiltonian);
}

TEST(ReducedBlock, ShgKappa2) {
  const auto b = reduced_block_matrix(shg(), kShg, 2);
  EXPECT_EQ(b.degrees, (std::vector<unsigned>{0, 2}));
  EXPECT_EQ(b.route, Route::S);
  const QMatrix want = {{2, 1}, {Rational(1, 2), 2}};
  EXPECT_EQ(b.exact, want);
  const auto ev = values(b.matrix);
  EXPECT_NEAR(ev[0].real(), 2 - kRoot2 / 2, 1e-12);
  EXPECT_NEAR(ev[1].real(), 2 + kRoot2 / 2, 1e-12);
}

TEST(ReducedBlock, ShgKappa4AndVacuum) {
  const auto b = reduced_block_matrix(shg(), kShg, 4);
  EXPECT_EQ(b.degrees, (std::vector<unsigned>{0, 2, 4}));
  const auto ev = values(b.matrix);
  ASSERT_EQ(ev.size(), 3u);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(ev[i].real(), 2.0 + 2 * i, 1e-12);
  const auto vac = reduced_block_matrix(shg(), kShg, 0);
  EXPECT_EQ(vac.degrees, (std::vector<unsigned>{0}));
  EXPECT_EQ(vac.exact, (QMatrix{{0}}));
}

TEST(PhysicalDegrees, MatchFockBasis) {
  for (long s = 1; s <= 3; ++s)
    for (long p = 1; p <= 4; ++p) {
      const ConservedCharge q(s, p);
      for (std::int64_t kappa = 0; kappa <= 30; ++kappa) {
        const auto degrees = physical_degrees(q, kappa);
        auto basis = enumerate_block(q, kappa);
        ASSERT_EQ(degrees.size(), basis.size());
        std::reverse(basis.begin(), basis.end());
        for (std::size_t i = 0; i < degrees.size(); ++i) EXPECT_EQ(degrees[i], basis[i].n1);
      }
    }
}

TEST(TerminationDegree, Examples) {
  EXPECT_EQ(termination_degree(shg(), kShg, 2), 2u);
  EXPECT_EQ(termination_degree(shg(), kShg, 5), 3u);
  EXPECT_EQ(termination_degree(nth3(), kNth3, 3), 2u);
  for (std::int64_t kappa = 0; kappa <= 40; ++kappa)
    EXPECT_EQ(termination_degree(shg(), kShg, kappa), static_cast<std::size_t>(kappa / 2 + 1));
}

TEST(EnergyPolynomials, ShgKappa2Corrected) {
  const auto t = energy_polynomial_table(shg(), kShg, 2);
  ASSERT_EQ(t.polys.size(), 2u);
  EXPECT_EQ(t.polys[0], QPolynomial::constant(1));
  EXPECT_EQ(t.polys[1], QPolynomial({-2, 1}));
  // (E - 2)^2 - 1/2
  EXPECT_EQ(t.termination, QPolynomial({Rational(7, 2), -4, 1}));
  EXPECT_EQ(t.termination_degree, 2u);
  const auto roots = polynomial_roots(t.termination);
  EXPECT_NEAR(roots[0].real(), 2 - kRoot2 / 2, 1e-12);
  EXPECT_NEAR(roots[1].real(), 2 + kRoot2 / 2, 1e-12);
}

TEST(EnergyPolynomials, ShgKappa2PaperLiteral) {
  const auto t = energy_polynomial_table(shg(), kShg, 2, RecurrenceMode::PaperLiteral);
  const auto roots = recurrence_spectrum(t);
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_NEAR(roots[0].real(), 4 - kRoot2 / 2, 1e-12);
  EXPECT_NEAR(roots[1].real(), 4 + kRoot2 / 2, 1e-12);
}

TEST(EnergyPolynomials, DimensionOneIsLinear) {
  for (std::int64_t kappa : {0, 1}) {
    const auto t = energy_polynomial_table(shg(), kShg, kappa);
    EXPECT_EQ(t.termination.degree(), 1);
    const auto b = reduced_block_matrix(shg(), kShg, kappa);
    EXPECT_EQ(t.termination, QPolynomial::linear_factor(b.exact[0][0]));
  }
}

TEST(EnergyPolynomials, DegreesAndRootsAcrossBlocks) {
  for (std::int64_t kappa = 0; kappa <= 20; ++kappa) {
    const auto t = energy_polynomial_table(shg(), kShg, kappa);
    for (std::size_t m = 0; m < t.polys.size(); ++m) EXPECT_EQ(t.polys[m].degree(), static_cast<int>(m));
    EXPECT_EQ(t.termination.degree(), static_cast<int>(t.termination_degree));
    // Termination polynomial vanishes on the spectrum (checked as the
    // characteristic polynomial of the recurrence, evaluated numerically).
    const auto oracle = block_spectrum(shg(), kShg, kappa).eigenvalues;
    EXPECT_LE(max_sorted_deviation(recurrence_spectrum(t), oracle), 1e-9);
    if (kappa <= 10) {
      EXPECT_LE(max_sorted_deviation(polynomial_roots(t.termination), oracle), 1e-6);
    }
  }
}

TEST(EnergyPolynomials, RejectsUnsupportedBand) {
  // A diagonal model couples no neighbours: the recurrence cannot advance.
  const auto h = OperatorPolynomial::term(1, 1, 1, 0, 0) + OperatorPolynomial::term(1, 0, 0, 1, 1);
  EXPECT_THROW(energy_polynomial_table(h, kShg, 4), BandStructureUnsupported);
}

TEST(QesSpectrum, Examples) {
  const auto r2 = qes_spectrum(shg(), kShg, 2);
  EXPECT_NEAR(r2.eigenvalues[0].real(), 2 - kRoot2 / 2, 1e-12);
  EXPECT_NEAR(r2.eigenvalues[1].real(), 2 + kRoot2 / 2, 1e-12);
  const auto r4 = qes_spectrum(shg(), kShg, 4);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(r4.eigenvalues[i].real(), 2.0 + 2 * i, 1e-12);
  const auto r1 = qes_spectrum(shg(), kShg, 1);
  ASSERT_EQ(r1.eigenvalues.size(), 1u);
  EXPECT_NEAR(r1.eigenvalues[0].real(), 1.0, 1e-15);
}

TEST(QesSpectrum, Nth3KappaThreeIsTwoByTwo) {
  const auto b = reduced_block_matrix(nth3(), kNth3, 3);
  EXPECT_EQ(b.degrees.size(), 2u);
  const auto r = qes_spectrum(nth3(), kNth3, 3);
  const double mid = (3.0 + 2.0) / 2, rad = std::sqrt(0.25 + 6 * 0.25);
  EXPECT_NEAR(r.eigenvalues[0].real(), mid - rad, 1e-12);
  EXPECT_NEAR(r.eigenvalues[1].real(), mid + rad, 1e-12);
}

TEST(EigenvectorToFock, Examples) {
  const double r = kRoot2 / 2;
  auto amps = eigenvector_to_fock({{0, 1.0}, {2, r}}, kShg, 2);
  ASSERT_EQ(amps.size(), 2u);
  EXPECT_EQ(amps[0].state, (FockState{2, 0}));
  EXPECT_NEAR(std::abs(amps[0].amplitude), r, 1e-7);
  EXPECT_NEAR(std::abs(amps[1].amplitude), r, 1e-7);

  amps = eigenvector_to_fock({{0, 1.0}, {2, 2.0}, {4, 0.5}}, kShg, 4);
  const double norm = std::sqrt(3.0 + 4.0 + 1.0);
  ASSERT_EQ(amps.size(), 3u);
  EXPECT_NEAR(amps[0].amplitude.real(), std::sqrt(3.0) / norm, 1e-12);  // (4,0)
  EXPECT_NEAR(amps[1].amplitude.real(), 2.0 / norm, 1e-12);             // (2,1)
  EXPECT_NEAR(amps[2].amplitude.real(), 1.0 / norm, 1e-12);             // (0,2)

  amps = eigenvector_to_fock({{1, 0.3}}, kShg, 1);
  ASSERT_EQ(amps.size(), 1u);
  EXPECT_NEAR(std::abs(amps[0].amplitude), 1.0, 1e-15);

  EXPECT_THROW(eigenvector_to_fock({{1, 1.0}}, kShg, 2), DegreeOutsidePhysicalSector);
}

TEST(ShgOde, Coefficients) {
  const auto ode = shg_ode(1, 2, Rational(1, 2), Rational(1, 2), 2);
  EXPECT_EQ(ode.d2, QPolynomial({0, 0, 0, 2}));
  EXPECT_EQ(ode.d1, QPolynomial({Rational(1, 2), 0, -1}));
  EXPECT_EQ(ode.d0, QPolynomial({2, 1}));
  const auto lit = shg_ode(1, 2, Rational(1, 2), Rational(1, 2), 2, RecurrenceMode::PaperLiteral);
  EXPECT_EQ(lit.d0, QPolynomial({4, 1}));
  const auto free = shg_ode(1, 2, Rational(1, 2), 0, 2);
  EXPECT_TRUE(free.d2.is_zero());
}

// Property: the ODE's power-of-z relations are the transpose of the table's
// recurrence, in both modes, and give the oracle spectrum (shifted by w2 in
// the literal mode).
TEST(Property, OdeRecurrenceIsTransposedTable) {
  for (auto mode : {RecurrenceMode::Corrected, RecurrenceMode::PaperLiteral}) {
    for (std::int64_t kappa = 0; kappa <= 20; kappa += 2) {
      const auto ode = shg_ode(1, 2, Rational(1, 2), Rational(1, 2), static_cast<unsigned>(kappa), mode);
      const auto t = energy_polynomial_table(shg(), kShg, kappa, mode);
      const std::size_t d = t.termination_degree;
      const QMatrix rec = ode_recurrence(ode, d, d);
      for (std::size_t m = 0; m < d; ++m)
        for (std::size_t j = 0; j < d; ++j) EXPECT_EQ(rec[m][j], t.recurrence[j][m]) << kappa;
    }
  }
}

// Property: the table recurrence is the reduced matrix transposed (reindexed
// from degree order to mode-2 occupation order).
TEST(Property, TransposeDuality) {
  for (const auto& [h, q] : {std::pair{shg(), kShg}, std::pair{nth3(), kNth3}}) {
    for (std::int64_t kappa = 0; kappa <= 30; ++kappa) {
      const auto b = reduced_block_matrix(h, q, kappa);
      const auto t = energy_polynomial_table(h, q, kappa);
      EXPECT_EQ(t.recurrence, transpose_reversed(b.exact)) << kappa;
      EXPECT_LE(max_sorted_deviation(recurrence_spectrum(t), values(b.matrix)), 1e-9);
    }
  }
}

// Property: literal recurrence = corrected + w2 on the diagonal.
TEST(Property, PaperLiteralShiftLaw) {
  for (std::int64_t kappa = 0; kappa <= 20; ++kappa) {
    const auto lit = energy_polynomial_table(shg(), kShg, kappa, RecurrenceMode::PaperLiteral);
    const auto cor = energy_polynomial_table(shg(), kShg, kappa);
    QMatrix shifted = cor.recurrence;
    for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i][i] += QComplex(2);
    EXPECT_EQ(lit.recurrence, shifted);
    auto want = recurrence_spectrum(cor);
    for (auto& e : want) e += 2.0;
    EXPECT_LE(max_sorted_deviation(recurrence_spectrum(lit), want), 1e-9);
  }
}

// Property: the S-route matrix is the monomial-basis action, computed here by
// an independent ladder implementation.
TEST(Property, ReducedMatrixIsBargmannAction) {
  Rng rng(37);
  for (int trial = 0; trial < 25; ++trial) {
    const long s = 1 + static_cast<long>(rng() % 3);
    const long p = 1 + static_cast<long>(rng() % 3);
    const ConservedCharge q(s, p);
    const auto h = testing::random_conserving(rng, q.s(), q.p(), 4, trial % 2 == 0);
    for (std::int64_t kappa = 0; kappa <= 12; ++kappa) {
      const auto b = reduced_block_matrix(h, q, kappa);
      EXPECT_EQ(b.exact, testing::bargmann_block(h, q.s(), q.p(), kappa, b.degrees));
    }
  }
  for (std::int64_t kappa = 0; kappa <= 20; ++kappa) {
    const auto b = reduced_block_matrix(shg(), kShg, kappa, Route::S);
    EXPECT_EQ(b.exact, testing::bargmann_block(shg(), 1, 2, kappa, b.degrees));
  }
}

// Property: D R = M D with D = diag(sqrt(n1! n2!)), i.e. R = D^-1 M D.
TEST(Property, DConjugationIdentity) {
  for (const auto& [h, q] : {std::pair{shg(), kShg}, std::pair{nth3(), kNth3}}) {
    for (std::int64_t kappa = 0; kappa <= 24; ++kappa) {
      const auto b = reduced_block_matrix(h, q, kappa);
      auto basis = enumerate_block(q, kappa);
      std::reverse(basis.begin(), basis.end());  // degree order
      const ComplexMatrix m = block_matrix(h, basis);
      const std::size_t d = basis.size();
      std::vector<double> dg(d);
      for (std::size_t i = 0; i < d; ++i)
        dg[i] = std::exp(0.5 * (std::lgamma(basis[i].n1 + 1.0) + std::lgamma(basis[i].n2 + 1.0)));
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          const cdouble lhs = dg[i] * b.matrix(i, j);
          const cdouble rhs = m(i, j) * dg[j];
          EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::max(std::abs(rhs), 1e-300)) << kappa;
        }
    }
  }
}

// Property: S and T routes agree spectrally; T = diag(nu!)-similar to S.
TEST(Property, RouteAgreement) {
  Rng rng(41);
  std::vector<std::pair<OperatorPolynomial, ConservedCharge>> models = {{shg(), kShg}, {nth3(), kNth3}};
  for (int trial = 0; trial < 10; ++trial) {
    OperatorPolynomial h;
    while (h.is_zero()) {
      const auto cand = testing::random_conserving(rng, 1, 2, 4, true);
      bool ok = true;
      for (const auto& [e, c] : cand.terms()) ok = ok && (e.m3 == 0 || e.m4 == 0);
      if (ok) h = cand;
    }
    models.emplace_back(h, kShg);
  }
  for (const auto& [h, q] : models) {
    const auto s_op = reduce_via_S(h, q);
    const auto t_op = reduce_via_T(h, q);
    for (std::int64_t kappa = 0; kappa <= 24; ++kappa) {
      const auto bs = reduced_block_matrix(s_op, kappa);
      const auto bt = reduced_block_matrix(t_op, kappa);
      ASSERT_EQ(bs.degrees, bt.degrees);
      const auto ref = block_spectrum(h, q, kappa).eigenvalues;
      double scale = 1.0;
      for (auto e : ref) scale = std::max(scale, std::abs(e));
      EXPECT_LE(max_sorted_deviation(values(bs.matrix), ref), 1e-9 * scale);
      EXPECT_LE(max_sorted_deviation(values(bt.matrix), ref), 1e-9 * scale);
      for (std::size_t i = 0; i < bs.degrees.size(); ++i)
        for (std::size_t j = 0; j < bs.degrees.size(); ++j) {
          const auto nu_i = *slaved_occupation(q, kappa, bs.degrees[i]);
          const auto nu_j = *slaved_occupation(q, kappa, bs.degrees[j]);
          const QComplex ratio(Rational(factorial(nu_i), factorial(nu_j)));
          EXPECT_EQ(bt.exact[i][j], bs.exact[i][j] * ratio);
        }
    }
  }
}

// Property: the literal power form agrees for m4 <= 1 and misses for m4 = 2.
TEST(Property, SlavedPowerFormOnlyExactForLinearLowering) {
  for (std::int64_t kappa = 0; kappa <= 16; ++kappa) {
    const auto ff = reduced_block_matrix(reduce_via_S(shg(), kShg), kappa);
    const auto lit = reduced_block_matrix(reduce_via_S(shg(), kShg, SlavedForm::PaperLiteralPower), kappa);
    EXPECT_EQ(ff.exact, lit.exact);
  }
  const auto h = OperatorPolynomial::term(1, 4, 0, 0, 2) + OperatorPolynomial::term(1, 0, 4, 2, 0) +
                 OperatorPolynomial::term(1, 1, 1, 0, 0);
  ASSERT_TRUE(conserves(h, kShg));
  bool differs = false;
  for (std::int64_t kappa = 0; kappa <= 16; ++kappa) {
    const auto ff = reduced_block_matrix(reduce_via_S(h, kShg), kappa);
    const auto lit = reduced_block_matrix(reduce_via_S(h, kShg, SlavedForm::PaperLiteralPower), kappa);
    const auto ref = block_spectrum(h, kShg, kappa).eigenvalues;
    EXPECT_LE(max_sorted_deviation(values(ff.matrix), ref), 1e-9);
    differs = differs || max_sorted_deviation(values(lit.matrix), ref) > 1e-6;
  }
  EXPECT_TRUE(differs);
}

// Property: isospectrality on catalog and random Hermitian models.
TEST(Property, Isospectrality) {
  for (std::int64_t kappa = 0; kappa <= 40; ++kappa)
    EXPECT_LE(max_sorted_deviation(qes_spectrum(shg(), kShg, kappa).eigenvalues,
                                   block_spectrum(shg(), kShg, kappa).eigenvalues),
              1e-9);
  for (std::int64_t kappa = 0; kappa <= 30; ++kappa)
    EXPECT_LE(max_sorted_deviation(qes_spectrum(nth3(), kNth3, kappa).eigenvalues,
                                   block_spectrum(nth3(), kNth3, kappa).eigenvalues),
              1e-9);
  Rng rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const long s = 1 + static_cast<long>(rng() % 3);
    const long p = 1 + static_cast<long>(rng() % 3);
    const ConservedCharge q(s, p);
    const auto h = testing::random_conserving(rng, q.s(), q.p(), 4, true);
    for (std::int64_t kappa = 0; kappa <= 20; ++kappa) {
      const auto ref = block_spectrum(h, q, kappa).eigenvalues;
      double scale = 1.0;
      for (auto e : ref) scale = std::max(scale, std::abs(e));
      EXPECT_LE(max_sorted_deviation(qes_spectrum(h, q, kappa).eigenvalues, ref), 1e-9 * scale);
    }
  }
}

// Property: mapped reduced eigenvectors reproduce the oracle eigenvectors.
TEST(Property, EigenvectorRoundtrip) {
  for (std::int64_t kappa = 0; kappa <= 20; ++kappa) {
    const auto block = reduced_block_matrix(shg(), kShg, kappa);
    const auto reduced = reduced_spectrum(block);
    const auto oracle = block_spectrum(shg(), kShg, kappa);
    const std::size_t d = block.degrees.size();
    for (std::size_t j = 0; j < d; ++j) {
      const double gap_lo = j > 0 ? std::abs(oracle.eigenvalues[j] - oracle.eigenvalues[j - 1]) : 1.0;
      const double gap_hi = j + 1 < d ? std::abs(oracle.eigenvalues[j + 1] - oracle.eigenvalues[j]) : 1.0;
      if (std::min(gap_lo, gap_hi) < 1e-6) continue;
      std::map<unsigned, cdouble> coeffs;
      for (std::size_t i = 0; i < d; ++i) coeffs[block.degrees[i]] = reduced.eigenvectors(i, j);
      const auto amps = eigenvector_to_fock(coeffs, kShg, kappa);
      cdouble overlap = 0;
      for (std::size_t i = 0; i < d; ++i) overlap += std::conj(oracle.eigenvectors(i, j)) * amps[i].amplitude;
      EXPECT_GE(std::abs(overlap), 1 - 1e-8) << "kappa " << kappa << " level " << j;
    }
  }
}

}  // namespace
}  // namespace qesb
