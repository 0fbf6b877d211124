#include "qesboson/dense_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qesboson/errors.hpp"

namespace qesb {

bool spectral_less(const cdouble& a, const cdouble& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

void sort_spectrum(std::vector<cdouble>& values) {
  std::sort(values.begin(), values.end(), spectral_less);
}

namespace {

EigenPairs sorted(std::vector<cdouble> values, const ComplexMatrix& vectors) {
  std::vector<Eigen::Index> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return spectral_less(values[a], values[b]); });
  EigenPairs out;
  out.vectors.resize(vectors.rows(), vectors.cols());
  for (std::size_t j = 0; j < order.size(); ++j) {
    out.values.push_back(values[order[j]]);
    ComplexVector v = vectors.col(order[j]);
    double n = v.norm();
    out.vectors.col(static_cast<Eigen::Index>(j)) = n > 0 ? ComplexVector(v / n) : v;
  }
  return out;
}

}  // namespace

EigenPairs solve_hermitian(const ComplexMatrix& m) {
  if (m.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success)
    throw NumericalFailure("Hermitian eigensolver did not converge", std::nan(""));
  std::vector<cdouble> values;
  for (Eigen::Index j = 0; j < solver.eigenvalues().size(); ++j)
    values.emplace_back(solver.eigenvalues()[j], 0.0);
  return sorted(std::move(values), solver.eigenvectors());
}

Eigen::VectorXd balancing_scale(const ComplexMatrix& m) {
  const Eigen::Index n = m.rows();
  Eigen::VectorXd d = Eigen::VectorXd::Ones(n);
  ComplexMatrix a = m;
  constexpr double radix = 2.0;
  constexpr double radix2 = radix * radix;
  bool done = false;
  for (int sweep = 0; !done && sweep < 1000; ++sweep) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0;
      double r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= radix2;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix2;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        d[i] *= f;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
  return d;
}

EigenPairs solve_general(const ComplexMatrix& m) {
  if (m.rows() == 0) return {};
  Eigen::VectorXd d = balancing_scale(m);
  ComplexMatrix b = d.cwiseInverse().asDiagonal() * m * d.asDiagonal();
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(b);
  if (solver.info() != Eigen::Success)
    throw NumericalFailure("complex eigensolver did not converge", std::nan(""));
  std::vector<cdouble> values(solver.eigenvalues().data(),
                              solver.eigenvalues().data() + solver.eigenvalues().size());
  ComplexMatrix vectors = d.asDiagonal() * solver.eigenvectors();
  return sorted(std::move(values), vectors);
}

double eigen_residual(const ComplexMatrix& m, cdouble value, const ComplexVector& v) {
  double n = v.norm();
  if (n == 0.0) throw ZeroVector("eigen_residual: zero vector");
  return (m * v - value * v).norm() / n;
}

double max_residual(const ComplexMatrix& m, const EigenPairs& pairs) {
  double worst = 0.0;
  for (std::size_t j = 0; j < pairs.values.size(); ++j)
    worst = std::max(worst, eigen_residual(m, pairs.values[j],
                                           pairs.vectors.col(static_cast<Eigen::Index>(j))));
  return worst;
}

double max_sorted_deviation(const std::vector<cdouble>& a, const std::vector<cdouble>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) worst = std::max(worst, std::abs(a[j] - b[j]));
  return worst;
}

}  // namespace qesb
