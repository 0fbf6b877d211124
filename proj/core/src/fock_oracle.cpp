#include "qesboson/fock_oracle.hpp"

#include <algorithm>
#include <map>

#include "qesboson/errors.hpp"

namespace qesb {

std::vector<FockState> enumerate_block(const ConservedCharge& charge, std::int64_t kappa) {
  std::vector<FockState> out;
  if (kappa < 0) return out;
  for (std::int64_t n2 = 0; charge.p() * n2 <= kappa; ++n2) {
    std::int64_t rest = kappa - charge.p() * n2;
    if (rest % charge.s() == 0)
      out.push_back({static_cast<unsigned>(rest / charge.s()), static_cast<unsigned>(n2)});
  }
  return out;
}

ExactMatrix exact_block_matrix(const OperatorPolynomial& h, const std::vector<FockState>& basis) {
  std::map<FockState, std::size_t> index;
  for (std::size_t j = 0; j < basis.size(); ++j) index.emplace(basis[j], j);
  ExactMatrix m(basis.size(), std::vector<ExactAmplitude>(basis.size()));
  for (std::size_t col = 0; col < basis.size(); ++col) {
    for (auto& [target, amp] : apply_to_fock(h, basis[col])) {
      auto it = index.find(target);
      if (it == index.end())
        throw BlockClosureViolation("operator maps |" + std::to_string(basis[col].n1) + "," +
                                    std::to_string(basis[col].n2) + "> to |" +
                                    std::to_string(target.n1) + "," + std::to_string(target.n2) +
                                    ">, outside the block");
      m[it->second][col] = std::move(amp);
    }
  }
  return m;
}

ComplexMatrix block_matrix(const OperatorPolynomial& h, const std::vector<FockState>& basis) {
  ExactMatrix exact = exact_block_matrix(h, basis);
  const auto n = static_cast<Eigen::Index>(basis.size());
  ComplexMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = exact[r][c].to_complex();
  return m;
}

FockBlock build_fock_block(const OperatorPolynomial& h, const ConservedCharge& charge,
                           std::int64_t kappa) {
  if (!conserves(h, charge))
    throw NonConservingHamiltonian("Hamiltonian does not commute with K = " +
                                   std::to_string(charge.s()) + " N1 + " +
                                   std::to_string(charge.p()) + " N2");
  FockBlock block;
  block.kappa = kappa;
  block.basis = enumerate_block(charge, kappa);
  block.matrix = block_matrix(h, block.basis);
  return block;
}

SpectrumReport block_spectrum(const OperatorPolynomial& h, const ConservedCharge& charge,
                              std::int64_t kappa, const SpectrumOptions& options) {
  FockBlock block = build_fock_block(h, charge, kappa);
  SpectrumReport report;
  report.kappa = kappa;
  report.dimension = block.basis.size();
  const bool hermitian = is_hermitian(h);
  report.method = hermitian ? "oracle-hermitian" : "oracle-general";
  if (report.dimension == 0) return report;

  EigenPairs pairs = hermitian ? solve_hermitian(block.matrix) : solve_general(block.matrix);
  report.max_residual = max_residual(block.matrix, pairs);
  double scale = std::max(1.0, block.matrix.norm());
  if (report.max_residual > options.residual_tol * scale)
    throw NumericalFailure("oracle eigen-residual " + std::to_string(report.max_residual) +
                               " exceeds tolerance",
                           report.max_residual);
  report.eigenvalues = std::move(pairs.values);
  report.eigenvectors = std::move(pairs.vectors);
  return report;
}

}  // namespace qesb
