#include "spinrsc/chain.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include <fmt/format.h>

#include "spinrsc/errors.hpp"

namespace spinrsc {

namespace {

constexpr double kResidualTol = 1e-10;
constexpr double kSignEps = 1e-12;

}  // namespace

CouplingKind parse_coupling_kind(std::string_view name) {
  if (name == "nn") return CouplingKind::NearestNeighbor;
  if (name == "all") return CouplingKind::AllNode;
  throw DomainError(fmt::format("unknown coupling model '{}' (expected nn or all)", name));
}

std::string_view to_string(CouplingKind kind) {
  return kind == CouplingKind::NearestNeighbor ? "nn" : "all";
}

CouplingMatrix build_couplings(const CouplingModel& model) {
  if (model.n < 4) {
    throw DomainError(fmt::format(
        "chain length {} < 4: sender nodes {{1,2}} and extended receiver nodes {{N-1,N}} must be disjoint",
        model.n));
  }
  const int n = model.n;
  CouplingMatrix c{Eigen::MatrixXd::Zero(n, n)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const int dist = std::abs(i - j);
      if (model.kind == CouplingKind::AllNode) {
        c.d(i, j) = 1.0 / (static_cast<double>(dist) * dist * dist);
      } else {
        c.d(i, j) = dist == 1 ? 1.0 : 0.0;
      }
    }
  }
  return c;
}

OneExcitationHamiltonian build_hamiltonian(const CouplingMatrix& c) {
  // <k|(I_k^x I_j^x + I_k^y I_j^y)|j> = 1/2 for a single flip-flop.
  OneExcitationHamiltonian h{0.5 * c.d};
  h.h.diagonal().setZero();
  return h;
}

SpectralDecomposition spectral_decompose(const OneExcitationHamiltonian& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.h);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symmetric eigensolver did not converge");
  }
  SpectralDecomposition spec{solver.eigenvalues(), solver.eigenvectors()};

  for (int m = 0; m < spec.size(); ++m) {
    auto col = spec.vectors.col(m);
    for (int k = 0; k < col.size(); ++k) {
      if (std::abs(col(k)) > kSignEps) {
        if (col(k) < 0) col = -col;
        break;
      }
    }
  }

  const double residual =
      (h.h * spec.vectors - spec.vectors * spec.energies.asDiagonal()).cwiseAbs().maxCoeff();
  if (!(residual <= kResidualTol)) {
    throw NumericalError(fmt::format("eigensolver residual {:.3e} exceeds {:.0e}", residual, kResidualTol));
  }
  return spec;
}

SpectralDecomposition decompose_chain(const CouplingModel& model) {
  return spectral_decompose(build_hamiltonian(build_couplings(model)));
}

}  // namespace spinrsc
