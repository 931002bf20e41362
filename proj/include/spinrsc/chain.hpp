#pragma once

#include <string_view>

#include <Eigen/Dense>

namespace spinrsc {

enum class CouplingKind { NearestNeighbor, AllNode };

/// "nn" / "all"; throws DomainError for anything else.
CouplingKind parse_coupling_kind(std::string_view name);
std::string_view to_string(CouplingKind kind);

/// Homogeneous chain of `n` spins. The sender occupies nodes {1, 2} and the
/// extended receiver nodes {n-1, n}, so n >= 4.
struct CouplingModel {
  CouplingKind kind = CouplingKind::AllNode;
  int n = 4;
};

/// Dimensionless dipolar couplings D_ij / D_12 (zero diagonal, symmetric).
struct CouplingMatrix {
  Eigen::MatrixXd d;

  int size() const { return static_cast<int>(d.rows()); }
};

/// Restriction of the XY Hamiltonian to the single-excitation states |1>..|n>.
/// The ground state |0> is an uncoupled zero-energy level and is not stored.
struct OneExcitationHamiltonian {
  Eigen::MatrixXd h;

  int size() const { return static_cast<int>(h.rows()); }
};

/// Eigenpairs of the one-excitation Hamiltonian. Energies ascend; each
/// eigenvector column has its first non-negligible component positive.
struct SpectralDecomposition {
  Eigen::VectorXd energies;
  Eigen::MatrixXd vectors;

  int size() const { return static_cast<int>(energies.size()); }
};

CouplingMatrix build_couplings(const CouplingModel& model);

OneExcitationHamiltonian build_hamiltonian(const CouplingMatrix& c);

SpectralDecomposition spectral_decompose(const OneExcitationHamiltonian& h);

/// build_couplings -> build_hamiltonian -> spectral_decompose.
SpectralDecomposition decompose_chain(const CouplingModel& model);

}  // namespace spinrsc
