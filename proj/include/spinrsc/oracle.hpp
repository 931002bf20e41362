#pragma once

// Brute-force cross-checks for the fast paths: evolution in the full 2^N
// Hilbert space, and random-sampling maximization of the transfer
// probability.
//
// Full-space basis: computational states indexed by bitmask, node i <-> bit
// (i - 1), bit set = spin excited. Node 0 denotes the ground state (mask 0).

#include <cstdint>

#include <Eigen/Dense>

#include "spinrsc/chain.hpp"
#include "spinrsc/kernels.hpp"
#include "spinrsc/propagate.hpp"

namespace spinrsc::oracle {

inline constexpr int kMaxFullSpaceLength = 12;

/// Sum_{i<j} D_ij (I_i^x I_j^x + I_i^y I_j^y) assembled from the spin-1/2
/// operator matrices, as a dense 2^N x 2^N real matrix. N <= 12.
Eigen::MatrixXd full_hamiltonian(const CouplingModel& model);

/// Diagonal of the total I_z in the computational basis.
Eigen::VectorXd total_iz(int n);

/// Exact propagator of one chain in the full Hilbert space.
class FullSpaceEvolution {
 public:
  explicit FullSpaceEvolution(const CouplingModel& model);

  /// <k| exp(-i H t) |j> for nodes k, j in 0..N (0 = ground state).
  cplx amplitude(int k, int j, double t) const;

  int chain_length() const { return n_; }

 private:
  int n_;
  Eigen::VectorXd energies_;
  Eigen::MatrixXd vectors_;
};

cplx full_transition_amplitude(const CouplingModel& model, int k, int j, double t);

enum class SampleMode {
  /// ||P a||^2: excitation probability on both extended-receiver nodes.
  ExtReceiverNorm,
  /// |p_N1 a1 + p_N2 a2|^2: probability on node N only.
  LastNodeOnly,
};

/// Maximum of the chosen transfer probability over `samples` random unit
/// sender vectors (two normalized complex Gaussians). The samples are split
/// into a fixed number of partitions, each with its own seeded mt19937_64, so
/// the result depends only on `seed`, never on the thread count.
double sample_max_transfer(const AmplitudeMatrixP& p, SampleMode mode, std::int64_t samples, std::uint64_t seed,
                           Execution exec = Execution::Parallel);

/// Largest |fast - full| over all node pairs (k, j) in 1..N at time t.
double max_amplitude_deviation(const CouplingModel& model, double t);

}  // namespace spinrsc::oracle
