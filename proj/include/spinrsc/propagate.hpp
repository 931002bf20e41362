#pragma once

#include <complex>

#include <Eigen/Dense>

#include "spinrsc/chain.hpp"

namespace spinrsc {

using cplx = std::complex<double>;

/// Phase of `z` in turns, reduced to [0, 1).
double phase_turns(cplx z);

/// <k| exp(-i H t) |j> in the one-excitation sector.
struct TransitionAmplitude {
  cplx value;

  double modulus() const { return std::abs(value); }
  double phase() const { return phase_turns(value); }
};

/// 2x2 block of transition amplitudes from the sender to the extended
/// receiver. Row 0 is destination node N-1, row 1 node N; column 0 is
/// source node 1, column 1 node 2.
struct AmplitudeMatrixP {
  Eigen::Matrix2cd p = Eigen::Matrix2cd::Zero();

  cplx to_nm1_from(int source) const { return p(0, source - 1); }
  cplx to_n_from(int source) const { return p(1, source - 1); }
  double bottom_row_norm_sq() const { return p.row(1).squaredNorm(); }
};

/// a0|0> + a1|1> + a2|2>, with a0 real.
struct SenderState {
  double a0 = 0.0;
  cplx a1{1.0, 0.0};
  cplx a2{0.0, 0.0};

  Eigen::Vector2cd excitation() const { return {a1, a2}; }
  double norm_sq() const { return a0 * a0 + std::norm(a1) + std::norm(a2); }
};

/// Throws DomainError unless the state is normalized within 1e-12.
void validate(const SenderState& s);

/// Amplitudes at time t on the ground state (f0) and the extended-receiver
/// nodes N-1 and N.
struct FVector {
  double f0 = 0.0;
  cplx f_nm1;
  cplx f_n;

  Eigen::Vector2cd excitation() const { return {f_nm1, f_n}; }
  double transfer_probability() const { return std::norm(f_nm1) + std::norm(f_n); }
};

/// Evaluates the sender -> extended receiver block for many time samples
/// from one spectral decomposition. Safe to share across threads.
class AmplitudeEvaluator {
 public:
  explicit AmplitudeEvaluator(const SpectralDecomposition& spec);

  Eigen::Matrix2cd at(double t) const;
  int chain_length() const { return static_cast<int>(energies_.size()); }

 private:
  Eigen::VectorXd energies_;
  // weights_(2*r + c, m) = v_{dest r, m} * v_{src c, m}
  Eigen::Matrix<double, 4, Eigen::Dynamic> weights_;
};

/// Sum_m v_km v_jm exp(-i E_m t); nodes are 1-based.
TransitionAmplitude transition_amplitude(const SpectralDecomposition& spec, int k, int j, double t);

AmplitudeMatrixP amplitude_matrix(const SpectralDecomposition& spec, double t);

/// (f_{N-1}, f_N)^T = P (a1, a2)^T and f0 = a0.
FVector sender_to_f(const AmplitudeMatrixP& p, const SenderState& s);

}  // namespace spinrsc
