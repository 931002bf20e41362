#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "spinrsc/kernels.hpp"
#include "spinrsc/optimize.hpp"
#include "spinrsc/propagate.hpp"

namespace spinrsc {

/// Sender control parameters, each in [0, 1]. The alphas are angles in
/// half-turns, the phis are phases in turns.
struct ControlParams {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
};

/// Extended-receiver state in the basis {|0>, |N-1>, |N>, |(N-1)N>}.
struct ExtendedReceiverDensity {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
};

/// Receiver (node N) state in the basis {|0>, |N>}.
struct ReceiverDensity {
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
};

/// Eigenvalue/eigenvector coordinates of a receiver state:
///   rho = U diag(lam, 1 - lam) U^+,
///   U = [[cos(b1 pi/2), -e^{-2 pi i b2} sin(b1 pi/2)],
///        [e^{2 pi i b2} sin(b1 pi/2), cos(b1 pi/2)]].
struct CreatableParams {
  double lam = 1.0;
  double beta1 = 0.0;
  double beta2 = 0.0;

  ReceiverDensity reconstruct() const;
};

struct RegionPoint {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  CreatableParams params;
};

/// Points ordered by alpha1, then alpha2, both ascending.
struct RegionGrid {
  double step = 0.1;
  std::vector<RegionPoint> points;
};

SenderState control_to_amplitudes(const ControlParams& c);

/// Control parameters (alpha1, alpha2, phi1, phi2) reproducing `s` exactly
/// (a0 is real, so no global phase is lost).
ControlParams amplitudes_to_control(const SenderState& s);

/// Throws DomainError if |f0|^2 + |f_{N-1}|^2 + |f_N|^2 exceeds 1 by more
/// than 1e-9.
ExtendedReceiverDensity extended_receiver_density(const FVector& f);

/// (lam_hat_plus, lam_hat_minus) = (1 +- sqrt((1 - 2R^2)^2 + 4 R^2 R0^2)) / 2.
std::pair<double, double> extended_eigenvalues(double r_sq, double r0);

/// Tr_{N-1}[V rho V^+] with V = diag(1, v0, 1). Throws DomainError if v0
/// deviates from unitarity by more than 1e-8.
ReceiverDensity apply_v_and_reduce(const ExtendedReceiverDensity& rho_ext, const Eigen::Matrix2cd& v0);

/// Coordinates read off the density alone: beta2 is the phase of rho(1, 0)
/// and is set to 0 when that coherence vanishes.
CreatableParams creatable_params(const ReceiverDensity& rho_r);

/// Same, with beta2 taken from the receiver amplitude z (the |N> component of
/// v0 f), which stays defined when f0 = 0.
CreatableParams creatable_params(const ReceiverDensity& rho_r, cplx z);

/// Every intermediate of one remote-state-creation run.
struct CreationResult {
  SenderState sender;
  FVector f;
  ExtendedReceiverDensity extended;
  ReceiverDensity receiver;
  /// |N> amplitude after the receiver-side transform; rho_R(1, 0) = f0 z.
  cplx z;
  CreatableParams params;
};

/// control -> sender amplitudes -> f = P a at t0 -> extended receiver ->
/// apply the protocol's receiver transform -> receiver state -> coordinates.
CreationResult create_state(const OptimalProtocol& protocol, const ControlParams& control);

/// (alpha1, alpha2) grid with phi1 = phi2 = 0 at the given step. The step
/// must lie in (0, 0.5]; the last grid value is clamped to 1.
RegionGrid region_grid(const OptimalProtocol& protocol, double step, Execution exec = Execution::Parallel);

enum class PhaseSweep {
  /// phi1 = phi2 = phi: rotates z rigidly, so beta2 follows phi.
  Common,
  /// phi1 = 0, only phi2 varies.
  SecondOnly,
};

struct Beta2Coverage {
  bool defined = false;
  /// Largest circular gap between sorted beta2 samples (turns).
  double max_gap = 1.0;
  std::vector<double> beta2;
};

/// Sweeps the sender phase(s) over [0, 1) at fixed (alpha1, alpha2). Returns
/// defined = false when the receiver amplitude vanishes.
Beta2Coverage beta2_coverage(const OptimalProtocol& protocol, double alpha1, double alpha2, int phase_samples,
                             PhaseSweep mode = PhaseSweep::Common);

}  // namespace spinrsc
