#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "spinrsc/chain.hpp"
#include "spinrsc/kernels.hpp"
#include "spinrsc/propagate.hpp"

namespace spinrsc {

/// Singular values of P, lam_minus <= lam_plus.
struct SingularPair {
  double lam_minus = 0.0;
  double lam_plus = 0.0;
};

/// P = v0^+ diag(lam_minus, lam_plus) u.
///
/// Row 2 of u is the conjugate of the optimal sender vector; v0 is the
/// extended-receiver transform that rotates f = P a_opt onto node N:
///   row 1 = (f_N, -f_{N-1}) / |f|,  row 2 = (f_{N-1}^*, f_N^*) / |f|.
/// When lam_plus == lam_minus the optimal sender vector is taken as (0, 1).
struct SvdTriple {
  Eigen::Matrix2cd v0 = Eigen::Matrix2cd::Identity();
  SingularPair lam;
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();

  Eigen::Matrix2cd reconstruct() const;
};

SingularPair singular_values(const AmplitudeMatrixP& p);

SvdTriple svd_decompose(const AmplitudeMatrixP& p);

/// a = u^+ (0, 1)^T with a0 = 0. Throws DomainError when lam_plus == 0,
/// i.e. no excitation reaches the extended receiver.
SenderState optimal_sender_state(const SvdTriple& svd);

/// max over unit (a1, a2) of |f_N|^2, which is the squared norm of P's
/// bottom row.
double rmax_no_v(const AmplitudeMatrixP& p);

/// Coarse-scan + golden-section search for the first significant local
/// maximum of a time-dependent objective.
///
/// The window [0, t_max] is sampled every `dt`. A sample is a candidate peak
/// when it exceeds its left neighbour, is not below its right neighbour and
/// reaches `significance` times the largest sample in the window; the last
/// condition skips the round-off ripples that precede the arrival of the
/// excitation. The bracketing interval around the first candidate is then
/// refined by golden-section search until its width is <= tolerance.
struct TimeSearchOptions {
  double dt = 0.05;
  /// <= 0 selects 4 N for chain objectives.
  double t_max = 0.0;
  double tolerance = 1e-8;
  double significance = 0.5;
  Execution exec = Execution::Parallel;
};

struct TimeMaximum {
  double t0 = 0.0;
  double value = 0.0;
};

TimeMaximum first_maximum(const std::function<double(double)>& objective, double t_max,
                          const TimeSearchOptions& options = {});

TimeMaximum maximize_over_time(const SpectralDecomposition& spec, Objective objective,
                               const TimeSearchOptions& options = {});

/// Golden-section maximization of a unimodal function on [lo, hi].
double golden_section_max(const std::function<double(double)>& f, double lo, double hi, double tolerance);

/// Everything needed to run remote state creation on one chain.
struct OptimalProtocol {
  CouplingKind kind = CouplingKind::AllNode;
  bool with_v = true;
  double t0 = 0.0;
  double r_max_sq = 0.0;
  AmplitudeMatrixP p;  // at t0
  SvdTriple svd;       // of p
  SenderState a_opt;

  /// v0 when the receiver-side transform is used, identity otherwise.
  Eigen::Matrix2cd receiver_transform() const;
};

/// With V: maximize lam_plus^2 over time and take the sender state from the
/// SVD. Without V: maximize |p_N1|^2 + |p_N2|^2 and send the normalized
/// conjugate bottom row.
OptimalProtocol optimize_protocol(const SpectralDecomposition& spec, CouplingKind kind, bool with_v,
                                  const TimeSearchOptions& options = {});

enum class SweepModel { NN, AllNodeNoV, AllNodeWithV };

/// "nn", "all", "all+v".
SweepModel parse_sweep_model(std::string_view name);
std::string_view to_string(SweepModel model);
CouplingKind coupling_of(SweepModel model);
bool uses_v(SweepModel model);

struct SweepRow {
  int n = 0;
  SweepModel model = SweepModel::NN;
  double t0 = 0.0;
  double r_max_sq = 0.0;
};

/// One row per (n, model) for n in [n_min, n_max], ordered by model (as
/// given) then n. Rows are evaluated in parallel when exec is Parallel.
std::vector<SweepRow> sweep(int n_min, int n_max, std::span<const SweepModel> models,
                            const TimeSearchOptions& options = {});

struct CriticalLength {
  SweepModel model = SweepModel::NN;
  /// Largest n with r_max_sq >= threshold; empty when never attained.
  std::optional<int> n;
  /// r_max_sq is non-increasing over n-1, n, n+1 around the crossing.
  bool monotone_near_crossing = false;
};

/// Per model, in order of first appearance in `rows`. Values within 1e-12
/// below the threshold count as attained.
std::vector<CriticalLength> critical_length(std::span<const SweepRow> rows, double threshold);

}  // namespace spinrsc
