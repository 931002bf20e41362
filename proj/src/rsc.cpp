#include "spinrsc/rsc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "spinrsc/errors.hpp"

namespace spinrsc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kVanishing = 1e-14;

void check_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw DomainError(fmt::format("control parameter {} = {} outside [0, 1]", name, v));
  }
}

// Two-qubit index of (s_{N-1}, s_N) in the basis {|0>, |N-1>, |N>, |(N-1)N>}.
constexpr int pair_index(int s_nm1, int s_n) { return s_nm1 + 2 * s_n; }

CreatableParams params_from(const ReceiverDensity& rho_r, std::optional<cplx> z) {
  const double rz_sq = std::clamp(rho_r.rho(1, 1).real(), 0.0, 1.0);
  const cplx coherence = rho_r.rho(1, 0);
  const double one_minus = 1.0 - 2.0 * rz_sq;
  const double disc = std::sqrt(one_minus * one_minus + 4.0 * std::norm(coherence));

  CreatableParams out;
  out.lam = 0.5 * (1.0 + disc);
  if (rz_sq <= kVanishing || disc <= kVanishing) return out;
  out.beta1 = std::acos(std::clamp(one_minus / disc, -1.0, 1.0)) / kPi;
  if (z) {
    out.beta2 = phase_turns(*z);
  } else if (std::abs(coherence) > kVanishing) {
    out.beta2 = phase_turns(coherence);
  }
  return out;
}

}  // namespace

ReceiverDensity CreatableParams::reconstruct() const {
  const double c = std::cos(beta1 * kPi / 2.0);
  const double s = std::sin(beta1 * kPi / 2.0);
  const cplx e = std::polar(1.0, 2.0 * kPi * beta2);
  Eigen::Matrix2cd u;
  u << c, -std::conj(e) * s, e * s, c;
  const Eigen::Vector2cd diag{lam, 1.0 - lam};
  return {u * diag.asDiagonal() * u.adjoint()};
}

SenderState control_to_amplitudes(const ControlParams& c) {
  check_unit_interval(c.alpha1, "alpha1");
  check_unit_interval(c.alpha2, "alpha2");
  check_unit_interval(c.phi1, "phi1");
  check_unit_interval(c.phi2, "phi2");
  const double outer = std::cos(c.alpha1 * kPi / 2.0);
  return {std::sin(c.alpha1 * kPi / 2.0),
          outer * std::cos(c.alpha2 * kPi / 2.0) * std::polar(1.0, 2.0 * kPi * c.phi1),
          outer * std::sin(c.alpha2 * kPi / 2.0) * std::polar(1.0, 2.0 * kPi * c.phi2)};
}

ControlParams amplitudes_to_control(const SenderState& s) {
  validate(s);
  ControlParams c;
  c.alpha1 = 2.0 / kPi * std::asin(std::clamp(s.a0, 0.0, 1.0));
  const double excited = std::hypot(std::abs(s.a1), std::abs(s.a2));
  if (excited <= kVanishing) return c;
  c.alpha2 = 2.0 / kPi * std::atan2(std::abs(s.a2), std::abs(s.a1));
  if (std::abs(s.a1) > kVanishing) c.phi1 = phase_turns(s.a1);
  if (std::abs(s.a2) > kVanishing) c.phi2 = phase_turns(s.a2);
  return c;
}

ExtendedReceiverDensity extended_receiver_density(const FVector& f) {
  const double total = f.f0 * f.f0 + f.transfer_probability();
  if (total > 1.0 + 1e-9) {
    throw DomainError(fmt::format("invalid amplitude vector: |f0|^2 + |f_(N-1)|^2 + |f_N|^2 = {:.17g} > 1", total));
  }
  ExtendedReceiverDensity out;
  auto& r = out.rho;
  r(0, 0) = 1.0 - f.transfer_probability();
  r(0, 1) = f.f0 * std::conj(f.f_nm1);
  r(0, 2) = f.f0 * std::conj(f.f_n);
  r(1, 1) = std::norm(f.f_nm1);
  r(1, 2) = f.f_nm1 * std::conj(f.f_n);
  r(2, 2) = std::norm(f.f_n);
  r(1, 0) = std::conj(r(0, 1));
  r(2, 0) = std::conj(r(0, 2));
  r(2, 1) = std::conj(r(1, 2));
  return out;
}

std::pair<double, double> extended_eigenvalues(double r_sq, double r0) {
  if (!(r_sq >= 0.0) || r0 * r0 + r_sq > 1.0 + 1e-12) {
    throw DomainError(fmt::format("extended eigenvalues need 0 <= R0^2 + R^2 <= 1 (R^2 = {}, R0 = {})", r_sq, r0));
  }
  const double one_minus = 1.0 - 2.0 * r_sq;
  const double disc = std::sqrt(one_minus * one_minus + 4.0 * r_sq * r0 * r0);
  return {0.5 * (1.0 + disc), 0.5 * (1.0 - disc)};
}

ReceiverDensity apply_v_and_reduce(const ExtendedReceiverDensity& rho_ext, const Eigen::Matrix2cd& v0) {
  const double defect = (v0 * v0.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
  if (defect > 1e-8) {
    throw DomainError(fmt::format("receiver transform is not unitary (deviation {:.3e})", defect));
  }
  Eigen::Matrix4cd v = Eigen::Matrix4cd::Identity();
  v.block<2, 2>(1, 1) = v0;
  const Eigen::Matrix4cd rotated = v * rho_ext.rho * v.adjoint();

  ReceiverDensity out;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int s = 0; s < 2; ++s) {
        out.rho(a, b) += rotated(pair_index(s, a), pair_index(s, b));
      }
    }
  }
  return out;
}

CreatableParams creatable_params(const ReceiverDensity& rho_r) { return params_from(rho_r, std::nullopt); }

CreatableParams creatable_params(const ReceiverDensity& rho_r, cplx z) { return params_from(rho_r, z); }

CreationResult create_state(const OptimalProtocol& protocol, const ControlParams& control) {
  CreationResult out;
  out.sender = control_to_amplitudes(control);
  out.f = sender_to_f(protocol.p, out.sender);
  out.extended = extended_receiver_density(out.f);
  const Eigen::Matrix2cd v0 = protocol.receiver_transform();
  out.receiver = apply_v_and_reduce(out.extended, v0);
  out.z = (v0 * out.f.excitation())(1);
  out.params = creatable_params(out.receiver, out.z);
  return out;
}

RegionGrid region_grid(const OptimalProtocol& protocol, double step, Execution exec) {
  if (!(step > 0.0 && step <= 0.5)) {
    throw DomainError(fmt::format("grid step {} outside (0, 0.5]", step));
  }
  const double divisions = 1.0 / step;
  const bool exact = std::abs(divisions - std::round(divisions)) < 1e-9;
  const int last = exact ? static_cast<int>(std::round(divisions)) : static_cast<int>(std::ceil(divisions));
  const auto value = [&](int k) {
    return exact ? static_cast<double>(k) / last : std::min(1.0, k * step);
  };

  const std::size_t side = static_cast<std::size_t>(last) + 1;
  RegionGrid grid{step, std::vector<RegionPoint>(side * side)};
  kernels::for_each_index(
      grid.points.size(),
      [&](std::size_t i) {
        const double a1 = value(static_cast<int>(i / side));
        const double a2 = value(static_cast<int>(i % side));
        grid.points[i] = {a1, a2, create_state(protocol, {a1, a2, 0.0, 0.0}).params};
      },
      exec);
  return grid;
}

Beta2Coverage beta2_coverage(const OptimalProtocol& protocol, double alpha1, double alpha2, int phase_samples,
                             PhaseSweep mode) {
  if (phase_samples < 1) throw DomainError("beta2 coverage needs at least one phase sample");
  Beta2Coverage out;
  for (int k = 0; k < phase_samples; ++k) {
    const double phi = static_cast<double>(k) / phase_samples;
    const ControlParams c{alpha1, alpha2, mode == PhaseSweep::Common ? phi : 0.0, phi};
    const auto run = create_state(protocol, c);
    if (std::norm(run.z) <= kVanishing) return Beta2Coverage{};
    out.beta2.push_back(run.params.beta2);
  }
  out.defined = true;
  std::vector<double> sorted = out.beta2;
  std::sort(sorted.begin(), sorted.end());
  out.max_gap = 1.0 - sorted.back() + sorted.front();
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    out.max_gap = std::max(out.max_gap, sorted[i] - sorted[i - 1]);
  }
  return out;
}

}  // namespace spinrsc
