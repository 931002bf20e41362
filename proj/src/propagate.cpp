#include "spinrsc/propagate.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "spinrsc/errors.hpp"

namespace spinrsc {

double phase_turns(cplx z) {
  double turns = std::arg(z) / (2.0 * std::numbers::pi);
  turns -= std::floor(turns);
  return turns >= 1.0 ? 0.0 : turns;
}

void validate(const SenderState& s) {
  if (std::abs(s.norm_sq() - 1.0) > 1e-12) {
    throw DomainError(fmt::format("sender state not normalized: |a|^2 = {:.17g}", s.norm_sq()));
  }
  if (s.a0 < 0.0 || s.a0 > 1.0) {
    throw DomainError(fmt::format("sender ground amplitude a0 = {} outside [0, 1]", s.a0));
  }
}

AmplitudeEvaluator::AmplitudeEvaluator(const SpectralDecomposition& spec)
    : energies_(spec.energies), weights_(4, spec.size()) {
  const int n = spec.size();
  if (n < 4) {
    throw DomainError(fmt::format("chain length {} < 4", n));
  }
  const auto& v = spec.vectors;
  for (int m = 0; m < n; ++m) {
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        weights_(2 * r + c, m) = v(n - 2 + r, m) * v(c, m);
      }
    }
  }
}

Eigen::Matrix2cd AmplitudeEvaluator::at(double t) const {
  double re[4] = {0, 0, 0, 0};
  double im[4] = {0, 0, 0, 0};
  for (Eigen::Index m = 0; m < energies_.size(); ++m) {
    const double c = std::cos(energies_(m) * t);
    const double s = std::sin(energies_(m) * t);
    for (int q = 0; q < 4; ++q) {
      re[q] += weights_(q, m) * c;
      im[q] -= weights_(q, m) * s;
    }
  }
  Eigen::Matrix2cd p;
  p << cplx(re[0], im[0]), cplx(re[1], im[1]), cplx(re[2], im[2]), cplx(re[3], im[3]);
  return p;
}

TransitionAmplitude transition_amplitude(const SpectralDecomposition& spec, int k, int j, double t) {
  const int n = spec.size();
  if (k < 1 || k > n || j < 1 || j > n) {
    throw DomainError(fmt::format("node index ({}, {}) outside 1..{}", k, j, n));
  }
  cplx sum{0.0, 0.0};
  for (int m = 0; m < n; ++m) {
    sum += spec.vectors(k - 1, m) * spec.vectors(j - 1, m) * std::polar(1.0, -spec.energies(m) * t);
  }
  return {sum};
}

AmplitudeMatrixP amplitude_matrix(const SpectralDecomposition& spec, double t) {
  return {AmplitudeEvaluator(spec).at(t)};
}

FVector sender_to_f(const AmplitudeMatrixP& p, const SenderState& s) {
  const Eigen::Vector2cd f = p.p * s.excitation();
  return {s.a0, f(0), f(1)};
}

}  // namespace spinrsc
