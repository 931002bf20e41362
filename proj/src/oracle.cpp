#include "spinrsc/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <random>
#include <vector>

#include <fmt/format.h>

#include "spinrsc/errors.hpp"

namespace spinrsc::oracle {

namespace {

constexpr int kPartitions = 64;

using Op = std::array<std::array<cplx, 2>, 2>;

// Spin-1/2 projections, indexed [out][in] with 0 = ground, 1 = excited.
const Op kIx{{{cplx{0.0, 0.0}, cplx{0.5, 0.0}}, {cplx{0.5, 0.0}, cplx{0.0, 0.0}}}};
const Op kIy{{{cplx{0.0, 0.0}, cplx{0.0, -0.5}}, {cplx{0.0, 0.5}, cplx{0.0, 0.0}}}};

void check_length(int n) {
  if (n < 2 || n > kMaxFullSpaceLength) {
    throw DomainError(fmt::format("full-space oracle supports 2 <= N <= {}, got {}", kMaxFullSpaceLength, n));
  }
}

double coupling(CouplingKind kind, int i, int j) {
  const int dist = std::abs(i - j);
  if (kind == CouplingKind::NearestNeighbor) return dist == 1 ? 1.0 : 0.0;
  return std::pow(static_cast<double>(dist), -3.0);
}

std::uint32_t node_mask(int node) { return node == 0 ? 0u : (1u << (node - 1)); }

}  // namespace

Eigen::MatrixXd full_hamiltonian(const CouplingModel& model) {
  check_length(model.n);
  const int n = model.n;
  const std::uint32_t dim = 1u << n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (std::uint32_t in = 0; in < dim; ++in) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double d = coupling(model.kind, i, j);
        if (d == 0.0) continue;
        const int bi = (in >> i) & 1;
        const int bj = (in >> j) & 1;
        for (int oi = 0; oi < 2; ++oi) {
          for (int oj = 0; oj < 2; ++oj) {
            const cplx amp = kIx[oi][bi] * kIx[oj][bj] + kIy[oi][bi] * kIy[oj][bj];
            if (amp == cplx{0.0, 0.0}) continue;
            if (amp.imag() != 0.0) {
              throw NumericalError("XY flip-flop term produced a complex matrix element");
            }
            std::uint32_t out = in & ~((1u << i) | (1u << j));
            out |= (static_cast<std::uint32_t>(oi) << i) | (static_cast<std::uint32_t>(oj) << j);
            h(out, in) += d * amp.real();
          }
        }
      }
    }
  }
  return h;
}

Eigen::VectorXd total_iz(int n) {
  check_length(n);
  const std::uint32_t dim = 1u << n;
  Eigen::VectorXd iz(dim);
  for (std::uint32_t s = 0; s < dim; ++s) {
    iz(s) = 0.5 * n - static_cast<double>(std::popcount(s));
  }
  return iz;
}

FullSpaceEvolution::FullSpaceEvolution(const CouplingModel& model) : n_(model.n) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(full_hamiltonian(model));
  if (solver.info() != Eigen::Success) {
    throw NumericalError("full-space eigensolver did not converge");
  }
  energies_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

cplx FullSpaceEvolution::amplitude(int k, int j, double t) const {
  if (k < 0 || k > n_ || j < 0 || j > n_) {
    throw DomainError(fmt::format("node index ({}, {}) outside 0..{}", k, j, n_));
  }
  const std::uint32_t row = node_mask(k);
  const std::uint32_t col = node_mask(j);
  cplx sum{0.0, 0.0};
  for (Eigen::Index m = 0; m < energies_.size(); ++m) {
    sum += vectors_(row, m) * vectors_(col, m) * std::polar(1.0, -energies_(m) * t);
  }
  return sum;
}

cplx full_transition_amplitude(const CouplingModel& model, int k, int j, double t) {
  return FullSpaceEvolution(model).amplitude(k, j, t);
}

double sample_max_transfer(const AmplitudeMatrixP& p, SampleMode mode, std::int64_t samples, std::uint64_t seed,
                           Execution exec) {
  if (samples < 1) throw DomainError("sample count must be >= 1");
  Eigen::Matrix2cd form = p.p;
  if (mode == SampleMode::LastNodeOnly) form.row(0).setZero();

  std::vector<double> best(kPartitions, 0.0);
  kernels::for_each_index(
      kPartitions,
      [&](std::size_t part) {
        const std::int64_t share =
            samples / kPartitions + (static_cast<std::int64_t>(part) < samples % kPartitions ? 1 : 0);
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(part)};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> gauss;
        double local = 0.0;
        for (std::int64_t s = 0; s < share; ++s) {
          Eigen::Vector2cd a;
          a(0) = cplx{gauss(rng), gauss(rng)};
          a(1) = cplx{gauss(rng), gauss(rng)};
          a.normalize();
          local = std::max(local, (form * a).squaredNorm());
        }
        best[part] = local;
      },
      exec);
  return *std::max_element(best.begin(), best.end());
}

double max_amplitude_deviation(const CouplingModel& model, double t) {
  const FullSpaceEvolution full(model);
  const auto spec = decompose_chain(model);
  double worst = 0.0;
  for (int k = 1; k <= model.n; ++k) {
    for (int j = 1; j <= model.n; ++j) {
      worst = std::max(worst, std::abs(full.amplitude(k, j, t) - transition_amplitude(spec, k, j, t).value));
    }
  }
  return worst;
}

}  // namespace spinrsc::oracle
