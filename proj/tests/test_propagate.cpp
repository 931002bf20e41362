#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "spinrsc/errors.hpp"
#include "spinrsc/oracle.hpp"
#include "spinrsc/propagate.hpp"

using namespace spinrsc;

TEST_CASE("amplitudes at t = 0 are the identity") {
  const auto spec = decompose_chain({CouplingKind::AllNode, 7});
  for (int k = 1; k <= 7; ++k) {
    for (int j = 1; j <= 7; ++j) {
      const auto p = transition_amplitude(spec, k, j, 0.0);
      CHECK(std::abs(p.value - cplx(k == j ? 1.0 : 0.0, 0.0)) < 1e-12);
    }
  }
  CHECK(amplitude_matrix(spec, 0.0).p.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("nearest-neighbour n=4 end-to-end amplitude at t = pi") {
  // Frozen from the analytic spectral sum (30-digit evaluation):
  // p_41(pi) = 0.441160972880932946... i
  const auto spec = decompose_chain({CouplingKind::NearestNeighbor, 4});
  const auto p = transition_amplitude(spec, 4, 1, std::numbers::pi);
  CHECK(std::abs(p.value.real()) < 1e-12);
  CHECK(std::abs(p.value.imag() - 0.44116097288093295) < 1e-12);
  CHECK(std::abs(p.value - testing::nn_amplitude(4, 4, 1, std::numbers::pi)) < 1e-12);
  CHECK(std::abs(p.phase() - 0.25) < 1e-12);
}

TEST_CASE("node indices are range-checked") {
  const auto spec = decompose_chain({CouplingKind::NearestNeighbor, 5});
  CHECK_THROWS_AS(transition_amplitude(spec, 0, 1, 1.0), DomainError);
  CHECK_THROWS_AS(transition_amplitude(spec, 1, 6, 1.0), DomainError);
}

TEST_CASE("phase is reported in turns within [0, 1)") {
  CHECK(phase_turns(cplx{1.0, 0.0}) == 0.0);
  CHECK(phase_turns(cplx{0.0, -1.0}) == doctest::Approx(0.75));
  CHECK(phase_turns(cplx{-1.0, -1e-300}) < 1.0);
  CHECK(phase_turns(cplx{-1.0, 0.0}) == doctest::Approx(0.5));
}

TEST_CASE("amplitude matrix layout and unitarity bound") {
  const auto spec = decompose_chain({CouplingKind::NearestNeighbor, 6});
  for (double t : {0.3, 2.0, 7.7, 19.0}) {
    const auto p = amplitude_matrix(spec, t);
    CHECK(std::abs(p.p(0, 0) - transition_amplitude(spec, 5, 1, t).value) < 1e-13);
    CHECK(std::abs(p.p(0, 1) - transition_amplitude(spec, 5, 2, t).value) < 1e-13);
    CHECK(std::abs(p.p(1, 0) - transition_amplitude(spec, 6, 1, t).value) < 1e-13);
    CHECK(std::abs(p.p(1, 1) - transition_amplitude(spec, 6, 2, t).value) < 1e-13);
    CHECK(p.p.col(0).squaredNorm() <= 1.0 + 1e-12);
    CHECK(p.p.col(1).squaredNorm() <= 1.0 + 1e-12);
    CHECK(p.p.norm() <= std::sqrt(2.0) + 1e-12);
  }
}

TEST_CASE("all-node n=5 amplitudes match the full-space oracle at t = 2") {
  const auto p = amplitude_matrix(decompose_chain({CouplingKind::AllNode, 5}), 2.0);
  const oracle::FullSpaceEvolution full({CouplingKind::AllNode, 5});
  CHECK(std::abs(p.p(0, 0) - full.amplitude(4, 1, 2.0)) < 1e-10);
  CHECK(std::abs(p.p(0, 1) - full.amplitude(4, 2, 2.0)) < 1e-10);
  CHECK(std::abs(p.p(1, 0) - full.amplitude(5, 1, 2.0)) < 1e-10);
  CHECK(std::abs(p.p(1, 1) - full.amplitude(5, 2, 2.0)) < 1e-10);
}

TEST_CASE("probability conservation, symmetry and time reversal") {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> length(4, 60);
  std::uniform_real_distribution<double> time(0.0, 80.0);
  for (int trial = 0; trial < 40; ++trial) {
    const auto kind = trial % 2 ? CouplingKind::AllNode : CouplingKind::NearestNeighbor;
    const int n = length(rng);
    const double t = trial == 0 ? 1.7 : time(rng);
    const auto spec = decompose_chain({kind, n});
    std::uniform_int_distribution<int> node(1, n);
    const int j = node(rng);
    const int k = node(rng);
    double total = 0.0;
    for (int q = 1; q <= n; ++q) total += std::norm(transition_amplitude(spec, q, j, t).value);
    CHECK(std::abs(total - 1.0) < 1e-10);
    CHECK(std::abs(transition_amplitude(spec, k, j, t).value - transition_amplitude(spec, j, k, t).value) < 1e-12);
    CHECK(std::abs(transition_amplitude(spec, k, j, -t).value -
                   std::conj(transition_amplitude(spec, k, j, t).value)) < 1e-12);
  }
}

TEST_CASE("sender_to_f is linear in the sender amplitudes") {
  const auto p = amplitude_matrix(decompose_chain({CouplingKind::AllNode, 8}), 6.3);

  const auto ground = sender_to_f(p, {1.0, 0.0, 0.0});
  CHECK(ground.f0 == 1.0);
  CHECK(ground.f_nm1 == cplx{0.0, 0.0});
  CHECK(ground.f_n == cplx{0.0, 0.0});

  const auto first = sender_to_f(p, {0.0, 1.0, 0.0});
  CHECK(first.f_nm1 == p.p(0, 0));
  CHECK(first.f_n == p.p(1, 0));

  const double h = 1.0 / std::sqrt(2.0);
  const auto mixed = sender_to_f(p, {0.0, h, h});
  CHECK(std::abs(mixed.f_nm1 - h * (p.p(0, 0) + p.p(0, 1))) < 1e-15);
  CHECK(std::abs(mixed.f_n - h * (p.p(1, 0) + p.p(1, 1))) < 1e-15);
  CHECK(mixed.f0 * mixed.f0 + mixed.transfer_probability() <= 1.0 + 1e-12);

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = testing::random_unit2(rng);
    const auto b = testing::random_unit2(rng);
    const cplx alpha{0.3, -0.8};
    const cplx beta{1.1, 0.4};
    const Eigen::Vector2cd combo = alpha * a + beta * b;
    const double norm = combo.norm();
    const auto fa = sender_to_f(p, {0.0, a(0), a(1)});
    const auto fb = sender_to_f(p, {0.0, b(0), b(1)});
    const auto fc = sender_to_f(p, {0.0, combo(0) / norm, combo(1) / norm});
    const Eigen::Vector2cd expected = (alpha * fa.excitation() + beta * fb.excitation()) / norm;
    CHECK((fc.excitation() - expected).norm() < 1e-14);
  }
}

TEST_CASE("sender normalization is validated") {
  CHECK_NOTHROW(validate(SenderState{0.6, {0.0, 0.8}, {0.0, 0.0}}));
  CHECK_THROWS_AS(validate(SenderState{0.6, {0.6, 0.0}, {0.0, 0.0}}), DomainError);
}
