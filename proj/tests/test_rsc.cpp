#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "spinrsc/errors.hpp"
#include "spinrsc/rsc.hpp"

using namespace spinrsc;
using testing::max_abs;

namespace {

void check_density(const Eigen::MatrixXcd& rho, double tol) {
  CHECK(max_abs(rho - rho.adjoint()) < tol);
  CHECK(std::abs(rho.trace() - cplx(1.0, 0.0)) < tol);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho);
  CHECK(solver.eigenvalues().minCoeff() >= -tol);
}

const OptimalProtocol& protocol_all5() {
  static const OptimalProtocol p =
      optimize_protocol(decompose_chain({CouplingKind::AllNode, 5}), CouplingKind::AllNode, true);
  return p;
}

}  // namespace

TEST_CASE("control parameters map onto sender amplitudes") {
  auto s = control_to_amplitudes({1.0, 0.3, 0.2, 0.9});
  CHECK(s.a0 == doctest::Approx(1.0));
  CHECK(std::abs(s.a1) < 1e-15);
  CHECK(std::abs(s.a2) < 1e-15);

  s = control_to_amplitudes({0.0, 0.0, 0.0, 0.4});
  CHECK(s.a0 == 0.0);
  CHECK(s.a1 == cplx(1.0, 0.0));
  CHECK(std::abs(s.a2) < 1e-15);

  s = control_to_amplitudes({0.0, 1.0, 0.7, 0.25});
  CHECK(std::abs(s.a1) < 1e-15);
  CHECK(std::abs(s.a2 - cplx(0.0, 1.0)) < 1e-15);

  CHECK_THROWS_AS(control_to_amplitudes({1.2, 0.0, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(control_to_amplitudes({0.0, 0.0, -0.1, 0.0}), DomainError);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 0.999);
  for (int trial = 0; trial < 200; ++trial) {
    const ControlParams c{u(rng), u(rng), u(rng), u(rng)};
    const auto sender = control_to_amplitudes(c);
    CHECK(std::abs(sender.norm_sq() - 1.0) < 1e-12);
    const auto back = control_to_amplitudes(amplitudes_to_control(sender));
    CHECK(std::abs(back.a0 - sender.a0) < 1e-12);
    CHECK(std::abs(back.a1 - sender.a1) < 1e-12);
    CHECK(std::abs(back.a2 - sender.a2) < 1e-12);
  }
}

TEST_CASE("extended receiver density layout") {
  auto rho = extended_receiver_density({1.0, 0.0, 0.0}).rho;
  Eigen::Matrix4cd expected = Eigen::Matrix4cd::Zero();
  expected(0, 0) = 1.0;
  CHECK(rho == expected);

  rho = extended_receiver_density({0.0, 0.0, 1.0}).rho;
  expected.setZero();
  expected(2, 2) = 1.0;
  CHECK(rho == expected);

  const FVector f{0.5, cplx(0.3, -0.2), cplx(-0.1, 0.6)};
  rho = extended_receiver_density(f).rho;
  CHECK(rho(0, 1) == 0.5 * std::conj(f.f_nm1));
  CHECK(rho(0, 2) == 0.5 * std::conj(f.f_n));
  CHECK(rho(1, 2) == f.f_nm1 * std::conj(f.f_n));
  CHECK(rho.row(3).cwiseAbs().maxCoeff() == 0.0);
  CHECK(rho.col(3).cwiseAbs().maxCoeff() == 0.0);
  check_density(rho, 1e-12);

  CHECK_THROWS_AS(extended_receiver_density({0.9, cplx(0.5, 0.0), cplx(0.0, 0.0)}), DomainError);
}

TEST_CASE("extended receiver eigenvalues") {
  auto [plus, minus] = extended_eigenvalues(0.0, 0.7);
  CHECK(plus == 1.0);
  CHECK(minus == 0.0);
  std::tie(plus, minus) = extended_eigenvalues(0.5, 0.0);
  CHECK(plus == 0.5);
  std::tie(plus, minus) = extended_eigenvalues(0.25, 0.0);
  CHECK(plus == 0.75);
  CHECK(minus == 0.25);
  CHECK_THROWS_AS(extended_eigenvalues(0.8, 0.6), DomainError);
  CHECK_THROWS_AS(extended_eigenvalues(-0.1, 0.0), DomainError);
}

TEST_CASE("optimal sender state gives extended eigenvalues {1 - R^2, R^2, 0, 0}") {
  const auto& protocol = protocol_all5();
  const auto f = sender_to_f(protocol.p, protocol.a_opt);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(extended_receiver_density(f).rho);
  const auto ev = solver.eigenvalues();
  const double r2 = protocol.r_max_sq;
  CHECK(std::abs(ev(3) - std::max(r2, 1.0 - r2)) < 1e-10);
  CHECK(std::abs(ev(2) - std::min(r2, 1.0 - r2)) < 1e-10);
  CHECK(std::abs(ev(1)) < 1e-10);
  CHECK(std::abs(ev(0)) < 1e-10);
}

TEST_CASE("receiver transform and partial trace") {
  const auto identity = apply_v_and_reduce(extended_receiver_density({0.0, 0.0, 1.0}), Eigen::Matrix2cd::Identity());
  CHECK(max_abs(identity.rho - Eigen::Vector2cd(0.0, 1.0).asDiagonal().toDenseMatrix()) < 1e-15);

  // Excitation on N-1 stays out of the receiver without a transform.
  const auto on_nm1 = apply_v_and_reduce(extended_receiver_density({0.0, 1.0, 0.0}), Eigen::Matrix2cd::Identity());
  CHECK(max_abs(on_nm1.rho - Eigen::Vector2cd(1.0, 0.0).asDiagonal().toDenseMatrix()) < 1e-15);

  const auto& protocol = protocol_all5();
  const auto f = sender_to_f(protocol.p, protocol.a_opt);
  const auto rho_r = apply_v_and_reduce(extended_receiver_density(f), protocol.svd.v0);
  Eigen::Matrix2cd expected = Eigen::Matrix2cd::Zero();
  expected(0, 0) = 1.0 - protocol.r_max_sq;
  expected(1, 1) = protocol.r_max_sq;
  CHECK(max_abs(rho_r.rho - expected) < 1e-10);

  Eigen::Matrix2cd skew;
  skew << 1.0, 0.1, 0.0, 1.0;
  CHECK_THROWS_AS(apply_v_and_reduce(extended_receiver_density(f), skew), DomainError);
}

TEST_CASE("receiver population matches the closed-form amplitude") {
  const auto& protocol = protocol_all5();
  const Eigen::Vector2cd f_max = protocol.p.p * protocol.a_opt.excitation();
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto run = create_state(protocol, {u(rng), u(rng), u(rng), u(rng)});
    const cplx z = testing::closed_form_z(run.f.excitation(), f_max);
    CHECK(std::abs(run.receiver.rho(1, 1).real() - std::norm(z)) < 1e-10);
    // The explicit path's amplitude is the conjugate of the closed form.
    CHECK(std::abs(run.z - std::conj(z)) < 1e-12);
    CHECK(std::abs(run.receiver.rho(1, 0) - run.f.f0 * run.z) < 1e-12);
  }
}

TEST_CASE("creatable parameters of special states") {
  ReceiverDensity ground;
  ground.rho(0, 0) = 1.0;
  auto params = creatable_params(ground);
  CHECK(params.lam == 1.0);
  CHECK(params.beta1 == 0.0);
  CHECK(params.beta2 == 0.0);

  // R_z^2 = 1/2, R0 = 0.
  ReceiverDensity half;
  half.rho(0, 0) = 0.5;
  half.rho(1, 1) = 0.5;
  CHECK(creatable_params(half).lam == 0.5);

  // R_z^2 = 1/2, R0 = 1/sqrt(2): (1 - 2R_z^2) = 0 and 4 R_z^2 R0^2 = 1, so
  // lambda = 1 and beta1 pi = arccos(0) = pi / 2.
  const double rz = std::sqrt(0.5);
  const double r0 = std::sqrt(0.5);
  const cplx z = std::polar(rz, 2.0 * testing::kPi * 0.3);
  ReceiverDensity pure;
  pure.rho << 1.0 - rz * rz, r0 * std::conj(z), r0 * z, rz * rz;
  params = creatable_params(pure);
  CHECK(params.lam == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(params.beta1 == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(params.beta2 == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(max_abs(params.reconstruct().rho - pure.rho) < 1e-10);
}

TEST_CASE("pipeline invariants on random control parameters") {
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto [kind, n, with_v] : std::vector<std::tuple<CouplingKind, int, bool>>{
           {CouplingKind::AllNode, 5, true},
           {CouplingKind::AllNode, 23, true},
           {CouplingKind::AllNode, 23, false},
           {CouplingKind::NearestNeighbor, 15, false},
           {CouplingKind::AllNode, 60, true}}) {
    CAPTURE(n);
    const auto protocol = optimize_protocol(decompose_chain({kind, n}), kind, with_v);
    for (int trial = 0; trial < 1000; ++trial) {
      const auto run = create_state(protocol, {u(rng), u(rng), u(rng), u(rng)});
      check_density(run.extended.rho, 1e-10);
      check_density(run.receiver.rho, 1e-10);

      // Extended-receiver spectrum against the closed form.
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> ext(run.extended.rho);
      const auto [plus, minus] = extended_eigenvalues(run.f.transfer_probability(), run.f.f0);
      CHECK(std::abs(ext.eigenvalues()(3) - plus) < 1e-10);
      CHECK(std::abs(ext.eigenvalues()(2) - minus) < 1e-10);

      // lambda is the larger eigenvalue of the receiver state.
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> recv(run.receiver.rho);
      CHECK(std::abs(run.params.lam - recv.eigenvalues()(1)) < 1e-10);
      CHECK(run.params.lam >= 0.5 - 1e-12);
      CHECK(run.params.lam <= 1.0 + 1e-12);
      CHECK(run.params.beta1 >= 0.0);
      CHECK(run.params.beta1 <= 1.0);
      CHECK(run.params.beta2 >= 0.0);
      CHECK(run.params.beta2 < 1.0);
      CHECK(max_abs(run.params.reconstruct().rho - run.receiver.rho) < 1e-10);
    }
  }
}

TEST_CASE("optimal control parameters pin the receiver at R_max") {
  for (int n : {5, 20, 50}) {
    const auto protocol =
        optimize_protocol(decompose_chain({CouplingKind::AllNode, n}), CouplingKind::AllNode, true);
    const auto run = create_state(protocol, amplitudes_to_control(protocol.a_opt));
    const double r2 = protocol.r_max_sq;
    CHECK(std::abs(std::norm(run.z) - r2) < 1e-10);
    CHECK(std::abs(run.params.lam - std::max(r2, 1.0 - r2)) < 1e-10);
  }
}

TEST_CASE("region grid layout") {
  const auto& protocol = protocol_all5();
  const auto grid = region_grid(protocol, 0.1);
  REQUIRE(grid.points.size() == 121);
  CHECK(grid.points[0].alpha1 == 0.0);
  CHECK(grid.points[1].alpha2 == 0.1);
  CHECK(grid.points[11].alpha1 == 0.1);
  CHECK(grid.points[33].alpha1 == 0.3);
  CHECK(grid.points.back().alpha1 == 1.0);
  CHECK(grid.points.back().alpha2 == 1.0);
  for (std::size_t i = 110; i < 121; ++i) {
    // alpha1 = 1 is the apex: everything stays in the ground state.
    CHECK(grid.points[i].params.lam == 1.0);
    CHECK(grid.points[i].params.beta1 == 0.0);
  }
  const auto odd = region_grid(protocol, 0.3);
  CHECK(odd.points.size() == 25);
  CHECK(odd.points.back().alpha1 == 1.0);
  CHECK_THROWS_AS(region_grid(protocol, 0.0), DomainError);
  CHECK_THROWS_AS(region_grid(protocol, 0.6), DomainError);
}

TEST_CASE("beta2 coverage under a common sender phase") {
  const auto& protocol = protocol_all5();
  const auto cover = beta2_coverage(protocol, 0.0, 0.5, 100);
  REQUIRE(cover.defined);
  CHECK(cover.beta2.size() == 100);
  CHECK(cover.max_gap <= 0.02);
  CHECK(std::abs(cover.max_gap - 0.01) < 1e-9);
  for (double b : cover.beta2) {
    CHECK(b >= 0.0);
    CHECK(b < 1.0);
  }

  CHECK_FALSE(beta2_coverage(protocol, 1.0, 0.5, 100).defined);

  // Varying phi2 alone cannot wrap the phase of z when the node-1 term
  // dominates, which is the case here.
  const auto partial = beta2_coverage(protocol, 0.0, 0.5, 100, PhaseSweep::SecondOnly);
  REQUIRE(partial.defined);
  CHECK(partial.max_gap > 0.02);
}
