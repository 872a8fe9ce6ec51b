#include "doctest.h"
#include "test_util.hpp"
#include "wavetm/two_level.hpp"

using namespace wavetm;

TEST_CASE("free Hamiltonian is -sigma3") {
  const auto h = hamiltonian_at(PotentialSpec::zero(), 1.0, 0.5);
  CHECK(max_abs_diff(h.matrix, {-1.0, 0.0, 0.0, 1.0}) == 0.0);
  const auto hi = hamiltonian_at(PotentialSpec::zero(), 1.0, 0.5, Picture::Interaction);
  CHECK(max_abs_diff(hi.matrix, Mat2::zero()) == 0.0);
}

TEST_CASE("barrier interior matrices") {
  const cplx z{1.0, 0.5};
  const double k = 1.3, x = 0.7;
  const auto b = PotentialSpec::barrier(z, 2.0);
  const cplx w = z / (2 * k * k);
  const auto h = hamiltonian_at(b, k, k * x);
  CHECK(std::abs(h.w - w) < 1e-15);
  CHECK(max_abs_diff(h.matrix, {w - 1.0, w, -w, 1.0 - w}) < 1e-15);

  const auto h0 = hamiltonian_from_w(w, 0.0, Picture::Interaction);
  CHECK(max_abs_diff(h0.matrix, {w, w, -w, -w}) < 1e-15);

  const double tau = k * x;
  const auto hi = hamiltonian_at(b, k, tau, Picture::Interaction);
  const Mat2 want{w, w * std::exp(-2.0 * kI * tau), -w * std::exp(2.0 * kI * tau), -w};
  CHECK(max_abs_diff(hi.matrix, want) < 1e-15);
}

TEST_CASE("delta families have no Hamiltonian") {
  try {
    (void)hamiltonian_at(PotentialSpec::delta_pair(1.0, 1.0, 0.0, 1.0), 1.0, 0.0);
    FAIL("expected DistributionalPotential");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DistributionalPotential);
  }
}

TEST_CASE("property: trace and determinant") {
  for (int t = 0; t < 50; ++t) {
    const cplx w = test::uniform_cplx(3.0);
    const double tau = test::uniform(-10, 10);
    const Mat2 h = hamiltonian_from_w(w, tau, Picture::Schroedinger).matrix;
    CHECK(std::abs(h.trace()) < 1e-14);
    CHECK(std::abs(h.det() + (1.0 - 2.0 * w)) < 1e-13);
    const Mat2 hi = hamiltonian_from_w(w, tau, Picture::Interaction).matrix;
    CHECK(std::abs(hi.trace()) < 1e-14);
    CHECK(std::abs(hi.det()) < 1e-13);
  }
}

TEST_CASE("eigenvalues at reference couplings") {
  const double k = 1.7;
  auto at = [&](cplx v) {
    return spectral_diagnostic(PotentialSpec::barrier(v, 1.0), k, 0.5 * k);
  };
  const auto d0 = at(0.0);
  CHECK(std::abs(d0.e_plus - 1.0) < 1e-15);
  CHECK(std::abs(d0.e_minus + 1.0) < 1e-15);
  CHECK(d0.pseudo_hermitian_residual == 0.0);
  CHECK_FALSE(d0.exceptional);

  const auto d1 = at(k * k);
  CHECK(std::abs(d1.e_plus) < 1e-7);
  CHECK(std::abs(d1.e_minus) < 1e-7);
  CHECK(d1.exceptional);

  const auto d2 = at(2 * k * k);
  CHECK(std::abs(d2.e_plus - kI) < 1e-14);
  CHECK(std::abs(d2.e_minus + kI) < 1e-14);
}

TEST_CASE("property: eigenvalues are plus and minus the refractive index") {
  for (int t = 0; t < 30; ++t) {
    const cplx z = test::uniform_cplx(4.0);
    const double k = test::uniform(0.3, 3.0);
    const auto b = PotentialSpec::barrier(z, 1.0);
    const auto d = spectral_diagnostic(b, k, 0.5 * k);
    CHECK(std::abs(d.e_plus + d.e_minus) < 1e-15);
    CHECK(std::abs(d.e_plus - refractive_index(b, 0.5, k)) < 1e-15);
    CHECK(d.e_plus.real() >= 0.0);
  }
}

TEST_CASE("property: real potentials are pseudo-Hermitian") {
  const double k = 1.1;
  for (int t = 0; t < 40; ++t) {
    const double v = test::uniform(-5, 5);
    const auto d = diagnose_w(v / (2 * k * k));
    CHECK(d.pseudo_hermitian_residual == 0.0);
    if (v < k * k) {
      CHECK(d.e_plus.imag() == 0.0);
      CHECK(d.e_minus.imag() == 0.0);
    } else {
      CHECK(d.e_plus.real() == 0.0);
      CHECK(d.e_plus.imag() == doctest::Approx(-d.e_minus.imag()));
      CHECK(d.e_plus.imag() > 0.0);
    }
  }
  CHECK(diagnose_w({0.2, 0.1}).pseudo_hermitian_residual > 0.0);
}

TEST_CASE("eigenvector condition number diverges at the turning point") {
  double previous = 0.0;
  for (double delta : {1e-1, 1e-3, 1e-5, 1e-7, 1e-9}) {
    const auto d = diagnose_w(0.5 * (1.0 - delta));
    CHECK(d.eigenvector_condition > previous);
    previous = d.eigenvector_condition;
  }
  // Growth is delta^(-1/2).
  const double c1 = diagnose_w(0.5 * (1.0 - 1e-4)).eigenvector_condition;
  const double c2 = diagnose_w(0.5 * (1.0 - 1e-6)).eigenvector_condition;
  CHECK(c2 / c1 == doctest::Approx(10.0).epsilon(0.01));

  const auto ep = diagnose_w(0.5);
  CHECK(ep.exceptional);
  CHECK(ep.eigenvector_condition > 1.0 / kCoalescenceTolerance);
  CHECK_FALSE(diagnose_w(0.5 * (1.0 - 1e-6)).exceptional);
}

TEST_CASE("state vector reconstructs the wave and its derivative") {
  for (int t = 0; t < 20; ++t) {
    const cplx phi = test::uniform_cplx(2.0), dphi = test::uniform_cplx(2.0);
    const auto s = StateVector::from_wave(phi, dphi);
    CHECK(std::abs(s.phi() - phi) < 1e-15);
    CHECK(std::abs(s.phi_dot() - dphi) < 1e-15);
    CHECK(std::abs(s.psi1 + s.psi2 - phi) < 1e-15);
  }
}
