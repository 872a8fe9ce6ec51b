#pragma once

// The two-level Hamiltonian H(tau) = -sigma3 + w(tau) N that rewrites the
// stationary Schroedinger equation as a time-dependent one in tau = k x,
// its interaction-picture form, and eigenvalue diagnostics.

#include "wavetm/core.hpp"
#include "wavetm/potential.hpp"

namespace wavetm {

enum class Picture { Schroedinger, Interaction };

struct TwoLevelHamiltonian {
  Mat2 matrix;
  double tau = 0.0;
  cplx w;  // v(tau/k) / (2 k^2)
  Picture picture = Picture::Schroedinger;
};

/// Psi = (phi - i phi', phi + i phi') / 2, so phi = Psi1 + Psi2 and
/// phi' = i (Psi1 - Psi2).
struct StateVector {
  cplx psi1, psi2;

  static StateVector from_wave(cplx phi, cplx phi_dot) {
    return {0.5 * (phi - kI * phi_dot), 0.5 * (phi + kI * phi_dot)};
  }
  cplx phi() const { return psi1 + psi2; }
  cplx phi_dot() const { return kI * (psi1 - psi2); }
};

struct SpectralDiagnostic {
  cplx e_plus, e_minus;
  cplx n_of_tau;  // sqrt(1 - 2w), principal branch
  bool exceptional = false;
  double pseudo_hermitian_residual = 0.0;  // ||H^dagger - sigma3 H sigma3||_F
  double eigenvector_condition = 1.0;      // infinite at coalescence
};

inline constexpr double kCoalescenceTolerance = 1e-9;

TwoLevelHamiltonian hamiltonian_from_w(cplx w, double tau, Picture picture);

/// Throws DistributionalPotential for delta families, InvalidWavenumber for k <= 0.
TwoLevelHamiltonian hamiltonian_at(const PotentialSpec& spec, double k, double tau,
                                   Picture picture = Picture::Schroedinger);

SpectralDiagnostic diagnose_w(cplx w, double coalescence_tol = kCoalescenceTolerance);

SpectralDiagnostic spectral_diagnostic(const PotentialSpec& spec, double k, double tau,
                                       double coalescence_tol = kCoalescenceTolerance);

}  // namespace wavetm
