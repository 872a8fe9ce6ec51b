#pragma once

// Exact transfer matrices. The ODE engine integrates the interaction-picture
// evolution i dU/dx = (v(x)/2k) [[1, e^{-2ikx}], [-e^{2ikx}, -1]] U across
// the support; the limit U(+inf, -inf) is the transfer matrix M.

#include <string>
#include <vector>

#include "wavetm/core.hpp"
#include "wavetm/potential.hpp"

namespace wavetm {

enum class Method { Ode, Analytic, Born };

struct TransferMatrix {
  Mat2 m = Mat2::identity();
  double k = 0.0;
  Method method = Method::Ode;
  int born_order = 0;              // for Method::Born
  std::vector<std::string> warnings;

  double det_residual() const { return std::abs(m.det() - 1.0); }
  std::string method_name() const;
};

enum class Order { Exact, Born1, Born2, BornN };

struct ScatteringAmplitudes {
  cplx r_left, r_right, t{1.0, 0.0};
  double k = 0.0;
  Order order = Order::Exact;
  int born_order = 0;
};

struct OdeOptions {
  double tol = 1e-10;
  long max_steps = 20'000'000;
  /// Relative tail level above which an infinite-range window is reported.
  double truncation_threshold = 1e-12;
};

/// Throws InvalidWavenumber for k <= 0 and IntegrationFailure on step underflow.
TransferMatrix transfer_matrix_ode(const PotentialSpec& spec, double k,
                                   const OdeOptions& opt = {});

/// Same engine at any nonzero real k, including k < 0 (analytic continuation
/// of the entries used by the M(-k) symmetry checks).
TransferMatrix transfer_matrix_ode_continued(const PotentialSpec& spec, double k,
                                             const OdeOptions& opt = {});

/// Closed forms for rectangular barriers and delta pairs; any nonzero k.
TransferMatrix analytic_transfer(const PotentialSpec& spec, double k);

/// Single impulse z delta(x - a) at wavenumber k: I - i (z / 2k) N(ka).
Mat2 delta_jump(cplx z, double a, double k);

/// T = 1/M22, Rr = M12/M22, Rl = -M21/M22. Throws SpectralSingularity when
/// |M22| < 1e-12 ||M||. For exact methods the relation M11 = T - Rl Rr / T is
/// checked to 1e-9.
ScatteringAmplitudes amplitudes_from_transfer(const TransferMatrix& M);

/// Inverse of the above: the unit-determinant matrix with these amplitudes.
Mat2 transfer_from_amplitudes(const ScatteringAmplitudes& a);

/// m_right * m_left; the left factor describes the potential further left.
TransferMatrix compose(const TransferMatrix& m_right, const TransferMatrix& m_left);

}  // namespace wavetm
