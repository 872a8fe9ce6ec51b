#pragma once

// Born (Dyson) expansion M = I + sum_l M^(l). Terms of any order come from the
// recursion i dA_l/dx = G(x) A_{l-1}; orders one and two also have closed forms
// in terms of the single and ordered double Fourier transforms of v.

#include <optional>
#include <vector>

#include "wavetm/transfer.hpp"

namespace wavetm {

struct BornTerm {
  int order = 1;
  Mat2 matrix;
  double k = 0.0;
  /// max |recursion - closed form| when a cross-check was requested.
  std::optional<double> closed_form_residual;
};

struct BornOptions {
  double tol = 1e-12;
  bool cross_check = false;  // orders 1 and 2 only
};

BornTerm born_term(const PotentialSpec& spec, double k, int order,
                   const BornOptions& opt = {});

/// Orders 1..max_order from a single integration.
std::vector<BornTerm> born_terms(const PotentialSpec& spec, double k, int max_order,
                                 const BornOptions& opt = {});

/// (-i/2k) [[v(0), v(2k)], [-v(-2k), -v(0)]].
Mat2 born_first_closed(const PotentialSpec& spec, double k);

/// (-1/4k^2) [[v(0,0) - v(-2k,2k), v(2k,0) - v(0,2k)],
///            [v(-2k,0) - v(0,-2k), v(0,0) - v(2k,-2k)]].
Mat2 born_second_closed(const PotentialSpec& spec, double k);

struct BornSum {
  TransferMatrix matrix;  // method = Born, born_order = N
  std::vector<BornTerm> terms;
  double rho = 0.0;                // ||M^(N)|| / ||M^(N-1)||
  double residual_estimate = 0.0;  // ||M^(N)|| rho / (1 - rho)
  bool convergent = false;         // false flags a nonconvergent series
};

BornSum born_sum(const PotentialSpec& spec, double k, int max_order,
                 const BornOptions& opt = {});

/// Rl = v(-2k) / (2ik - v(0)), Rr = v(2k) / (2ik - v(0)), T = 2ik / (2ik - v(0)).
ScatteringAmplitudes amplitudes_first_order(const PotentialSpec& spec, double k);

/// Second-order amplitudes over D = 4k^2 + 2i v(0) k + v(2k,-2k) - v(0,0).
ScatteringAmplitudes amplitudes_second_order(const PotentialSpec& spec, double k);

}  // namespace wavetm
