#pragma once

// Internal ODE engine shared by the exact transfer matrix and the Born
// recursion. State is advanced in x; the generator is
//   G(x) = (v(x) / 2k) [[1, e^{-2ikx}], [-e^{2ikx}, -1]],
// and deltas enter as exact jumps.

#include <string>
#include <vector>

#include "wavetm/potential.hpp"
#include "wavetm/transfer.hpp"

namespace wavetm::detail {

/// U(+inf, -inf) for i dU/dx = G U. Any k != 0.
Mat2 evolve_exact(const PotentialSpec& spec, double k, const OdeOptions& opt,
                  std::vector<std::string>* warnings = nullptr);

/// M^(1) .. M^(orders) from i dA_l/dx = G A_{l-1}, A_0 = I. Any k != 0.
std::vector<Mat2> evolve_born(const PotentialSpec& spec, double k, int orders,
                              const OdeOptions& opt);

/// Largest |v(x; k)| over a sampling of the support (or over the deltas).
double peak_magnitude(const PotentialSpec& spec, double k);

}  // namespace wavetm::detail
