#pragma once

// Perturbative inverse scattering from first-Born data. With
//   D^(x) = (1/2pi) int e^{ikx} D(k) dk,
// the potential follows from
//   M12:  v(x) = 2 d/dx M12^(2x)          M21:  v(x) = 2 d/dx M21^(-2x)
//   Rr:   v(x) = 2 [d/dx - alpha] Rr^(2x)
//   Rl:   v(x) = -2 [d/dx + alpha] Rl^(-2x)
// where alpha = v~(0) and the derivative acts on the composite function.

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wavetm/potential.hpp"

namespace wavetm {

enum class DataKind { M12, M21, RRight, RLeft };

const char* to_string(DataKind k) noexcept;
std::optional<DataKind> data_kind_from_string(const std::string& name);

using SpectralFunction = std::function<cplx(double)>;

struct FirstBornData {
  DataKind kind = DataKind::M12;
  std::string name;  // registered analytic name, empty otherwise

  // Exactly one of the two representations is set.
  SpectralFunction handle;
  std::vector<double> k;  // tabulated, sorted, symmetric about 0
  std::vector<cplx> values;

  /// Closed-form D^(x) and its derivative, used when registered.
  SpectralFunction closed_inverse;
  SpectralFunction closed_inverse_derivative;

  /// T1(k) or a known alpha, used when the alpha denominator degenerates.
  SpectralFunction transmission;
  std::optional<cplx> alpha;

  static FirstBornData analytic(DataKind kind, SpectralFunction f, std::string name = {});
  /// Throws InvalidInput unless the grid is sorted, symmetric and finite.
  static FirstBornData tabulated(DataKind kind, std::vector<double> k,
                                 std::vector<cplx> values);

  bool is_tabulated() const { return !handle; }
  /// Value at k (linear interpolation for tables, zero outside the grid).
  cplx operator()(double kk) const;
};

/// Registered analytic data sets, by name, with their parameters:
///   barrier_m12 {z, L}            z (e^{-2ikL} - 1) / 4k^2
///   two_block_m12 {z, L, J}       z (e^{-2ikL} - 1)(e^{-2ik(L+J)} - 1) / 4k^2
///   two_block_m12_literal {z, L, J}  same with e^{-ik(L+J)} in the second factor
///   gaussian_m12 {z, L}           z e^{-(Lk)^2}
///   gaussian_over_k_m12 {z, L}    (z / Lk) e^{-(Lk)^2}
///   eg01_rl {z, K, L}             z (k/K - 1)^2 e^{-L^2 (k - K)^2}
/// Complex z is passed as z_re, z_im. Throws InvalidInput for unknown names.
FirstBornData registered_data(const std::string& name,
                              const std::map<std::string, double>& params);
std::vector<std::string> registered_names();

/// First-Born data of a potential: M12 = -i v~(2k)/2k, M21 = i v~(-2k)/2k,
/// Rr = v~(2k)/(2ik - v~(0)), Rl = v~(-2k)/(2ik - v~(0)); T1 is attached.
/// k-squared couplings are inverted for v / k^2.
FirstBornData first_born_data(const PotentialSpec& spec, DataKind kind);

struct InverseOptions {
  double k_max = 0.0;          // 0: chosen from the data decay
  double k_cap = 5000.0;       // upper bound for the automatic choice
  double decay_threshold = 1e-8;
  double warn_threshold = 1e-6;
  double taper_fraction = 0.1;
  bool taper = true;
  bool use_closed_form = true;
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  int max_doublings = 8;
  /// |1 + int D^| below this counts as a degenerate alpha denominator.
  double alpha_degeneracy = 1e-6;
  double tail_tolerance = 1e-9;
  int max_window_doublings = 6;
  /// Median Richardson error of the derivative, relative to its peak.
  double smoothness_bound = 1e-3;
};

struct InverseTransform {
  std::vector<double> x;
  std::vector<cplx> values;
  double k_max = 0.0;
  bool tapered = false;
  bool closed_form = false;
  std::vector<std::string> warnings;
};

/// D^(x) on the given points. Tabulated data use a Filon rule on the grid;
/// handles use folded Gauss-Legendre panels on [0, k_max] (principal value at 0).
InverseTransform inverse_fourier(const FirstBornData& data, std::span<const double> x,
                                 const InverseOptions& opt = {});

enum class Route { M12, M21, RightReflection, LeftReflection };

const char* to_string(Route r) noexcept;
std::optional<Route> route_from_string(const std::string& name);
DataKind route_data_kind(Route r);

struct ReconstructedPotential {
  std::vector<double> x;
  std::vector<cplx> v;
  Route route = Route::M12;
  cplx alpha;                 // v~(0): solved (reflection routes) or read off the data
  std::string alpha_source;   // "tails", "transmission", "supplied", "data"
  double k_max = 0.0;
  bool tapered = false;
  bool closed_form = false;
  double tail_window = 0.0;   // |x| extent used for the tail limits
  double smoothness = 0.0;    // median Richardson derivative error / peak
  std::vector<std::string> warnings;
};

/// M12 or M21 data. Throws NonSmoothData when the derivative is dominated by noise.
ReconstructedPotential potential_from_offdiagonal(const FirstBornData& data,
                                                  std::span<const double> x,
                                                  const InverseOptions& opt = {});
/// Throws DegenerateAlphaDenominator, TailNonconvergence, NonSmoothData.
ReconstructedPotential potential_from_right_reflection(const FirstBornData& data,
                                                       std::span<const double> x,
                                                       const InverseOptions& opt = {});
ReconstructedPotential potential_from_left_reflection(const FirstBornData& data,
                                                      std::span<const double> x,
                                                      const InverseOptions& opt = {});

ReconstructedPotential reconstruct(const FirstBornData& data, Route route,
                                   std::span<const double> x,
                                   const InverseOptions& opt = {});

struct RoundTripOptions {
  int points = 401;
  double exclusion_fraction = 0.02;  // of the support length, around each jump
  double margin_fraction = 0.25;     // window beyond the support on each side
  InverseOptions inverse;
};

struct RoundTripReport {
  bool ok = false;  // false when the round trip could not be carried out
  Route route = Route::M12;
  double sup_error = 0.0;
  double l2_error = 0.0;
  double sup_reference = 0.0;  // sup |v| on the compared points
  ReconstructedPotential reconstruction;
  std::string detail;
};

RoundTripReport roundtrip_validate(const PotentialSpec& spec, Route route,
                                   const RoundTripOptions& opt = {});

}  // namespace wavetm
