#pragma once

// Potential families v(x; k), their evaluation and Fourier transforms.
//
// Transform convention: v~(q) = int exp(-i q x) v(x) dx, and the ordered
// double transform
//   v~(q1, q2) = int int_{x2 > x1} exp(-i (q1 x1 + q2 x2)) v(x1) v(x2).

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wavetm/core.hpp"

namespace wavetm {

enum class Family {
  DeltaPair,
  RectangularBarrier,
  TruncatedExponential,
  LocallyPeriodicFourier,
  GaussianDerivative,
  GaussianPlain,
  GeometricSeriesPeriodic,
  InfiniteRangeAnalytic,
  SampledGrid,
};

const char* to_string(Family f) noexcept;
std::optional<Family> family_from_string(const std::string& name);

/// z1 delta(x - a1) + z2 delta(x - a2).
struct DeltaPair {
  cplx z1, z2;
  double a1 = 0.0, a2 = 0.0;
};

/// z on (offset, offset + length).
struct RectangularBarrier {
  cplx z;
  double length = 1.0;
  double offset = 0.0;
};

/// z exp(i K x) on [0, length].
struct TruncatedExponential {
  cplx z;
  double K = 1.0;
  double length = 1.0;
};

struct FourierTerm {
  int j = 0;
  cplx c;
};

/// z f(x) on [0, length] with f(x) = sum_j c_j exp(i j K x).
struct LocallyPeriodicFourier {
  cplx z{1.0, 0.0};
  double K = 1.0;
  double length = 1.0;
  std::vector<FourierTerm> terms;
};

/// z ((x - c)/w) exp(-((x - c)/w)^2).
struct GaussianDerivative {
  cplx z;
  double width = 1.0;
  double center = 0.0;
};

/// z exp(-((x - c)/w)^2).
struct GaussianPlain {
  cplx z;
  double width = 1.0;
  double center = 0.0;
};

/// z f(x) on [0, length], f = sum_{j>=1} a^j e^{2ijKx} + b^j e^{-(2j-1)iKx}.
struct GeometricSeriesPeriodic {
  cplx z{1.0, 0.0};
  cplx a, b;
  double K = 1.0;
  double length = 1.0;
};

/// z / (sqrt(pi) K^2 w^7) e^{-2iKx} e^{-x^2/w^2} [2x^3 - 3w^2 x + iKw^2(2x^2 - w^2)].
struct InfiniteRangeAnalytic {
  cplx z;
  double K = 1.0;
  double width = 1.0;
};

/// Uniform samples v(x0 + i dx), linearly interpolated, zero outside.
struct SampledGrid {
  double x0 = 0.0;
  double dx = 1.0;
  std::vector<cplx> values;
};

using FamilyParams =
    std::variant<DeltaPair, RectangularBarrier, TruncatedExponential,
                 LocallyPeriodicFourier, GaussianDerivative, GaussianPlain,
                 GeometricSeriesPeriodic, InfiniteRangeAnalytic, SampledGrid>;

/// How the coupling depends on the wavenumber: constant, or scaled by c k^2.
struct Coupling {
  enum class Kind { Constant, KSquared };
  Kind kind = Kind::Constant;
  double c = 1.0;

  static Coupling constant() { return {}; }
  static Coupling k_squared(double c) { return {Kind::KSquared, c}; }

  double factor(double k) const { return kind == Kind::Constant ? 1.0 : c * k * k; }
};

struct Support {
  double x_min = 0.0;
  double x_max = 0.0;
  bool infinite = false;  // [x_min, x_max] is then the truncation window
};

/// Declarative description of a potential: family parameters plus coupling
/// law. Immutable value type.
class PotentialSpec {
 public:
  explicit PotentialSpec(FamilyParams params, Coupling coupling = {},
                         double truncation_radius = 0.0);

  static PotentialSpec zero();
  static PotentialSpec delta_pair(cplx z1, cplx z2, double a1, double a2);
  static PotentialSpec barrier(cplx z, double length, double offset = 0.0);
  static PotentialSpec truncated_exponential(cplx z, double K, double length);
  static PotentialSpec locally_periodic(cplx z, double K, double length,
                                        std::vector<FourierTerm> terms);
  static PotentialSpec gaussian_plain(cplx z, double width, double center = 0.0);
  static PotentialSpec gaussian_derivative(cplx z, double width,
                                           double center = 0.0);
  static PotentialSpec geometric_series(cplx z, cplx a, cplx b, double K,
                                        double length);
  static PotentialSpec infinite_range(cplx z, double K, double width);
  static PotentialSpec sampled(double x0, double dx, std::vector<cplx> values);

  Family family() const;
  const FamilyParams& params() const { return params_; }
  const Coupling& coupling() const { return coupling_; }
  double truncation_radius() const;

  PotentialSpec with_coupling(Coupling c) const;
  /// Every coupling constant (and the k^2 prefactor) multiplied by s.
  PotentialSpec scaled(double s) const;

  bool distributional() const { return family() == Family::DeltaPair; }
  bool has_closed_form_fourier() const;
  /// True when v(x) is real for every x (decided from the parameters).
  bool real_valued() const;

  Support support() const;
  /// Support ends plus interior points where v is not smooth, sorted.
  std::vector<double> breakpoints() const;
  /// Points where v jumps (used to exclude neighbourhoods in comparisons).
  std::vector<double> discontinuities() const;
  /// Largest spatial angular frequency carried by the shape.
  double max_frequency() const;
  /// Smallest length scale of the shape's envelope.
  double feature_length() const;

  /// Delta positions and strengths at wavenumber k (delta families only).
  std::vector<std::pair<double, cplx>> impulses(double k) const;

  /// Sum-of-exponentials form  z * sum c_j e^{i beta_j x}  on [x0, x0 + L]
  /// when the family admits one (geometric series truncated at 1e-18).
  struct ExponentialSum {
    double x0 = 0.0;
    double length = 0.0;
    std::vector<std::pair<double, cplx>> terms;  // (beta, weight incl. z)
  };
  std::optional<ExponentialSum> exponential_sum() const;

 private:
  FamilyParams params_;
  Coupling coupling_;
  double truncation_radius_;
};

/// v(x; k). Throws DistributionalPotential for delta families and
/// InvalidWavenumber for k <= 0.
cplx evaluate(const PotentialSpec& spec, double x, double k);

/// Shape only, without the coupling-law factor and without the k check.
cplx evaluate_shape(const PotentialSpec& spec, double x);

/// v~(q) at wavenumber k (closed form per family, quadrature otherwise).
cplx fourier1(const PotentialSpec& spec, double q, double k);

/// v~(q1, q2) at wavenumber k.
cplx fourier2(const PotentialSpec& spec, double q1, double q2, double k);

/// Quadrature-only routes (used for sampled grids and as cross-checks).
cplx fourier1_quadrature(const PotentialSpec& spec, double q, double k,
                         double abs_tol = 1e-12);
cplx fourier2_quadrature(const PotentialSpec& spec, double q1, double q2,
                         double k, double abs_tol = 1e-11);

/// sqrt(1 - v/k^2), principal branch.
cplx refractive_index(const PotentialSpec& spec, double x, double k);

/// Periodic structure of a locally periodic potential.
struct PeriodicStructure {
  double base_K = 0.0;   // wavenumber of the declared exponent list
  int gcd = 1;           // fundamental wavenumber is gcd * base_K
  double period = 0.0;   // fundamental period l = 2 pi / (gcd base_K)
  double length = 0.0;   // L
  double periods = 0.0;  // L / l (not necessarily integral)
  cplx z;                // coupling prefactor (k-independent part)
};

PeriodicStructure periodic_structure(const PotentialSpec& spec);

struct FourierCoefficient {
  int n = 0;
  cplx c;  // coefficient of exp(i n K x) in f, K the declared base wavenumber
  cplx a;  // int_0^l exp(-2 pi i n x / l) v(x) dx over the fundamental period
};

/// c_n of f and a_n of v. Throws NotPeriodic for non-periodic families.
/// The a_n use the k-independent coupling (k-squared prefactor omitted).
FourierCoefficient fourier_coefficients(const PotentialSpec& spec, int n);

/// Spatially reflected locally periodic potential v(L - x).
PotentialSpec mirror_locally_periodic(const PotentialSpec& spec);

}  // namespace wavetm
