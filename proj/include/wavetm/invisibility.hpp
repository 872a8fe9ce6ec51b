#pragma once

// Spectral scans, the locally-periodic invisibility classifier and
// coupling-halving verification of its predictions.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wavetm/born.hpp"

namespace wavetm {

enum class ScanMethod { Exact, Born1, Born2 };

const char* to_string(ScanMethod m) noexcept;
std::optional<ScanMethod> scan_method_from_string(const std::string& name);

struct ScanRow {
  double k = 0.0;
  double abs_rl = 0.0, abs_rr = 0.0, abs_tm1 = 0.0;
  std::string flags;  // ';'-separated, empty for clean rows
};

struct SpectralScan {
  std::vector<ScanRow> rows;  // sorted by k
  ScanMethod method = ScanMethod::Exact;
};

struct ScanOptions {
  double tol = 1e-10;  // ODE tolerance for the exact engine
  int threads = 0;     // 0: WAVETM_THREADS, else hardware concurrency
};

/// Worker count from WAVETM_THREADS, falling back to the hardware count.
int default_thread_count();

/// n uniformly spaced points on [k_min, k_max].
std::vector<double> uniform_grid(double k_min, double k_max, int n);

/// Amplitudes from one engine at one k.
ScatteringAmplitudes amplitudes(const PotentialSpec& spec, double k, ScanMethod method,
                                double tol = 1e-10);

/// Rows with failed computations (e.g. spectral singularities) carry
/// infinite magnitudes and a flag.
SpectralScan scan(const PotentialSpec& spec, std::span<const double> k_grid,
                  ScanMethod method, const ScanOptions& opt = {});

enum class Direction { Left, Right };
enum class Grade { Reflectionless, Invisible };

const char* to_string(Direction d) noexcept;
const char* to_string(Grade g) noexcept;

struct InvisibilityPrediction {
  double k = 0.0;
  double lambda = 0.0;  // 2 l / j = 2 L / (N j)
  Direction direction = Direction::Left;
  Grade grade = Grade::Reflectionless;
  int j = 0;
  int periods = 0;      // N with L = N l
  bool strict = false;  // N even, i.e. L = 2 m l with integer m
  double period = 0.0;  // l
  std::string provenance;
};

struct ClassifyOptions {
  int j_max = 16;
  double eps_a = 1e-12;  // |a_n| <= eps_a max |a_n| counts as zero
};

struct Classification {
  std::vector<InvisibilityPrediction> predictions;  // sorted by k
  PeriodicStructure structure;
  std::optional<ErrorCode> status;  // PeriodMismatch when L / l is not integral
  std::string reason;
};

/// Throws NotPeriodic for families without a periodic structure.
Classification classify_theorem2(const PotentialSpec& spec, const ClassifyOptions& opt = {});

struct VerifyThresholds {
  double min_suppressed_exponent = 1.9;  // "at least z^2"
  double opposite_exponent = 1.0;
  double opposite_slack = 0.1;
  bool three_point = false;  // z, z/2, z/4 least-squares fit
  double tol = 1e-14;        // ODE tolerance for the exact engine
  /// Magnitudes below this floor are treated as exact zeros.
  double zero_floor = 1e-300;
};

struct ExponentFit {
  std::vector<double> magnitudes;  // at z, z/2 (, z/4)
  double exponent = 0.0;           // +inf when every magnitude is zero
  bool vanishes = false;
};

struct VerificationReport {
  bool pass = false;
  double k = 0.0;
  ScanMethod engine = ScanMethod::Exact;
  ExponentFit suppressed;  // reflection on the predicted side
  ExponentFit opposite;    // reflection on the other side
  ExponentFit transmission;  // |T - 1|
  std::string detail;
};

ExponentFit fit_exponent(std::span<const double> magnitudes, double zero_floor = 1e-300);

VerificationReport verify_prediction(const PotentialSpec& spec,
                                     const InvisibilityPrediction& prediction,
                                     ScanMethod engine,
                                     const VerifyThresholds& thresholds = {});

}  // namespace wavetm
