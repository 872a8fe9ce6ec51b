#pragma once

// Shared value types for the wavetm library: complex scalars, 2x2 matrices
// and the exception type every module throws.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace wavetm {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = std::numbers::pi;

enum class ErrorCode {
  InvalidInput = 1,
  ParseError,
  DistributionalPotential,
  InvalidWavenumber,
  QuadratureFailure,
  NotPeriodic,
  PeriodMismatch,
  IntegrationFailure,
  SpectralSingularity,
  WavenumberMismatch,
  UnsupportedFamily,
  DegenerateDenominator,
  NonSmoothData,
  DegenerateAlphaDenominator,
  TailNonconvergence,
  IoError,
};

const char* to_string(ErrorCode code) noexcept;
std::optional<ErrorCode> error_code_from_string(const std::string& name);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Dense 2x2 complex matrix, row major: (a11 a12; a21 a22).
struct Mat2 {
  cplx a11{}, a12{}, a21{}, a22{};

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2 zero() { return {0.0, 0.0, 0.0, 0.0}; }

  cplx det() const { return a11 * a22 - a12 * a21; }
  cplx trace() const { return a11 + a22; }

  Mat2 adjoint() const {
    return {std::conj(a11), std::conj(a21), std::conj(a12), std::conj(a22)};
  }

  double frobenius() const {
    return std::sqrt(std::norm(a11) + std::norm(a12) + std::norm(a21) +
                     std::norm(a22));
  }

  std::array<cplx, 4> entries() const { return {a11, a12, a21, a22}; }

  Mat2& operator+=(const Mat2& o) {
    a11 += o.a11; a12 += o.a12; a21 += o.a21; a22 += o.a22;
    return *this;
  }
  Mat2& operator-=(const Mat2& o) {
    a11 -= o.a11; a12 -= o.a12; a21 -= o.a21; a22 -= o.a22;
    return *this;
  }
  Mat2& operator*=(cplx s) {
    a11 *= s; a12 *= s; a21 *= s; a22 *= s;
    return *this;
  }
};

inline Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
inline Mat2 operator-(Mat2 a, const Mat2& b) { return a -= b; }
inline Mat2 operator*(Mat2 a, cplx s) { return a *= s; }
inline Mat2 operator*(cplx s, Mat2 a) { return a *= s; }

inline Mat2 operator*(const Mat2& a, const Mat2& b) {
  return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
          a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}

/// Largest entrywise modulus of a - b.
inline double max_abs_diff(const Mat2& a, const Mat2& b) {
  const auto d = (a - b).entries();
  double m = 0.0;
  for (const auto& e : d) m = std::max(m, std::abs(e));
  return m;
}

/// Principal square root; a negative zero imaginary part is read as +0 so
/// real negative arguments land on the upper side of the cut.
inline cplx principal_sqrt(cplx u) {
  if (u.imag() == 0.0) u.imag(0.0);
  return std::sqrt(u);
}

/// sin(u)/u for complex u, stable near the origin.
inline cplx sinc(cplx u) {
  if (std::abs(u) < 1e-4) {
    const cplx u2 = u * u;
    return 1.0 - u2 / 6.0 + u2 * u2 / 120.0;
  }
  return std::sin(u) / u;
}

/// Integral of exp(-i p x) over [0, L], stable for small p L.
inline cplx box_transform(double p, double length) {
  const double h = 0.5 * p * length;
  return length * std::polar(1.0, -h) * sinc(cplx(h, 0.0));
}

}  // namespace wavetm
