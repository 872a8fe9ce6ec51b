#include "wavetm/born.hpp"

#include "propagate.hpp"

namespace wavetm {

namespace {

constexpr double kDegenerateTolerance = 1e-12;

void require_k(double k) {
  if (!(k > 0.0) || !std::isfinite(k))
    throw Error(ErrorCode::InvalidWavenumber,
                "wavenumber must be positive and finite, got " + std::to_string(k));
}

}  // namespace

Mat2 born_first_closed(const PotentialSpec& spec, double k) {
  const cplx v0 = fourier1(spec, 0.0, k);
  const cplx vp = fourier1(spec, 2.0 * k, k);
  const cplx vm = fourier1(spec, -2.0 * k, k);
  return (-kI / (2.0 * k)) * Mat2{v0, vp, -vm, -v0};
}

Mat2 born_second_closed(const PotentialSpec& spec, double k) {
  const double q = 2.0 * k;
  auto v2 = [&](double a, double b) { return fourier2(spec, a, b, k); };
  const cplx v00 = v2(0.0, 0.0);
  return (-1.0 / (4.0 * k * k)) *
         Mat2{v00 - v2(-q, q), v2(q, 0.0) - v2(0.0, q), v2(-q, 0.0) - v2(0.0, -q),
              v00 - v2(q, -q)};
}

std::vector<BornTerm> born_terms(const PotentialSpec& spec, double k, int max_order,
                                 const BornOptions& opt) {
  require_k(k);
  if (max_order < 1) return {};
  OdeOptions ode;
  ode.tol = opt.tol;
  const auto mats = detail::evolve_born(spec, k, max_order, ode);
  std::vector<BornTerm> out;
  for (int l = 1; l <= max_order; ++l) {
    BornTerm t{l, mats[l - 1], k, std::nullopt};
    if (opt.cross_check && l <= 2) {
      const Mat2 closed = l == 1 ? born_first_closed(spec, k) : born_second_closed(spec, k);
      t.closed_form_residual = max_abs_diff(t.matrix, closed);
    }
    out.push_back(t);
  }
  return out;
}

BornTerm born_term(const PotentialSpec& spec, double k, int order,
                   const BornOptions& opt) {
  if (order < 1) throw Error(ErrorCode::InvalidInput, "Born order must be at least 1");
  return born_terms(spec, k, order, opt).back();
}

BornSum born_sum(const PotentialSpec& spec, double k, int max_order,
                 const BornOptions& opt) {
  if (max_order < 0) throw Error(ErrorCode::InvalidInput, "Born order must be non-negative");
  BornSum out;
  out.matrix.k = k;
  out.matrix.method = Method::Born;
  out.matrix.born_order = max_order;
  if (max_order == 0) {
    require_k(k);
    out.residual_estimate = std::numeric_limits<double>::infinity();
    return out;
  }
  out.terms = born_terms(spec, k, max_order, opt);
  for (const auto& t : out.terms) out.matrix.m += t.matrix;

  const double last = out.terms.back().matrix.frobenius();
  const double prev = max_order == 1 ? Mat2::identity().frobenius()
                                     : out.terms[max_order - 2].matrix.frobenius();
  if (last == 0.0) {
    out.rho = 0.0;
    out.residual_estimate = 0.0;
    out.convergent = true;
  } else if (prev > 0.0 && last < prev) {
    out.rho = last / prev;
    out.residual_estimate = last * out.rho / (1.0 - out.rho);
    out.convergent = true;
  } else {
    out.rho = prev > 0.0 ? last / prev : std::numeric_limits<double>::infinity();
    out.residual_estimate = std::numeric_limits<double>::infinity();
    out.matrix.warnings.push_back("NonconvergentSeries: term ratio " +
                                  std::to_string(out.rho) + " is not below 1");
  }
  return out;
}

ScatteringAmplitudes amplitudes_first_order(const PotentialSpec& spec, double k) {
  require_k(k);
  const cplx v0 = fourier1(spec, 0.0, k);
  const cplx d = 2.0 * kI * k - v0;
  if (std::abs(d) < kDegenerateTolerance * 2.0 * k)
    throw Error(ErrorCode::DegenerateDenominator, "2ik - v(0) vanishes");
  ScatteringAmplitudes a;
  a.k = k;
  a.order = Order::Born1;
  a.born_order = 1;
  a.r_left = fourier1(spec, -2.0 * k, k) / d;
  a.r_right = fourier1(spec, 2.0 * k, k) / d;
  a.t = 2.0 * kI * k / d;
  return a;
}

ScatteringAmplitudes amplitudes_second_order(const PotentialSpec& spec, double k) {
  require_k(k);
  const double q = 2.0 * k;
  const cplx v0 = fourier1(spec, 0.0, k);
  auto v2 = [&](double a, double b) { return fourier2(spec, a, b, k); };
  const cplx d = 4.0 * k * k + 2.0 * kI * v0 * k + v2(q, -q) - v2(0.0, 0.0);
  if (std::abs(d) < kDegenerateTolerance * 4.0 * k * k)
    throw Error(ErrorCode::DegenerateDenominator, "second-order denominator vanishes");
  ScatteringAmplitudes a;
  a.k = k;
  a.order = Order::Born2;
  a.born_order = 2;
  a.r_left = (-2.0 * kI * k * fourier1(spec, -q, k) + v2(-q, 0.0) - v2(0.0, -q)) / d;
  a.r_right = (-2.0 * kI * k * fourier1(spec, q, k) - v2(q, 0.0) + v2(0.0, q)) / d;
  a.t = 4.0 * k * k / d;
  return a;
}

}  // namespace wavetm
