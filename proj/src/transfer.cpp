#include "wavetm/transfer.hpp"

#include "propagate.hpp"

namespace wavetm {

namespace {

constexpr double kSingularityTolerance = 1e-12;
constexpr double kConsistencyTolerance = 1e-9;

Mat2 barrier_matrix(cplx z, double length, double offset, double k) {
  const cplx n = principal_sqrt(1.0 - z / (k * k));
  const cplx u = n * k * length;
  const cplx s = k * length * sinc(u);  // sin(n k L) / n, finite at n = 0
  const cplx c = std::cos(u);
  const cplx n2p1 = 2.0 - z / (k * k);
  const cplx e = std::polar(1.0, -k * length);
  const cplx off = -kI * z * s / (2.0 * k * k);  // i (n^2 - 1) sin / (2n)
  Mat2 m;
  m.a11 = (c + 0.5 * kI * n2p1 * s) * e;
  m.a22 = (c - 0.5 * kI * n2p1 * s) / e;
  m.a12 = off * e * std::polar(1.0, -2.0 * k * offset);
  m.a21 = -off / e * std::polar(1.0, 2.0 * k * offset);
  return m;
}

}  // namespace

std::string TransferMatrix::method_name() const {
  switch (method) {
    case Method::Ode: return "ode";
    case Method::Analytic: return "analytic";
    case Method::Born: return "born(" + std::to_string(born_order) + ")";
  }
  return "unknown";
}

Mat2 delta_jump(cplx z, double a, double k) {
  const cplx e = std::polar(1.0, -2.0 * k * a);
  const cplx c = -kI * z / (2.0 * k);
  return {1.0 + c, c * e, -c / e, 1.0 - c};
}

TransferMatrix transfer_matrix_ode_continued(const PotentialSpec& spec, double k,
                                             const OdeOptions& opt) {
  TransferMatrix out;
  out.k = k;
  out.method = Method::Ode;
  out.m = detail::evolve_exact(spec, k, opt, &out.warnings);
  return out;
}

TransferMatrix transfer_matrix_ode(const PotentialSpec& spec, double k,
                                   const OdeOptions& opt) {
  if (!(k > 0.0) || !std::isfinite(k))
    throw Error(ErrorCode::InvalidWavenumber,
                "wavenumber must be positive and finite, got " + std::to_string(k));
  return transfer_matrix_ode_continued(spec, k, opt);
}

TransferMatrix analytic_transfer(const PotentialSpec& spec, double k) {
  if (k == 0.0 || !std::isfinite(k))
    throw Error(ErrorCode::InvalidWavenumber, "wavenumber must be nonzero and finite");
  TransferMatrix out;
  out.k = k;
  out.method = Method::Analytic;
  const double f = spec.coupling().factor(k);
  if (const auto* b = std::get_if<RectangularBarrier>(&spec.params())) {
    out.m = barrier_matrix(f * b->z, b->length, b->offset, k);
    return out;
  }
  if (spec.distributional()) {
    out.m = Mat2::identity();
    for (const auto& [a, z] : spec.impulses(k)) out.m = delta_jump(z, a, k) * out.m;
    return out;
  }
  throw Error(ErrorCode::UnsupportedFamily,
              std::string("no closed-form transfer matrix for ") + to_string(spec.family()));
}

ScatteringAmplitudes amplitudes_from_transfer(const TransferMatrix& M) {
  const Mat2& m = M.m;
  if (std::abs(m.a22) < kSingularityTolerance * m.frobenius())
    throw Error(ErrorCode::SpectralSingularity,
                "M22 vanishes at k = " + std::to_string(M.k));
  ScatteringAmplitudes a;
  a.k = M.k;
  a.t = 1.0 / m.a22;
  a.r_right = m.a12 / m.a22;
  a.r_left = -m.a21 / m.a22;
  if (M.method == Method::Born) {
    a.order = M.born_order == 1 ? Order::Born1
              : M.born_order == 2 ? Order::Born2
                                  : Order::BornN;
    a.born_order = M.born_order;
  } else {
    const cplx m11 = a.t - a.r_left * a.r_right / a.t;
    if (std::abs(m11 - m.a11) > kConsistencyTolerance * std::max(1.0, std::abs(m.a11)))
      throw Error(ErrorCode::InvalidInput,
                  "transfer matrix violates M11 = T - Rl Rr / T (residual " +
                      std::to_string(std::abs(m11 - m.a11)) + ")");
  }
  return a;
}

Mat2 transfer_from_amplitudes(const ScatteringAmplitudes& a) {
  if (a.t == cplx{})
    throw Error(ErrorCode::InvalidInput, "transmission amplitude must be nonzero");
  return {a.t - a.r_left * a.r_right / a.t, a.r_right / a.t, -a.r_left / a.t, 1.0 / a.t};
}

TransferMatrix compose(const TransferMatrix& m_right, const TransferMatrix& m_left) {
  if (std::abs(m_right.k - m_left.k) > 1e-14 * std::abs(m_left.k))
    throw Error(ErrorCode::WavenumberMismatch,
                "cannot compose matrices at k = " + std::to_string(m_right.k) +
                    " and k = " + std::to_string(m_left.k));
  TransferMatrix out;
  out.k = m_left.k;
  out.method = m_right.method == m_left.method ? m_left.method : Method::Ode;
  out.born_order = std::max(m_right.born_order, m_left.born_order);
  out.m = m_right.m * m_left.m;
  out.warnings = m_left.warnings;
  out.warnings.insert(out.warnings.end(), m_right.warnings.begin(), m_right.warnings.end());
  return out;
}

}  // namespace wavetm
