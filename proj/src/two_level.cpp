#include "wavetm/two_level.hpp"

#include <limits>

namespace wavetm {

namespace {

// Unit eigenvector of H = [[w-1, w], [-w, 1-w]] for eigenvalue e, taken from
// whichever row of (H - e) gives the better-conditioned null vector.
std::pair<cplx, cplx> eigenvector(cplx w, cplx e) {
  std::pair<cplx, cplx> from_row1{w, 1.0 + e - w};
  std::pair<cplx, cplx> from_row2{1.0 - w - e, w};
  auto norm = [](const std::pair<cplx, cplx>& v) {
    return std::sqrt(std::norm(v.first) + std::norm(v.second));
  };
  auto v = norm(from_row1) >= norm(from_row2) ? from_row1 : from_row2;
  const double n = norm(v);
  return {v.first / n, v.second / n};
}

}  // namespace

TwoLevelHamiltonian hamiltonian_from_w(cplx w, double tau, Picture picture) {
  TwoLevelHamiltonian h;
  h.tau = tau;
  h.w = w;
  h.picture = picture;
  if (picture == Picture::Schroedinger) {
    h.matrix = {w - 1.0, w, -w, 1.0 - w};
  } else {
    const cplx e = std::polar(1.0, 2.0 * tau);
    h.matrix = {w, w / e, -w * e, -w};
  }
  return h;
}

TwoLevelHamiltonian hamiltonian_at(const PotentialSpec& spec, double k, double tau,
                                   Picture picture) {
  const cplx v = evaluate(spec, tau / k, k);
  return hamiltonian_from_w(v / (2.0 * k * k), tau, picture);
}

SpectralDiagnostic diagnose_w(cplx w, double coalescence_tol) {
  SpectralDiagnostic d;
  const cplx disc = 1.0 - 2.0 * w;
  d.n_of_tau = principal_sqrt(disc);
  d.e_plus = d.n_of_tau;
  d.e_minus = -d.n_of_tau;
  d.exceptional = std::abs(disc) <= coalescence_tol;

  const Mat2 h = hamiltonian_from_w(w, 0.0, Picture::Schroedinger).matrix;
  const Mat2 s3hs3{h.a11, -h.a12, -h.a21, h.a22};
  d.pseudo_hermitian_residual = (h.adjoint() - s3hs3).frobenius();

  const auto [u1, u2] = eigenvector(w, d.e_plus);
  const auto [v1, v2] = eigenvector(w, d.e_minus);
  const Mat2 V{u1, v1, u2, v2};
  const double det = std::abs(V.det());
  const double f2 = std::pow(V.frobenius(), 2);
  if (det == 0.0) {
    d.eigenvector_condition = std::numeric_limits<double>::infinity();
  } else {
    const double root = std::sqrt(std::max(0.0, f2 * f2 - 4.0 * det * det));
    const double smax2 = 0.5 * (f2 + root);
    d.eigenvector_condition = smax2 / det;  // smax / smin with smin = det / smax
  }
  return d;
}

SpectralDiagnostic spectral_diagnostic(const PotentialSpec& spec, double k, double tau,
                                       double coalescence_tol) {
  const cplx v = evaluate(spec, tau / k, k);
  return diagnose_w(v / (2.0 * k * k), coalescence_tol);
}

}  // namespace wavetm
