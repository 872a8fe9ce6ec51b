#include "doctest.h"
#include "test_util.hpp"
#include "wavetm/transfer.hpp"

using namespace wavetm;

namespace {

// Textbook barrier matrix on (0, L).
Mat2 barrier_oracle(cplx z, double L, double k) {
  const cplx n = std::sqrt(1.0 - z / (k * k));
  const cplx s = std::sin(n * k * L), c = std::cos(n * k * L);
  const cplx e = std::exp(-kI * k * L);
  return {(c + kI * (n * n + 1.0) * s / (2.0 * n)) * e, kI * (n * n - 1.0) * s / (2.0 * n) * e,
          -kI * (n * n - 1.0) * s / (2.0 * n) / e, (c - kI * (n * n + 1.0) * s / (2.0 * n)) / e};
}

TransferMatrix wrap(Mat2 m, double k, Method method = Method::Analytic) {
  TransferMatrix t;
  t.m = m;
  t.k = k;
  t.method = method;
  return t;
}

std::vector<PotentialSpec> fixtures() {
  return {
      PotentialSpec::barrier({1.0, 0.5}, 2.0),
      PotentialSpec::barrier(0.8, 1.5),
      PotentialSpec::delta_pair(1.0, kI, 0.0, 1.0),
      PotentialSpec::truncated_exponential({0.0, 0.3}, 2.0, kPi),
      PotentialSpec::gaussian_plain(0.7, 1.0),
      PotentialSpec::gaussian_derivative({0.5, 0.2}, 0.8),
  };
}

}  // namespace

TEST_CASE("zero potential gives the identity") {
  const auto m = transfer_matrix_ode(PotentialSpec::zero(), 1.3);
  CHECK(max_abs_diff(m.m, Mat2::identity()) == 0.0);
  const auto a = amplitudes_from_transfer(m);
  CHECK(a.r_left == cplx(0.0));
  CHECK(a.r_right == cplx(0.0));
  CHECK(a.t == cplx(1.0));
}

TEST_CASE("barrier: ODE, closed form and textbook oracle agree") {
  for (cplx z : {cplx(1.0), kI, cplx(1.0, 1.0)})
    for (double L : {1.0, 2.0})
      for (double k : {0.5, 1.0, 2.0, 5.0}) {
        CAPTURE(z);
        CAPTURE(L);
        CAPTURE(k);
        const auto b = PotentialSpec::barrier(z, L);
        const Mat2 oracle = barrier_oracle(z, L, k);
        CHECK(max_abs_diff(analytic_transfer(b, k).m, oracle) < 1e-12);
        CHECK(max_abs_diff(transfer_matrix_ode(b, k).m, oracle) < 1e-8);
      }
}

TEST_CASE("delta pair against narrow rectangles of equal area") {
  const double w = 1e-4, k = 1.0;
  const auto pair = PotentialSpec::delta_pair(1.0, 1.0, 0.0, 1.0);
  const auto left = analytic_transfer(PotentialSpec::barrier(1.0 / w, w, -0.5 * w), k);
  const auto right = analytic_transfer(PotentialSpec::barrier(1.0 / w, w, 1.0 - 0.5 * w), k);
  const Mat2 narrow = compose(right, left).m;
  CHECK(max_abs_diff(transfer_matrix_ode(pair, k).m, narrow) < 1e-4);
  CHECK(max_abs_diff(analytic_transfer(pair, k).m, narrow) < 1e-4);
}

TEST_CASE("delta pair equals the product of single jumps") {
  const cplx z1{1.0, 0.2}, z2{0.0, 2.0};
  const auto pair = PotentialSpec::delta_pair(z1, z2, -1.0, 1.0);
  for (double k : {0.5, 1.0, 2.0}) {
    const auto lo = wrap(delta_jump(z1, -1.0, k), k), hi = wrap(delta_jump(z2, 1.0, k), k);
    CHECK(max_abs_diff(compose(hi, lo).m, transfer_matrix_ode(pair, k).m) < 1e-8);
    CHECK(std::abs(delta_jump(z1, 0.3, k).det() - 1.0) < 1e-15);
  }
}

TEST_CASE("amplitudes from special matrices") {
  const auto a = amplitudes_from_transfer(wrap(Mat2::identity(), 1.0));
  CHECK(a.r_left == cplx(0.0));
  CHECK(a.r_right == cplx(0.0));
  CHECK(a.t == cplx(1.0));

  const auto b = analytic_transfer(PotentialSpec::barrier({1.0, 0.5}, 2.0), 1.3);
  const auto ab = amplitudes_from_transfer(b);
  CHECK(std::abs(b.m.a11 - (ab.t - ab.r_left * ab.r_right / ab.t)) < 1e-10);

  try {
    (void)amplitudes_from_transfer(wrap({0.0, 1.0, -1.0, 0.0}, 1.0));
    FAIL("expected SpectralSingularity");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SpectralSingularity);
  }
}

TEST_CASE("property: amplitude round trip on random unit-determinant matrices") {
  int tried = 0;
  while (tried < 100) {
    Mat2 m{test::uniform_cplx(2), test::uniform_cplx(2), test::uniform_cplx(2),
           test::uniform_cplx(2)};
    if (std::abs(m.a22) <= 0.1) continue;
    m.a11 = (1.0 + m.a12 * m.a21) / m.a22;
    ++tried;
    const auto a = amplitudes_from_transfer(wrap(m, 1.0));
    CHECK(max_abs_diff(transfer_from_amplitudes(a), m) < 1e-12);
    const auto again = amplitudes_from_transfer(wrap(transfer_from_amplitudes(a), 1.0));
    CHECK(std::abs(again.r_left - a.r_left) < 1e-12);
    CHECK(std::abs(again.r_right - a.r_right) < 1e-12);
    CHECK(std::abs(again.t - a.t) < 1e-12);
  }
}

TEST_CASE("composition") {
  const double k = 1.4;
  const cplx z{1.0, 0.5};
  const double L = 2.0;
  const auto whole = analytic_transfer(PotentialSpec::barrier(z, L), k);
  CHECK(max_abs_diff(compose(wrap(Mat2::identity(), k), whole).m, whole.m) == 0.0);

  const auto m1 = analytic_transfer(PotentialSpec::barrier(z, L / 2), k);
  const auto m2 = analytic_transfer(PotentialSpec::barrier(z, L / 2, L / 2), k);
  const auto joined = compose(m2, m1);
  CHECK(max_abs_diff(joined.m, whole.m) < 1e-8);
  CHECK(joined.det_residual() <= m1.det_residual() + m2.det_residual() + 1e-12);

  const auto p1 = transfer_matrix_ode(PotentialSpec::barrier(z, 0.5), k);
  const auto p2 = transfer_matrix_ode(PotentialSpec::barrier(z, 0.7, 0.5), k);
  const auto p3 = transfer_matrix_ode(PotentialSpec::barrier(z, 0.8, 1.2), k);
  CHECK(max_abs_diff(compose(p3, compose(p2, p1)).m, compose(compose(p3, p2), p1).m) < 1e-10);
  CHECK(max_abs_diff(compose(p3, compose(p2, p1)).m, whole.m) < 1e-10);

  try {
    (void)compose(m1, analytic_transfer(PotentialSpec::barrier(z, L / 2), 2 * k));
    FAIL("expected WavenumberMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WavenumberMismatch);
  }
}

TEST_CASE("analytic barrier limits") {
  const double k = 1.5;
  const auto tiny = analytic_transfer(PotentialSpec::barrier(1e-14, 1.0), k);
  CHECK(max_abs_diff(tiny.m, Mat2::identity()) < 1e-13);
  // n = 0: sin(n k L)/n -> k L.
  const auto b = PotentialSpec::barrier(k * k, 1.0);
  const auto m = analytic_transfer(b, k);
  for (const auto& e : m.m.entries()) CHECK(std::isfinite(std::abs(e)));
  CHECK(m.det_residual() < 1e-12);
  CHECK(max_abs_diff(m.m, transfer_matrix_ode(b, k).m) < 1e-8);
  CHECK(max_abs_diff(analytic_transfer(PotentialSpec::barrier(1.0, 1.0), 2.0).m,
                     transfer_matrix_ode(PotentialSpec::barrier(1.0, 1.0), 2.0).m) < 1e-8);
}

TEST_CASE("closed forms only for barriers and delta pairs") {
  try {
    (void)analytic_transfer(PotentialSpec::gaussian_plain(1.0, 1.0), 1.0);
    FAIL("expected UnsupportedFamily");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedFamily);
  }
  try {
    (void)transfer_matrix_ode(PotentialSpec::barrier(1.0, 1.0), -1.0);
    FAIL("expected InvalidWavenumber");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidWavenumber);
  }
}

TEST_CASE("property: unit determinant across fixtures") {
  for (const auto& s : fixtures())
    for (double k : {0.5, 1.0, 2.0, 5.0}) {
      const std::string family = to_string(s.family());
      CAPTURE(family);
      CAPTURE(k);
      CHECK(transfer_matrix_ode(s, k).det_residual() <= 1e-9);
    }
}

TEST_CASE("property: M(-k) symmetry on analytic families") {
  const std::vector<PotentialSpec> specs{PotentialSpec::barrier({1.0, 0.5}, 2.0),
                                         PotentialSpec::delta_pair(1.0, kI, 0.0, 1.0)};
  for (const auto& s : specs)
    for (double k : {0.5, 1.0, 2.0}) {
      const Mat2 p = analytic_transfer(s, k).m, m = analytic_transfer(s, -k).m;
      CHECK(std::abs(p.a11 - m.a22) < 1e-8);
      CHECK(std::abs(p.a12 - m.a21) < 1e-8);
      const Mat2 q = transfer_matrix_ode_continued(s, -k).m;
      CHECK(max_abs_diff(q, m) < 1e-8);
    }
}

TEST_CASE("property: real potentials conserve flux") {
  const std::vector<PotentialSpec> specs{PotentialSpec::barrier(0.8, 1.5),
                                         PotentialSpec::gaussian_plain(0.7, 1.0),
                                         PotentialSpec::gaussian_derivative(-0.5, 0.8),
                                         PotentialSpec::delta_pair(1.0, -0.4, 0.0, 1.0)};
  for (const auto& s : specs)
    for (int t = 0; t < 4; ++t) {
      const double k = test::uniform(0.3, 4.0);
      const auto a = amplitudes_from_transfer(transfer_matrix_ode(s, k));
      CHECK(std::abs(std::abs(a.r_left) - std::abs(a.r_right)) < 1e-8);
      CHECK(std::abs(std::norm(a.r_left) + std::norm(a.t) - 1.0) < 1e-8);
    }
}
