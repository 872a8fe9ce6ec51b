#include <algorithm>

#include "doctest.h"
#include "test_util.hpp"
#include "wavetm/invisibility.hpp"

using namespace wavetm;

namespace {

PotentialSpec three_mode(double c = 1e-3) {
  return PotentialSpec::locally_periodic(1.0, 1.0, 4 * kPi,
                                         {{-2, 1.0}, {4, 2.0 / 3.0}, {-6, 0.4}})
      .with_coupling(Coupling::k_squared(c));
}

VerifyThresholds tight() {
  VerifyThresholds th;
  th.tol = 1e-14;
  return th;
}

}  // namespace

TEST_CASE("zero potential scans to zero") {
  const auto grid = uniform_grid(0.1, 3.0, 12);
  for (auto m : {ScanMethod::Exact, ScanMethod::Born1, ScanMethod::Born2}) {
    const auto s = scan(PotentialSpec::zero(), grid, m);
    REQUIRE(s.rows.size() == grid.size());
    for (const auto& r : s.rows) {
      CHECK(r.abs_rl == 0.0);
      CHECK(r.abs_rr == 0.0);
      CHECK(r.abs_tm1 == 0.0);
      CHECK(r.flags.empty());
    }
  }
}

TEST_CASE("scan rows are sorted and independent of the worker count") {
  std::vector<double> grid{2.0, 0.5, 1.5, 1.0, 3.0, 2.5};
  const auto spec = PotentialSpec::gaussian_derivative({0.5, 0.2}, 0.8);
  ScanOptions one, many;
  one.threads = 1;
  many.threads = 3;
  const auto a = scan(spec, grid, ScanMethod::Exact, one);
  const auto b = scan(spec, grid, ScanMethod::Exact, many);
  REQUIRE(a.rows.size() == grid.size());
  CHECK(std::is_sorted(a.rows.begin(), a.rows.end(),
                       [](const auto& x, const auto& y) { return x.k < y.k; }));
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].k == b.rows[i].k);
    CHECK(a.rows[i].abs_rl == b.rows[i].abs_rl);
    CHECK(a.rows[i].abs_rr == b.rows[i].abs_rr);
    CHECK(a.rows[i].abs_tm1 == b.rows[i].abs_tm1);
  }
  try {
    const std::vector<double> bad{1.0, -1.0};
    (void)scan(spec, bad, ScanMethod::Exact);
    FAIL("expected InvalidWavenumber");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidWavenumber);
  }
}

TEST_CASE("spectral singularities become flagged rows") {
  // 2ik - v(0) = 0 at k = 1 for this barrier.
  const auto b = PotentialSpec::barrier(2.0 * kI, 1.0);
  const std::vector<double> grid{0.5, 1.0};
  const auto s = scan(b, grid, ScanMethod::Born1);
  CHECK(std::isfinite(s.rows[0].abs_rl));
  CHECK(std::isinf(s.rows[1].abs_rl));
  CHECK(s.rows[1].flags == "DegenerateDenominator");
}

TEST_CASE("three-mode spectrum suppresses the predicted sides") {
  const auto f = three_mode();
  ScanOptions o;
  o.tol = 1e-12;
  const std::vector<double> ks{1.0, 2.0, 3.0};
  const auto s = scan(f, ks, ScanMethod::Exact, o);
  CHECK(s.rows[0].abs_rr / s.rows[0].abs_rl <= 1e-2);
  CHECK(s.rows[1].abs_rl / s.rows[1].abs_rr <= 1e-2);
  CHECK(s.rows[2].abs_rr / s.rows[2].abs_rl <= 1e-2);
}

TEST_CASE("exponential potential at first order: bidirectional when 2k != K") {
  const double L = 1.0, K = 4 * kPi / L;  // K L = 2 pi n with n = 2
  const auto e = PotentialSpec::truncated_exponential(1e-3, K, L);
  const double k = kPi / L;  // 2 k L = 2 pi, 2k != K
  const auto a = amplitudes(e, k, ScanMethod::Born1);
  CHECK(std::abs(a.r_left) < 1e-15);
  CHECK(std::abs(a.t - 1.0) < 1e-15);
  CHECK(std::abs(a.r_right) < 1e-15);
  // Only 2k = K leaves the right reflection on.
  const auto b = amplitudes(e, K / 2, ScanMethod::Born1);
  CHECK(std::abs(b.r_left) < 1e-15);
  CHECK(std::abs(b.r_right) > 1e-5);
}

TEST_CASE("classifier finds the three modes of the three-mode spec") {
  const auto c = classify_theorem2(three_mode());
  CHECK_FALSE(c.status.has_value());
  REQUIRE(c.predictions.size() == 3);
  CHECK(c.predictions[0].k == doctest::Approx(1.0));
  CHECK(c.predictions[0].direction == Direction::Right);
  CHECK(c.predictions[1].k == doctest::Approx(2.0));
  CHECK(c.predictions[1].direction == Direction::Left);
  CHECK(c.predictions[2].k == doctest::Approx(3.0));
  CHECK(c.predictions[2].direction == Direction::Right);
  for (const auto& p : c.predictions) {
    CHECK(p.grade == Grade::Invisible);
    CHECK(p.strict);
    CHECK(p.periods == 4);
    CHECK(p.lambda == doctest::Approx(2 * p.period / p.j));
    CHECK(p.lambda == doctest::Approx(2 * kPi / p.k));
    CHECK_FALSE(p.provenance.empty());
  }
}

TEST_CASE("property: classifier ignores the overall coupling") {
  const auto base = classify_theorem2(three_mode(1e-3));
  for (double s : {1e-6, 0.5, 3.0, 1e4}) {
    const auto c = classify_theorem2(three_mode(1e-3).scaled(s));
    REQUIRE(c.predictions.size() == base.predictions.size());
    for (std::size_t i = 0; i < c.predictions.size(); ++i) {
      CHECK(c.predictions[i].k == base.predictions[i].k);
      CHECK(c.predictions[i].direction == base.predictions[i].direction);
      CHECK(c.predictions[i].grade == base.predictions[i].grade);
    }
  }
}

TEST_CASE("property: mirroring swaps predicted directions") {
  const auto c = classify_theorem2(three_mode());
  const auto m = classify_theorem2(mirror_locally_periodic(three_mode()));
  REQUIRE(c.predictions.size() == m.predictions.size());
  for (std::size_t i = 0; i < c.predictions.size(); ++i) {
    CHECK(m.predictions[i].k == doctest::Approx(c.predictions[i].k));
    CHECK(m.predictions[i].direction != c.predictions[i].direction);
  }
  // The swap is physical: the mirrored profile reflects the other way.
  const auto a = amplitudes(three_mode(), 2.0, ScanMethod::Exact, 1e-12);
  const auto b = amplitudes(mirror_locally_periodic(three_mode()), 2.0, ScanMethod::Exact, 1e-12);
  CHECK(std::abs(a.r_left) < 1e-2 * std::abs(a.r_right));
  CHECK(std::abs(b.r_right) < 1e-2 * std::abs(b.r_left));
}

TEST_CASE("real and non-periodic potentials yield no predictions") {
  const auto cosine = PotentialSpec::locally_periodic(0.3, 1.0, 4 * kPi, {{1, 0.5}, {-1, 0.5}});
  CHECK(classify_theorem2(cosine).predictions.empty());
  try {
    (void)classify_theorem2(PotentialSpec::barrier(1.0, 1.0));
    FAIL("expected NotPeriodic");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPeriodic);
  }
}

TEST_CASE("length that is not a whole number of periods") {
  try {
    (void)PotentialSpec::locally_periodic(1e-3, 1.0, 4 * kPi + 1.0,
                                          {{-2, 1.0}, {4, 2.0 / 3.0}, {-6, 0.4}});
    FAIL("expected NotPeriodic");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPeriodic);
  }
  // A truncated exponential carries no such constraint.
  const auto s = PotentialSpec::truncated_exponential(1e-3, 2.0, 1.0);
  const auto c = classify_theorem2(s);
  REQUIRE(c.status.has_value());
  CHECK(*c.status == ErrorCode::PeriodMismatch);
  CHECK(c.predictions.empty());
  CHECK_FALSE(c.reason.empty());
}

TEST_CASE("geometric-series potential has a ladder of modes") {
  const double L = 3.0, K = 2 * kPi / L;
  const auto g = PotentialSpec::geometric_series(1e-2, {0.5, 0.2}, {0.3, -0.1}, K, L);
  ClassifyOptions o;
  o.j_max = 12;
  const auto c = classify_theorem2(g, o);
  auto has = [&](double k, Direction d) {
    return std::any_of(c.predictions.begin(), c.predictions.end(), [&](const auto& p) {
      return std::abs(p.k - k) < 1e-9 && p.direction == d;
    });
  };
  for (int n = 1; n <= 5; ++n) {
    CAPTURE(n);
    CHECK(has(n * K, Direction::Left));
    CHECK(has((n + 0.5) * K, Direction::Right));
  }
}

TEST_CASE("exponent fits") {
  const std::vector<double> linear{1e-3, 5e-4}, cubic{1e-3, 1.25e-4}, zero{0.0, 0.0};
  CHECK(fit_exponent(linear).exponent == doctest::Approx(1.0));
  CHECK(fit_exponent(cubic).exponent == doctest::Approx(3.0));
  CHECK(fit_exponent(zero).vanishes);
  const std::vector<double> three{8e-3, 2e-3, 5e-4};
  CHECK(fit_exponent(three).exponent == doctest::Approx(2.0));
}

TEST_CASE("verification of the exponential potential at k = K/2") {
  const double L = 1.0, k = 2 * kPi / L, K = 2 * k;
  const auto e = PotentialSpec::truncated_exponential(1e-2, K, L);
  InvisibilityPrediction p;
  p.k = k;
  p.direction = Direction::Left;
  p.grade = Grade::Reflectionless;
  const auto rep = verify_prediction(e, p, ScanMethod::Exact, tight());
  CHECK(rep.pass);
  CHECK(rep.suppressed.exponent >= 2.9);
  CHECK(rep.opposite.exponent == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("verification on the zero potential passes trivially") {
  InvisibilityPrediction p;
  p.k = 1.0;
  p.grade = Grade::Invisible;
  const auto rep = verify_prediction(PotentialSpec::zero(), p, ScanMethod::Exact);
  CHECK(rep.pass);
  CHECK(rep.suppressed.vanishes);
}

TEST_CASE("verification of the three-mode spec at 2K") {
  const auto c = classify_theorem2(three_mode());
  REQUIRE(c.predictions.size() == 3);
  const auto rep = verify_prediction(three_mode(), c.predictions[1], ScanMethod::Exact, tight());
  CHECK(rep.pass);
  CHECK(rep.opposite.exponent == doctest::Approx(1.0).epsilon(0.05));
  // The two-point fit sees 2 - O(z); the deficit must shrink with the coupling.
  const double deficit = 2.0 - rep.suppressed.exponent;
  CHECK(deficit < 1e-3);
  const auto small = verify_prediction(three_mode(1e-4), c.predictions[1], ScanMethod::Exact, tight());
  CHECK(std::abs(2.0 - small.suppressed.exponent) < 0.2 * std::abs(deficit));
}

TEST_CASE("a wrong prediction fails verification") {
  InvisibilityPrediction p;
  p.k = 2.0;
  p.direction = Direction::Right;  // the actual suppressed side is left
  const auto rep = verify_prediction(three_mode(), p, ScanMethod::Exact, tight());
  CHECK_FALSE(rep.pass);
  CHECK_FALSE(rep.detail.empty());
}

TEST_CASE("property: second-order scan agrees with the exact one to third order") {
  const auto grid = uniform_grid(0.05, 3.5, 15);
  ScanOptions o;
  o.tol = 1e-13;
  auto discrepancy = [&](double s) {
    const auto spec = three_mode().scaled(s);
    const auto a = scan(spec, grid, ScanMethod::Exact, o);
    const auto b = scan(spec, grid, ScanMethod::Born2, o);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      worst = std::max({worst, std::abs(a.rows[i].abs_rl - b.rows[i].abs_rl),
                        std::abs(a.rows[i].abs_rr - b.rows[i].abs_rr),
                        std::abs(a.rows[i].abs_tm1 - b.rows[i].abs_tm1)});
    return worst;
  };
  const double d1 = discrepancy(1.0), d2 = discrepancy(0.5);
  CAPTURE(d1);
  CAPTURE(d2);
  CHECK(d1 / d2 >= 8.0 * 0.9);
}
