#include "doctest.h"
#include "test_util.hpp"
#include "wavetm/born.hpp"
#include "wavetm/inverse.hpp"

using namespace wavetm;

namespace {

std::vector<double> grid(double a, double b, int n) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = a + (b - a) * i / (n - 1);
  return x;
}

InverseOptions numeric() {
  InverseOptions o;
  o.use_closed_form = false;
  return o;
}

double sup_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// -z on (0, L), +z on (L, 2L), as right-reflection data: v~(0) = 0 = alpha.
FirstBornData balanced_blocks(cplx z, double L) {
  return FirstBornData::analytic(DataKind::RRight, [z, L](double k) {
    if (std::abs(k) < 1e-12) return -z * L * L;
    const double s = std::sin(k * L);
    return -z * s * s * std::exp(-2.0 * kI * k * L) / (k * k);
  });
}

}  // namespace

TEST_CASE("inverse transform of the barrier data") {
  const cplx z{1.0, 0.5};
  const double L = 2.0;
  const auto d = registered_data("barrier_m12", {{"z_re", 1.0}, {"z_im", 0.5}, {"L", L}});
  const auto x = grid(-1.0, 5.0, 25);
  auto oracle = [&](double xx) { return z * (std::abs(xx) - std::abs(2 * L - xx)) / 8.0; };
  const auto closed = inverse_fourier(d, x);
  CHECK(closed.closed_form);
  const auto num = inverse_fourier(d, x, numeric());
  CHECK_FALSE(num.closed_form);
  for (std::size_t i = 0; i < x.size(); ++i) {
    CAPTURE(x[i]);
    CHECK(std::abs(closed.values[i] - oracle(x[i])) < 1e-14);
    CHECK(std::abs(num.values[i] - oracle(x[i])) < 1e-3);
  }
}

TEST_CASE("inverse transform of Gaussian data") {
  const double L = 0.8;
  const auto d = registered_data("gaussian_m12", {{"z_re", 1.0}, {"L", L}});
  const auto x = grid(-3.0, 3.0, 31);
  const auto num = inverse_fourier(d, x, numeric());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double want = std::exp(-x[i] * x[i] / (4 * L * L)) / (2 * std::sqrt(kPi) * L);
    CHECK(std::abs(num.values[i] - want) < 1e-8);
  }
}

TEST_CASE("zero data reconstruct to zero") {
  const auto x = grid(-2.0, 2.0, 21);
  for (auto kind : {DataKind::M12, DataKind::M21, DataKind::RRight, DataKind::RLeft}) {
    const auto d = FirstBornData::analytic(kind, [](double) { return cplx{}; });
    const auto t = inverse_fourier(d, x);
    for (const auto& v : t.values) CHECK(v == cplx(0.0));
    for (auto route : {Route::M12, Route::M21, Route::RightReflection, Route::LeftReflection}) {
      if (route_data_kind(route) != kind) continue;
      const auto r = reconstruct(d, route, x);
      CHECK(r.alpha == cplx(0.0));
      for (const auto& v : r.v) CHECK(v == cplx(0.0));
    }
  }
  for (const char* route : {"m12", "m21", "rr", "rl"}) {
    const auto rep = roundtrip_validate(PotentialSpec::zero(), *route_from_string(route));
    CHECK(rep.ok);
    CHECK(rep.sup_error == 0.0);
  }
}

TEST_CASE("barrier recovered from M12 data") {
  const cplx z{1.0, 0.5};
  const double L = 2.0;
  const auto d = registered_data("barrier_m12", {{"z_re", 1.0}, {"z_im", 0.5}, {"L", L}});
  const auto x = grid(-0.5, 2.5, 301);
  for (const auto& opt : {InverseOptions{}, numeric()}) {
    const auto r = potential_from_offdiagonal(d, x, opt);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (std::abs(x[i]) < 0.02 * L || std::abs(x[i] - L) < 0.02 * L) continue;
      const cplx want = x[i] > 0 && x[i] < L ? z : cplx{};
      CAPTURE(x[i]);
      CHECK(std::abs(r.v[i] - want) < 1e-3);
    }
  }
}

TEST_CASE("two-block data recovers the block signs") {
  const double L = 1.0, J = 0.5;
  const auto d = registered_data("two_block_m12", {{"z_re", 1.0}, {"L", L}, {"J", J}});
  const auto x = grid(-0.5, 3.0, 351);
  const auto r = potential_from_offdiagonal(d, x, numeric());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xx = x[i];
    const bool near_jump = std::abs(xx) < 0.05 || std::abs(xx - L) < 0.05 ||
                           std::abs(xx - L - J) < 0.05 || std::abs(xx - 2 * L - J) < 0.05;
    if (near_jump) continue;
    double want = 0.0;
    if (xx > 0 && xx < L) want = -1.0;
    if (xx > L + J && xx < 2 * L + J) want = 1.0;
    CAPTURE(xx);
    CHECK(std::abs(r.v[i] - want) < 1e-2);
  }
}

TEST_CASE("Gaussian pairs") {
  const double L = 0.9;
  const cplx z{0.7, -0.2};
  const auto x = grid(-3.0, 3.0, 61);
  const std::map<std::string, double> p{{"z_re", z.real()}, {"z_im", z.imag()}, {"L", L}};
  const auto a = registered_data("gaussian_m12", p);
  const auto b = registered_data("gaussian_over_k_m12", p);
  for (const auto& opt : {InverseOptions{}, numeric()}) {
    const auto ra = potential_from_offdiagonal(a, x, opt);
    const auto rb = potential_from_offdiagonal(b, x, opt);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double g = std::exp(-x[i] * x[i] / (L * L));
      const cplx va = -2.0 * z * x[i] * g / (std::sqrt(kPi) * L * L * L);
      const cplx vb = 2.0 * kI * z * g / (std::sqrt(kPi) * L * L);
      CHECK(std::abs(ra.v[i] - va) < 1e-6);
      CHECK(std::abs(rb.v[i] - vb) < 1e-6);
    }
  }
}

TEST_CASE("property: M12 and M21 routes agree") {
  const auto x = grid(-3.0, 3.0, 41);
  const std::vector<PotentialSpec> specs{PotentialSpec::gaussian_derivative({0.5, 0.2}, 0.8),
                                         PotentialSpec::gaussian_plain(0.7, 1.0, 0.3)};
  for (const auto& s : specs) {
    const auto a = potential_from_offdiagonal(first_born_data(s, DataKind::M12), x);
    const auto b = potential_from_offdiagonal(first_born_data(s, DataKind::M21), x);
    CHECK(sup_diff(a.v, b.v) < 1e-6);
  }
}

TEST_CASE("property: M12 reconstruction integrates to v~(0)") {
  const auto s = PotentialSpec::gaussian_plain({0.7, 0.1}, 1.0, 0.3);
  const auto x = grid(-8.0, 8.0, 801);
  const auto r = potential_from_offdiagonal(first_born_data(s, DataKind::M12), x);
  const double h = x[1] - x[0];
  cplx integral = 0.5 * (r.v.front() + r.v.back());
  for (std::size_t i = 1; i + 1 < x.size(); ++i) integral += r.v[i];
  integral *= h;
  CHECK(test::rel_err(integral, fourier1(s, 0.0, 1.0)) < 1e-6);
}

TEST_CASE("property: alpha equals the integral of v") {
  const std::vector<PotentialSpec> specs{PotentialSpec::barrier({1.0, 0.5}, 2.0),
                                         PotentialSpec::barrier(0.8, 1.5, -0.3),
                                         PotentialSpec::gaussian_derivative({0.5, 0.2}, 0.8),
                                         PotentialSpec::gaussian_plain(0.7, 1.0)};
  const auto x = grid(-1.0, 3.0, 41);
  for (const auto& s : specs) {
    const std::string family = to_string(s.family());
    CAPTURE(family);
    const cplx integral = fourier1(s, 0.0, 1.0);
    for (auto route : {Route::RightReflection, Route::LeftReflection}) {
      const auto r = reconstruct(first_born_data(s, route_data_kind(route)), route, x);
      CAPTURE(r.alpha_source);
      if (std::abs(integral) > 1e-12)
        CHECK(test::rel_err(r.alpha, integral) < 1e-6);
      else
        CHECK(std::abs(r.alpha) < 1e-8);
    }
  }
}

TEST_CASE("balanced blocks give alpha = 0 from the tails") {
  // L = 1 would make 1 + R(0) = 1 - z L^2 vanish.
  const cplx z{1.0, 0.0};
  const double L = 0.7;
  const auto x = grid(-0.5, 2.0, 251);
  const auto r = potential_from_right_reflection(balanced_blocks(z, L), x);
  CHECK(r.alpha_source == "tails");
  CHECK(std::abs(r.alpha) <= 1e-8);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xx = x[i];
    if (std::abs(xx) < 0.05 || std::abs(xx - L) < 0.05 || std::abs(xx - 2 * L) < 0.05) continue;
    cplx want{};
    if (xx > 0 && xx < L) want = -z;
    if (xx > L && xx < 2 * L) want = z;
    CAPTURE(xx);
    CHECK(std::abs(r.v[i] - want) < 1e-2);
  }
}

TEST_CASE("property: reconstruction is linear in the data") {
  const auto d1 = registered_data("gaussian_m12", {{"z_re", 1.0}, {"L", 0.8}});
  const auto d2 = first_born_data(PotentialSpec::gaussian_derivative({0.5, 0.2}, 0.6),
                                  DataKind::M12);
  const auto sum = FirstBornData::analytic(DataKind::M12, [&](double k) { return d1(k) + d2(k); });
  InverseOptions o = numeric();
  o.k_max = 40.0;
  const auto x = grid(-3.0, 3.0, 41);
  const auto a = potential_from_offdiagonal(d1, x, o);
  const auto b = potential_from_offdiagonal(d2, x, o);
  const auto c = potential_from_offdiagonal(sum, x, o);
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    worst = std::max(worst, std::abs(c.v[i] - a.v[i] - b.v[i]));
  CHECK(worst <= 1e-10);
}

TEST_CASE("round trips") {
  RoundTripOptions o;
  auto g = roundtrip_validate(PotentialSpec::gaussian_derivative({0.5, 0.2}, 0.8), Route::M12, o);
  CHECK(g.ok);
  CHECK(g.sup_error <= 1e-6);
  for (auto route : {Route::M12, Route::M21, Route::RightReflection, Route::LeftReflection}) {
    CAPTURE(to_string(route));
    const auto b = roundtrip_validate(PotentialSpec::barrier({1.0, 0.5}, 2.0), route, o);
    CHECK(b.ok);
    CHECK(b.sup_error <= 1e-3);
  }
}

TEST_CASE("infinite-range potential from the left-reflection data") {
  const double z = 1e-2, K = 1.0, L = 1.0;
  const auto d = registered_data("eg01_rl", {{"z_re", z}, {"K", K}, {"L", L}});
  const double dx = 0.005;
  const auto x = grid(-8.0, 8.0, 3201);
  const auto r = potential_from_left_reflection(d, x);
  CHECK(std::abs(r.alpha) <= 1e-8);
  // Same shape as the analytic family with the coupling sign reversed.
  const auto family = PotentialSpec::infinite_range(-z, K, L);
  for (std::size_t i = 0; i < x.size(); i += 40)
    CHECK(std::abs(r.v[i] - evaluate(family, x[i], 1.0)) < 1e-8);

  const auto sampled = PotentialSpec::sampled(x.front(), dx, r.v);
  CHECK(std::abs(fourier1(sampled, 0.0, 1.0)) < 1e-8);
  for (double k : {0.3, 0.7, 1.0, 1.5, 2.5}) {
    const cplx forward = amplitudes_first_order(sampled, k).r_left;
    CAPTURE(k);
    CHECK(std::abs(forward - d(k)) <= 1e-6);
  }
}

TEST_CASE("degenerate alpha denominator") {
  const auto b = PotentialSpec::barrier({1.0, 0.5}, 2.0);
  const auto full = first_born_data(b, DataKind::RRight);
  const auto bare = FirstBornData::analytic(DataKind::RRight, full.handle);
  const auto x = grid(-0.5, 2.5, 31);
  try {
    (void)potential_from_right_reflection(bare, x);
    FAIL("expected DegenerateAlphaDenominator");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateAlphaDenominator);
  }
  auto supplied = bare;
  supplied.alpha = cplx(2.0, 1.0);
  const auto r = potential_from_right_reflection(supplied, x);
  CHECK(r.alpha_source == "supplied");
  CHECK(r.alpha == cplx(2.0, 1.0));
  const auto t = potential_from_right_reflection(full, x);
  CHECK(t.alpha_source == "transmission");
  CHECK(std::abs(t.alpha - cplx(2.0, 1.0)) < 1e-12);
}

TEST_CASE("slowly converging tails need window doublings") {
  // D^(x) -> (i/2) sign(x) (1 - e^{-|x|}) approximately; tails settle like e^{-X}.
  const auto d = FirstBornData::analytic(DataKind::RRight, [](double k) {
    return cplx(std::exp(-std::pow(k / 20.0, 2)) / (k * (1.0 + k * k)));
  });
  const auto x = grid(-1.0, 1.0, 11);
  InverseOptions short_budget;
  short_budget.max_window_doublings = 1;
  try {
    (void)potential_from_right_reflection(d, x, short_budget);
    FAIL("expected TailNonconvergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TailNonconvergence);
  }
  const auto r = potential_from_right_reflection(d, x);
  CHECK(r.alpha_source == "tails");
  CHECK(r.tail_window > 8.0);
}

TEST_CASE("derivative accuracy bound") {
  const auto d = registered_data("gaussian_m12", {{"z_re", 1.0}, {"L", 0.8}});
  const auto x = grid(-2.0, 2.0, 21);
  const auto r = potential_from_offdiagonal(d, x, numeric());
  CHECK(r.smoothness < 1e-3);
  // The step follows the data bandwidth, so only an unreachable bound trips the check.
  InverseOptions strict = numeric();
  strict.smoothness_bound = 1e-3 * r.smoothness;
  try {
    (void)potential_from_offdiagonal(d, x, strict);
    FAIL("expected NonSmoothData");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonSmoothData);
  }
  // Data without decay: a truncation warning, not a failure.
  const auto flat = FirstBornData::analytic(DataKind::M12, [](double) { return cplx(1.0); });
  const auto t = potential_from_offdiagonal(flat, x);
  REQUIRE_FALSE(t.warnings.empty());
  CHECK(t.warnings.front().rfind("TruncationWarning", 0) == 0);
}

TEST_CASE("tabulated data") {
  try {
    (void)FirstBornData::tabulated(DataKind::M12, {-1.0, 0.0, 2.0}, {1.0, 1.0, 1.0});
    FAIL("expected InvalidInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidInput);
  }
  const double L = 0.8;
  std::vector<double> k;
  std::vector<cplx> v;
  for (int i = -2000; i <= 2000; ++i) {
    k.push_back(i * 5e-3);
    v.push_back(std::exp(-std::pow(L * k.back(), 2)));
  }
  const auto d = FirstBornData::tabulated(DataKind::M12, k, v);
  CHECK(d.is_tabulated());
  CHECK(std::abs(d(0.0025) - std::exp(-std::pow(L * 0.0025, 2))) < 1e-5);
  const auto x = grid(-2.0, 2.0, 21);
  const auto r = potential_from_offdiagonal(d, x);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const cplx want = -2.0 * x[i] * std::exp(-x[i] * x[i] / (L * L)) / (std::sqrt(kPi) * L * L * L);
    CHECK(std::abs(r.v[i] - want) < 1e-5);
  }
}

TEST_CASE("unknown registered names") {
  try {
    (void)registered_data("no_such_data", {});
    FAIL("expected InvalidInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidInput);
  }
  CHECK(registered_names().size() >= 6);
}
