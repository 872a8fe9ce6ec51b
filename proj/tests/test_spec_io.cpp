#include <optional>

#include "doctest.h"
#include "test_util.hpp"
#include "wavetm/spec_io.hpp"

using namespace wavetm;

namespace {

std::vector<PotentialSpec> samples() {
  return {
      PotentialSpec::zero(),
      PotentialSpec::delta_pair(1.0, kI, -0.5, 1.0),
      PotentialSpec::barrier({1.0, 0.5}, 2.0, -0.3),
      PotentialSpec::truncated_exponential({0.0, 0.3}, 2.0, kPi),
      PotentialSpec::locally_periodic(0.3, 1.0, 4 * kPi, {{1, 0.5}, {-2, {0.0, 0.25}}}),
      PotentialSpec::gaussian_plain(0.7, 1.0, 0.2),
      PotentialSpec::gaussian_derivative({0.5, 0.2}, 0.8),
      PotentialSpec::geometric_series(0.1, 0.5, {0.0, 0.3}, 1.0, 2 * kPi),
      PotentialSpec::infinite_range(0.05, 1.0, 1.0),
      PotentialSpec::sampled(-1.0, 0.5, {0.0, 1.0, {2.0, -1.0}, 0.5, 0.0}),
      PotentialSpec::barrier(1.0, 1.0).with_coupling(Coupling::k_squared(1e-3)),
  };
}

std::optional<ErrorCode> code_of(const std::string& text, std::string* message = nullptr) {
  try {
    (void)parse_spec(text);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  FAIL("document was accepted: " << text);
  return std::nullopt;
}

}  // namespace

TEST_CASE("property: serialization round trips") {
  for (const auto& s : samples()) {
    const std::string text = spec_to_json(s);
    CAPTURE(text);
    const auto back = parse_spec(text);
    CHECK(back.family() == s.family());
    CHECK(spec_to_json(back) == text);
    CHECK(back.coupling().kind == s.coupling().kind);
    CHECK(back.coupling().c == s.coupling().c);
    const auto sup = s.support();
    CHECK(back.support().x_min == sup.x_min);
    CHECK(back.support().x_max == sup.x_max);
    if (s.distributional()) continue;
    for (int i = 0; i < 20; ++i) {
      const double x = test::uniform(sup.x_min - 0.5, sup.x_max + 0.5);
      CHECK(evaluate_shape(back, x) == evaluate_shape(s, x));
    }
  }
}

TEST_CASE("shipped fixture files parse") {
  for (const char* name : {"barrier_complex", "barrier_real", "cosine", "delta_pair", "exponential",
                           "three_mode", "gaussian_derivative", "gaussian_plain", "geometric",
                           "infinite_range"}) {
    CAPTURE(name);
    const auto s = load_spec(std::string(WAVETM_FIXTURE_DIR) + "/" + name + ".json");
    CHECK(parse_spec(spec_to_json(s)).family() == s.family());
  }
}

TEST_CASE("complex values accept numbers and pairs") {
  const auto a = parse_spec(R"({"family": "rectangular_barrier", "params": {"z": 2, "L": 1}})");
  const auto b = parse_spec(R"({"family": "rectangular_barrier", "params": {"z": [2, 0], "L": 1}})");
  CHECK(evaluate_shape(a, 0.5) == cplx(2.0));
  CHECK(evaluate_shape(b, 0.5) == cplx(2.0));
  CHECK(evaluate_shape(a, 1.5) == cplx(0.0));
}

TEST_CASE("errors name the offending field") {
  std::string msg;
  CHECK(code_of("{not json", &msg) == ErrorCode::ParseError);
  CHECK(code_of(R"({"params": {}})", &msg) == ErrorCode::ParseError);
  CHECK(msg.find("family") != std::string::npos);
  CHECK(code_of(R"({"family": "nope", "params": {}})", &msg) == ErrorCode::InvalidInput);
  CHECK(msg.find("nope") != std::string::npos);
  CHECK(code_of(R"({"family": "rectangular_barrier", "params": {"z": "x", "L": 1}})", &msg) ==
        ErrorCode::ParseError);
  CHECK(msg.find("params.z") != std::string::npos);
  CHECK(code_of(R"({"family": "rectangular_barrier", "params": {"z": 1}})", &msg) ==
        ErrorCode::ParseError);
  CHECK(msg.find("params.L") != std::string::npos);
  CHECK(code_of(R"({"family": "locally_periodic_fourier",
                    "params": {"z": 1, "K": 1, "L": 6.283185307179586,
                               "terms": [{"j": 1, "c": 1}, {"j": 2.5, "c": 1}]}})",
                &msg) == ErrorCode::InvalidInput);
  CHECK(msg.find("params.terms[1].j") != std::string::npos);
  CHECK(code_of(R"({"family": "locally_periodic_fourier",
                    "params": {"z": 1, "K": 1, "L": 6.283185307179586,
                               "terms": [{"j": 1, "c": [1]}]}})",
                &msg) == ErrorCode::ParseError);
  CHECK(msg.find("params.terms[0].c") != std::string::npos);
  CHECK(code_of(R"({"family": "rectangular_barrier", "params": {"z": 1, "L": 1},
                    "support": [0, 2]})",
                &msg) == ErrorCode::InvalidInput);
  CHECK(msg.find("support") != std::string::npos);
  CHECK(code_of(R"({"family": "rectangular_barrier", "params": {"z": 1, "L": 1},
                    "coupling": "quadratic"})",
                &msg) == ErrorCode::ParseError);
  CHECK(msg.find("coupling") != std::string::npos);
  CHECK(code_of(R"({"family": "infinite_range_analytic", "params": {"z": 1, "K": 1, "L": 1},
                    "support": "infinite", "truncation_radius": -1})",
                &msg) == ErrorCode::InvalidInput);
  CHECK(msg.find("truncation_radius") != std::string::npos);
}

TEST_CASE("unreadable files") {
  try {
    (void)load_spec("/nonexistent/spec.json");
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
  }
}
