#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "wavetm/core.hpp"

namespace wavetm::test {

// Composite Simpson rule with n (even) intervals.
inline cplx simpson(const std::function<cplx(double)>& f, double a, double b, int n = 20000) {
  const double h = (b - a) / n;
  cplx s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * (h / 3.0);
}

inline double rel_err(cplx got, cplx want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240917);
  return g;
}

inline double uniform(double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng());
}

inline cplx uniform_cplx(double r) { return {uniform(-r, r), uniform(-r, r)}; }

}  // namespace wavetm::test
