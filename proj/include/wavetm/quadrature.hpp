#pragma once

// Adaptive composite Gauss-Legendre quadrature for complex integrands.
//
// The interval is first cut into panels no wider than half an oscillation
// period (pi / frequency); each panel is then bisected until the panel rule
// and the two-half rule agree. All routines are pure.

#include <span>
#include <utility>
#include <vector>

#include "wavetm/core.hpp"

namespace wavetm::quad {

struct Rule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule; computed once per n and cached.
const Rule& gauss_legendre(int n);

struct Options {
  double abs_tol = 1e-10;
  double rel_tol = 1e-13;
  /// Highest angular frequency present in the integrand (rad per length).
  double frequency = 0.0;
  /// Upper bound on the initial panel width, 0 for none.
  double max_panel = 0.0;
  int max_panels = 1 << 18;
};

struct Result {
  cplx value{};
  double error = 0.0;
};

/// Fixed-rule integral on [a, b].
template <class F>
cplx fixed(const F& f, double a, double b, const Rule& rule) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  cplx sum{};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

int initial_panels(double a, double b, const Options& opt);

/// Adaptive integral of f over [a, b].
template <class F>
Result integrate(const F& f, double a, double b, const Options& opt = {}) {
  if (a == b) return {};
  const Rule& rule = gauss_legendre(16);
  const int n0 = initial_panels(a, b, opt);
  const double span = b - a;

  struct Panel {
    double lo, hi;
    cplx whole;
  };
  std::vector<Panel> stack;
  stack.reserve(64);
  for (int i = n0 - 1; i >= 0; --i) {
    const double lo = a + span * i / n0;
    const double hi = (i == n0 - 1) ? b : a + span * (i + 1) / n0;
    stack.push_back({lo, hi, fixed(f, lo, hi, rule)});
  }

  Result out;
  int panels = n0;
  bool unconverged = false;
  while (!stack.empty()) {
    Panel p = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (p.lo + p.hi);
    const cplx left = fixed(f, p.lo, mid, rule);
    const cplx right = fixed(f, mid, p.hi, rule);
    const cplx refined = left + right;
    const double diff = std::abs(refined - p.whole);
    const double share = opt.abs_tol * std::abs((p.hi - p.lo) / span);
    const bool converged = diff <= std::max(share, opt.rel_tol * std::abs(refined));
    const bool exhausted =
        panels >= opt.max_panels || mid == p.lo || mid == p.hi;
    if (converged || exhausted) {
      out.value += refined;
      out.error += diff;
      unconverged = unconverged || !converged;
      continue;
    }
    ++panels;
    stack.push_back({mid, p.hi, right});
    stack.push_back({p.lo, mid, left});
  }
  if (unconverged &&
      out.error > 16.0 * std::max(opt.abs_tol, opt.rel_tol * std::abs(out.value))) {
    throw Error(ErrorCode::QuadratureFailure,
                "adaptive quadrature did not converge; residual estimate " +
                    std::to_string(out.error));
  }
  return out;
}

/// Integrate over consecutive segments [pts[i], pts[i+1]], summing results.
template <class F>
Result integrate_pieces(const F& f, std::span<const double> pts,
                        const Options& opt = {}) {
  Result total;
  if (pts.size() < 2) return total;
  const double span = pts.back() - pts.front();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    Options o = opt;
    if (span > 0) o.abs_tol = opt.abs_tol * (pts[i + 1] - pts[i]) / span;
    const Result r = integrate(f, pts[i], pts[i + 1], o);
    total.value += r.value;
    total.error += r.error;
  }
  return total;
}

}  // namespace wavetm::quad
