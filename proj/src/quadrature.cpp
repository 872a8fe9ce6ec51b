#include "wavetm/quadrature.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace wavetm::quad {

namespace {

Rule compute_rule(int n) {
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

}  // namespace

const Rule& gauss_legendre(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidInput, "rule needs at least two nodes");
  static std::mutex mu;
  static std::map<int, Rule> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
  return it->second;
}

int initial_panels(double a, double b, const Options& opt) {
  const double width = std::abs(b - a);
  double h = width;
  if (opt.frequency > 0.0) h = std::min(h, kPi / opt.frequency);
  if (opt.max_panel > 0.0) h = std::min(h, opt.max_panel);
  const double n = std::ceil(width / h);
  return static_cast<int>(std::clamp(n, 1.0, static_cast<double>(opt.max_panels)));
}

}  // namespace wavetm::quad
