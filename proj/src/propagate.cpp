#include "propagate.hpp"

#include <algorithm>
#include <boost/numeric/odeint.hpp>

namespace wavetm::detail {

namespace {

namespace odeint = boost::numeric::odeint;

// Extended precision keeps O(z^3) amplitudes resolvable next to O(1) entries.
using Real = long double;
using C = std::complex<Real>;
using State = std::vector<C>;

constexpr int kPeakSamples = 512;

struct Segment {
  double a, b;
};

double max_step(const PotentialSpec& spec, double k) {
  double h = 0.5 * kPi / std::abs(k);
  if (const double f = spec.max_frequency(); f > 0.0) h = std::min(h, 2.0 * kPi / f);
  h = std::min(h, spec.feature_length());
  return 0.1 * h;
}

std::vector<Segment> segments(const PotentialSpec& spec) {
  const auto pts = spec.breakpoints();
  std::vector<Segment> out;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    if (pts[i + 1] > pts[i]) out.push_back({pts[i], pts[i + 1]});
  return out;
}

// dY/dx for a block of 2x2 matrices stored row major, four entries each.
// Exact mode: Y = U, dU = -i g N U. Born mode: Y = (A_1..A_n), dA_l = -i g N A_{l-1}.
class System {
 public:
  System(const PotentialSpec& spec, double k, double scale, bool born)
      : spec_(spec), k_(k), factor_(spec.coupling().factor(k)), scale_(scale),
        born_(born) {}

  /// Stage points on a segment end are evaluated from inside the segment, so
  /// open-interval families see their interior value.
  void set_segment(Segment seg) { seg_ = seg; }

  void operator()(const State& y, State& dy, Real x) const {
    double xd = static_cast<double>(x);
    if (xd <= seg_.a) xd = std::nextafter(seg_.a, seg_.b);
    if (xd >= seg_.b) xd = std::nextafter(seg_.b, seg_.a);
    const cplx v = factor_ * evaluate_shape(spec_, xd) / scale_;
    const C g = C(static_cast<Real>(v.real()), static_cast<Real>(v.imag())) /
                static_cast<Real>(2.0 * k_);
    const Real phase = -2.0L * static_cast<Real>(k_) * x;
    const C e(std::cos(phase), std::sin(phase));  // e^{-2ikx}
    const C mi_g = C(0, -1) * g;
    const std::size_t blocks = y.size() / 4;
    for (std::size_t b = 0; b < blocks; ++b) {
      C u11, u12, u21, u22;
      if (born_ && b == 0) {
        u11 = 1; u12 = 0; u21 = 0; u22 = 1;
      } else {
        const std::size_t s = born_ ? 4 * (b - 1) : 4 * b;
        u11 = y[s]; u12 = y[s + 1]; u21 = y[s + 2]; u22 = y[s + 3];
      }
      const std::size_t d = 4 * b;
      dy[d] = mi_g * (u11 + e * u21);
      dy[d + 1] = mi_g * (u12 + e * u22);
      dy[d + 2] = mi_g * (-u11 / e - u21);
      dy[d + 3] = mi_g * (-u12 / e - u22);
    }
  }

 private:
  const PotentialSpec& spec_;
  double k_;
  double factor_;
  double scale_;
  bool born_;
  Segment seg_{0.0, 0.0};
};

void integrate_segment(System& sys, State& y, Segment seg, double h_max,
                       const OdeOptions& opt, long& steps) {
  sys.set_segment(seg);
  auto stepper = odeint::make_controlled(
      static_cast<Real>(opt.tol), static_cast<Real>(opt.tol),
      odeint::runge_kutta_fehlberg78<State, Real, State, Real>());
  const Real a = seg.a, b = seg.b;
  const Real span = b - a;
  const Real end_slack = 8 * std::numeric_limits<double>::epsilon() *
                         std::max<Real>({std::abs(a), std::abs(b), 1});
  Real x = a;
  Real h = std::min<Real>(h_max, span);
  while (b - x > end_slack) {
    if (++steps > opt.max_steps)
      throw Error(ErrorCode::IntegrationFailure,
                  "step limit reached at x = " + std::to_string(static_cast<double>(x)));
    if (x + h > b) h = b - x;
    const auto result = stepper.try_step(sys, y, x, h);
    if (result == odeint::fail) {
      if (h < 1e-14L * std::max<Real>(span, 1))
        throw Error(ErrorCode::IntegrationFailure,
                    "step size underflow at x = " +
                        std::to_string(static_cast<double>(x)));
      continue;
    }
    h = std::min<Real>(h, h_max);
  }
}

State identity_state() { return {1, 0, 0, 1}; }

Mat2 to_mat(const State& y, std::size_t offset) {
  auto c = [&](std::size_t i) {
    return cplx(static_cast<double>(y[offset + i].real()),
                static_cast<double>(y[offset + i].imag()));
  };
  return {c(0), c(1), c(2), c(3)};
}

C to_real(cplx z) { return C(static_cast<Real>(z.real()), static_cast<Real>(z.imag())); }

// dst block d += c N(ka) src block s, where N(ka) = [[1, e^{-2ika}], [-e^{2ika}, -1]].
void add_jump(State& dst, std::size_t d, const State& src, std::size_t s, C c,
              double a, double k) {
  const Real phase = -2.0L * static_cast<Real>(k) * static_cast<Real>(a);
  const C e(std::cos(phase), std::sin(phase));
  const C u11 = src[s], u12 = src[s + 1], u21 = src[s + 2], u22 = src[s + 3];
  dst[d] += c * (u11 + e * u21);
  dst[d + 1] += c * (u12 + e * u22);
  dst[d + 2] += c * (-u11 / e - u21);
  dst[d + 3] += c * (-u12 / e - u22);
}

}  // namespace

double peak_magnitude(const PotentialSpec& spec, double k) {
  const double f = std::abs(spec.coupling().factor(k));
  if (spec.distributional()) {
    double m = 0.0;
    for (const auto& [a, z] : spec.impulses(k)) m = std::max(m, std::abs(z));
    return m;
  }
  if (const auto* g = std::get_if<SampledGrid>(&spec.params())) {
    double m = 0.0;
    for (const auto& v : g->values) m = std::max(m, std::abs(v));
    return f * m;
  }
  const Support s = spec.support();
  double m = 0.0;
  for (int i = 0; i <= kPeakSamples; ++i) {
    // Sample cell midpoints so open-interval families are not missed.
    const double x = s.x_min + (s.x_max - s.x_min) * (i + 0.5) / (kPeakSamples + 1);
    m = std::max(m, std::abs(evaluate_shape(spec, x)));
  }
  return f * m;
}

Mat2 evolve_exact(const PotentialSpec& spec, double k, const OdeOptions& opt,
                  std::vector<std::string>* warnings) {
  if (k == 0.0 || !std::isfinite(k))
    throw Error(ErrorCode::InvalidWavenumber, "wavenumber must be nonzero and finite");
  State y = identity_state();
  if (spec.distributional()) {
    for (const auto& [a, z] : spec.impulses(k)) {
      const State before = y;
      add_jump(y, 0, before, 0, C(0, -1) * to_real(z) / static_cast<Real>(2.0 * k), a, k);
    }
    return to_mat(y, 0);
  }
  const double peak = peak_magnitude(spec, k);
  if (peak == 0.0) return Mat2::identity();
  const Support s = spec.support();
  if (s.infinite && warnings) {
    const double f = std::abs(spec.coupling().factor(k));
    const double tail = f * std::max(std::abs(evaluate_shape(spec, s.x_min)),
                                     std::abs(evaluate_shape(spec, s.x_max)));
    if (tail > opt.truncation_threshold * peak)
      warnings->push_back("TruncationWarning: potential at the window edge is " +
                          std::to_string(tail / peak) + " of its peak");
  }
  System sys(spec, k, 1.0, false);
  const double h_max = max_step(spec, k);
  long steps = 0;
  for (const auto& seg : segments(spec)) integrate_segment(sys, y, seg, h_max, opt, steps);
  return to_mat(y, 0);
}

std::vector<Mat2> evolve_born(const PotentialSpec& spec, double k, int orders,
                              const OdeOptions& opt) {
  if (k == 0.0 || !std::isfinite(k))
    throw Error(ErrorCode::InvalidWavenumber, "wavenumber must be nonzero and finite");
  if (orders < 1) return {};
  const double scale = peak_magnitude(spec, k);
  std::vector<Mat2> out(orders, Mat2::zero());
  if (scale == 0.0) return out;

  // Terms are carried as A_l / scale^l so every order is O(1) in the state.
  State y(4 * static_cast<std::size_t>(orders), C(0));
  if (spec.distributional()) {
    for (const auto& [a, z] : spec.impulses(k)) {
      const C c = C(0, -1) * to_real(z / scale) / static_cast<Real>(2.0 * k);
      const State before = y;
      const State id = identity_state();
      for (int l = 1; l <= orders; ++l) {
        if (l == 1)
          add_jump(y, 0, id, 0, c, a, k);
        else
          add_jump(y, 4 * static_cast<std::size_t>(l - 1), before,
                   4 * static_cast<std::size_t>(l - 2), c, a, k);
      }
    }
  } else {
    System sys(spec, k, scale, true);
    const double h_max = max_step(spec, k);
    long steps = 0;
    for (const auto& seg : segments(spec)) integrate_segment(sys, y, seg, h_max, opt, steps);
  }
  double power = 1.0;
  for (int l = 1; l <= orders; ++l) {
    power *= scale;
    Mat2 m = to_mat(y, 4 * static_cast<std::size_t>(l - 1));
    out[l - 1] = m * cplx(power);
  }
  return out;
}

}  // namespace wavetm::detail
