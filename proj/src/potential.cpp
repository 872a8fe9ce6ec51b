#include "wavetm/potential.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "wavetm/quadrature.hpp"

namespace wavetm {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kDefaultTruncationWidths = 8.0;
constexpr double kGeometricCutoff = 1e-18;

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidInput, what);
}

void require_k(double k) {
  if (!(k > 0.0) || !std::isfinite(k))
    throw Error(ErrorCode::InvalidWavenumber,
                "wavenumber must be positive and finite, got " + std::to_string(k));
}

// Number of geometric terms kept: |r|^j >= cutoff.
int geometric_terms(cplx r) {
  const double m = std::abs(r);
  if (m == 0.0) return 0;
  return std::max(1, static_cast<int>(std::ceil(std::log(kGeometricCutoff) / std::log(m))));
}

std::map<int, cplx> merged_terms(const std::vector<FourierTerm>& terms) {
  std::map<int, cplx> out;
  for (const auto& t : terms) out[t.j] += t.c;
  return out;
}

// int_0^L du2 e^{-i p2 u2} int_0^{u2} du1 e^{-i p1 u1}
cplx ordered_box(double p1, double p2, double length) {
  if (std::abs(p1) * length >= 0.5) {
    return (box_transform(p2, length) - box_transform(p1 + p2, length)) /
           (kI * p1);
  }
  // Inner integral u e^{-i p1 u/2} sinc(p1 u/2) is well conditioned here.
  const auto& rule = quad::gauss_legendre(20);
  const double freq = std::abs(p2) + std::abs(p1);
  const int panels = 1 + static_cast<int>(std::ceil(freq * length / kPi));
  cplx sum{};
  for (int i = 0; i < panels; ++i) {
    const double lo = length * i / panels;
    const double hi = length * (i + 1) / panels;
    sum += quad::fixed(
        [&](double u) {
          return std::polar(1.0, -p2 * u) * u * std::polar(1.0, -0.5 * p1 * u) *
                 sinc(cplx(0.5 * p1 * u, 0.0));
        },
        lo, hi, rule);
  }
  return sum;
}

}  // namespace

const char* to_string(Family f) noexcept {
  switch (f) {
    case Family::DeltaPair: return "delta_pair";
    case Family::RectangularBarrier: return "rectangular_barrier";
    case Family::TruncatedExponential: return "truncated_exponential";
    case Family::LocallyPeriodicFourier: return "locally_periodic_fourier";
    case Family::GaussianDerivative: return "gaussian_derivative";
    case Family::GaussianPlain: return "gaussian_plain";
    case Family::GeometricSeriesPeriodic: return "geometric_series_periodic";
    case Family::InfiniteRangeAnalytic: return "infinite_range_analytic";
    case Family::SampledGrid: return "sampled_grid";
  }
  return "unknown";
}

std::optional<Family> family_from_string(const std::string& name) {
  for (int i = 0; i <= static_cast<int>(Family::SampledGrid); ++i) {
    const auto f = static_cast<Family>(i);
    if (name == to_string(f)) return f;
  }
  return std::nullopt;
}

PotentialSpec::PotentialSpec(FamilyParams params, Coupling coupling,
                             double truncation_radius)
    : params_(std::move(params)),
      coupling_(coupling),
      truncation_radius_(truncation_radius) {
  require(std::isfinite(coupling_.c), "coupling constant must be finite");
  require(truncation_radius_ >= 0.0, "truncation radius must be non-negative");
  std::visit(
      overloaded{
          [](const DeltaPair& p) {
            require(std::isfinite(p.a1) && std::isfinite(p.a2),
                    "delta positions must be finite");
          },
          [](const RectangularBarrier& p) {
            require(p.length > 0.0, "barrier length must be positive");
          },
          [](const TruncatedExponential& p) {
            require(p.length > 0.0, "length must be positive");
          },
          [](const LocallyPeriodicFourier& p) {
            require(p.length > 0.0, "length must be positive");
            require(p.K > 0.0, "K must be positive");
            int g = 0;
            for (const auto& t : p.terms)
              if (t.c != cplx{}) g = std::gcd(g, std::abs(t.j));
            if (g > 0) {
              const double period = 2.0 * kPi / (g * p.K);
              const double n = p.length / period;
              if (std::abs(n - std::round(n)) > 1e-9 * std::max(1.0, n) ||
                  std::round(n) < 1.0)
                throw Error(ErrorCode::NotPeriodic,
                            "locally periodic length " + std::to_string(p.length) +
                                " is not an integer multiple of the period " +
                                std::to_string(period));
            }
          },
          [](const GaussianDerivative& p) {
            require(p.width > 0.0, "gaussian width must be positive");
          },
          [](const GaussianPlain& p) {
            require(p.width > 0.0, "gaussian width must be positive");
          },
          [](const GeometricSeriesPeriodic& p) {
            require(p.length > 0.0 && p.K > 0.0, "length and K must be positive");
            require(std::abs(p.a) < 1.0 && std::abs(p.b) < 1.0,
                    "geometric ratios must satisfy |a|, |b| < 1");
          },
          [](const InfiniteRangeAnalytic& p) {
            require(p.width > 0.0 && p.K > 0.0, "width and K must be positive");
          },
          [](const SampledGrid& p) {
            require(p.dx > 0.0, "grid spacing must be positive");
            require(p.values.size() >= 2, "sampled grid needs at least two values");
          },
      },
      params_);
}

PotentialSpec PotentialSpec::zero() { return barrier(0.0, 1.0); }

PotentialSpec PotentialSpec::delta_pair(cplx z1, cplx z2, double a1, double a2) {
  return PotentialSpec(DeltaPair{z1, z2, a1, a2});
}
PotentialSpec PotentialSpec::barrier(cplx z, double length, double offset) {
  return PotentialSpec(RectangularBarrier{z, length, offset});
}
PotentialSpec PotentialSpec::truncated_exponential(cplx z, double K, double length) {
  return PotentialSpec(TruncatedExponential{z, K, length});
}
PotentialSpec PotentialSpec::locally_periodic(cplx z, double K, double length,
                                              std::vector<FourierTerm> terms) {
  return PotentialSpec(LocallyPeriodicFourier{z, K, length, std::move(terms)});
}
PotentialSpec PotentialSpec::gaussian_plain(cplx z, double width, double center) {
  return PotentialSpec(GaussianPlain{z, width, center});
}
PotentialSpec PotentialSpec::gaussian_derivative(cplx z, double width, double center) {
  return PotentialSpec(GaussianDerivative{z, width, center});
}
PotentialSpec PotentialSpec::geometric_series(cplx z, cplx a, cplx b, double K,
                                              double length) {
  return PotentialSpec(GeometricSeriesPeriodic{z, a, b, K, length});
}
PotentialSpec PotentialSpec::infinite_range(cplx z, double K, double width) {
  return PotentialSpec(InfiniteRangeAnalytic{z, K, width});
}
PotentialSpec PotentialSpec::sampled(double x0, double dx, std::vector<cplx> values) {
  return PotentialSpec(SampledGrid{x0, dx, std::move(values)});
}

Family PotentialSpec::family() const {
  return static_cast<Family>(params_.index());
}

double PotentialSpec::truncation_radius() const {
  if (truncation_radius_ > 0.0) return truncation_radius_;
  return std::visit(
      overloaded{
          [](const GaussianDerivative& p) { return kDefaultTruncationWidths * p.width; },
          [](const GaussianPlain& p) { return kDefaultTruncationWidths * p.width; },
          [](const InfiniteRangeAnalytic& p) { return kDefaultTruncationWidths * p.width; },
          [](const auto&) { return 0.0; },
      },
      params_);
}

PotentialSpec PotentialSpec::with_coupling(Coupling c) const {
  return PotentialSpec(params_, c, truncation_radius_);
}

PotentialSpec PotentialSpec::scaled(double s) const {
  FamilyParams p = params_;
  std::visit(overloaded{
                 [s](DeltaPair& d) { d.z1 *= s; d.z2 *= s; },
                 [s](SampledGrid& g) { for (auto& v : g.values) v *= s; },
                 [s](auto& other) { other.z *= s; },
             },
             p);
  return PotentialSpec(std::move(p), coupling_, truncation_radius_);
}

bool PotentialSpec::has_closed_form_fourier() const {
  return family() != Family::SampledGrid;
}

std::optional<PotentialSpec::ExponentialSum> PotentialSpec::exponential_sum() const {
  return std::visit(
      overloaded{
          [](const RectangularBarrier& p) -> std::optional<ExponentialSum> {
            return ExponentialSum{p.offset, p.length, {{0.0, p.z}}};
          },
          [](const TruncatedExponential& p) -> std::optional<ExponentialSum> {
            return ExponentialSum{0.0, p.length, {{p.K, p.z}}};
          },
          [](const LocallyPeriodicFourier& p) -> std::optional<ExponentialSum> {
            ExponentialSum s{0.0, p.length, {}};
            for (const auto& [j, c] : merged_terms(p.terms))
              if (c != cplx{}) s.terms.emplace_back(j * p.K, p.z * c);
            return s;
          },
          [](const GeometricSeriesPeriodic& p) -> std::optional<ExponentialSum> {
            ExponentialSum s{0.0, p.length, {}};
            cplx ap = 1.0, bp = 1.0;
            for (int j = 1; j <= geometric_terms(p.a); ++j) {
              ap *= p.a;
              s.terms.emplace_back(2.0 * j * p.K, p.z * ap);
            }
            for (int j = 1; j <= geometric_terms(p.b); ++j) {
              bp *= p.b;
              s.terms.emplace_back(-(2.0 * j - 1.0) * p.K, p.z * bp);
            }
            return s;
          },
          [](const auto&) -> std::optional<ExponentialSum> { return std::nullopt; },
      },
      params_);
}

bool PotentialSpec::real_valued() const {
  if (auto sum = exponential_sum()) {
    std::map<double, cplx> by_freq;
    double scale = 0.0;
    for (const auto& [beta, w] : sum->terms) {
      by_freq[beta] += w;
      scale = std::max(scale, std::abs(w));
    }
    for (const auto& [beta, w] : by_freq) {
      const auto it = by_freq.find(-beta);
      const cplx partner = it == by_freq.end() ? cplx{} : it->second;
      if (std::abs(partner - std::conj(w)) > 1e-14 * scale) return false;
    }
    return true;
  }
  return std::visit(
      overloaded{
          [](const DeltaPair& p) { return p.z1.imag() == 0.0 && p.z2.imag() == 0.0; },
          [](const GaussianDerivative& p) { return p.z.imag() == 0.0; },
          [](const GaussianPlain& p) { return p.z.imag() == 0.0; },
          [](const InfiniteRangeAnalytic& p) { return p.z == cplx{}; },
          [](const SampledGrid& p) {
            return std::all_of(p.values.begin(), p.values.end(),
                               [](cplx v) { return v.imag() == 0.0; });
          },
          [](const auto&) { return false; },
      },
      params_);
}

Support PotentialSpec::support() const {
  const double r = truncation_radius();
  return std::visit(
      overloaded{
          [](const DeltaPair& p) {
            return Support{std::min(p.a1, p.a2), std::max(p.a1, p.a2), false};
          },
          [](const RectangularBarrier& p) {
            return Support{p.offset, p.offset + p.length, false};
          },
          [](const TruncatedExponential& p) { return Support{0.0, p.length, false}; },
          [](const LocallyPeriodicFourier& p) { return Support{0.0, p.length, false}; },
          [](const GeometricSeriesPeriodic& p) { return Support{0.0, p.length, false}; },
          [r](const GaussianDerivative& p) {
            return Support{p.center - r, p.center + r, true};
          },
          [r](const GaussianPlain& p) {
            return Support{p.center - r, p.center + r, true};
          },
          [r](const InfiniteRangeAnalytic&) { return Support{-r, r, true}; },
          [](const SampledGrid& p) {
            return Support{p.x0, p.x0 + p.dx * (p.values.size() - 1), false};
          },
      },
      params_);
}

std::vector<double> PotentialSpec::breakpoints() const {
  const Support s = support();
  std::vector<double> pts{s.x_min, s.x_max};
  if (const auto* g = std::get_if<SampledGrid>(&params_)) {
    pts.clear();
    for (std::size_t i = 0; i < g->values.size(); ++i) pts.push_back(g->x0 + g->dx * i);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::vector<double> PotentialSpec::discontinuities() const {
  const Support s = support();
  if (s.infinite) return {};
  if (const auto* g = std::get_if<SampledGrid>(&params_)) {
    std::vector<double> out;
    if (g->values.front() != cplx{}) out.push_back(s.x_min);
    if (g->values.back() != cplx{}) out.push_back(s.x_max);
    return out;
  }
  return {s.x_min, s.x_max};
}

double PotentialSpec::max_frequency() const {
  return std::visit(
      overloaded{
          [](const TruncatedExponential& p) { return std::abs(p.K); },
          [](const LocallyPeriodicFourier& p) {
            double m = 0.0;
            for (const auto& t : p.terms)
              if (t.c != cplx{}) m = std::max(m, std::abs(t.j * p.K));
            return m;
          },
          [](const GeometricSeriesPeriodic& p) {
            // Terms below 1e-12 do not shape the integrand.
            auto eff = [](cplx r) {
              const double m = std::abs(r);
              return m == 0.0 ? 0.0 : std::ceil(std::log(1e-12) / std::log(m));
            };
            return p.K * std::max(2.0 * eff(p.a), 2.0 * eff(p.b) - 1.0);
          },
          [](const InfiniteRangeAnalytic& p) { return 2.0 * p.K; },
          [](const SampledGrid& p) { return kPi / p.dx; },
          [](const auto&) { return 0.0; },
      },
      params_);
}

double PotentialSpec::feature_length() const {
  return std::visit(
      overloaded{
          [](const DeltaPair& p) {
            const double d = std::abs(p.a2 - p.a1);
            return d > 0.0 ? d : 1.0;
          },
          [](const RectangularBarrier& p) { return p.length; },
          [](const TruncatedExponential& p) { return p.length; },
          [](const LocallyPeriodicFourier& p) { return p.length; },
          [](const GeometricSeriesPeriodic& p) {
            // Poles at distance ~ -log|r| / K from the real axis.
            const double r = std::max({std::abs(p.a), std::abs(p.b), 1e-3});
            return std::min(p.length, -std::log(r) / p.K);
          },
          [](const GaussianDerivative& p) { return p.width; },
          [](const GaussianPlain& p) { return p.width; },
          [](const InfiniteRangeAnalytic& p) { return p.width; },
          [](const SampledGrid& p) { return p.dx; },
      },
      params_);
}

std::vector<std::pair<double, cplx>> PotentialSpec::impulses(double k) const {
  const auto* d = std::get_if<DeltaPair>(&params_);
  if (!d) return {};
  const double f = coupling_.factor(k);
  std::vector<std::pair<double, cplx>> out{{d->a1, f * d->z1}, {d->a2, f * d->z2}};
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

cplx evaluate_shape(const PotentialSpec& spec, double x) {
  return std::visit(
      overloaded{
          [](const DeltaPair&) -> cplx {
            throw Error(ErrorCode::DistributionalPotential,
                        "delta_pair is distributional and cannot be evaluated pointwise");
          },
          [x](const RectangularBarrier& p) -> cplx {
            return (x > p.offset && x < p.offset + p.length) ? p.z : cplx{};
          },
          [x](const TruncatedExponential& p) -> cplx {
            return (x >= 0.0 && x <= p.length) ? p.z * std::polar(1.0, p.K * x) : cplx{};
          },
          [x](const LocallyPeriodicFourier& p) -> cplx {
            if (x < 0.0 || x > p.length) return {};
            cplx f{};
            for (const auto& t : p.terms) f += t.c * std::polar(1.0, t.j * p.K * x);
            return p.z * f;
          },
          [x](const GeometricSeriesPeriodic& p) -> cplx {
            if (x < 0.0 || x > p.length) return {};
            const cplx ea = p.a * std::polar(1.0, 2.0 * p.K * x);
            const cplx eb = std::polar(1.0, -p.K * x);
            const cplx f = ea / (1.0 - ea) +
                           p.b * eb / (1.0 - p.b * std::polar(1.0, -2.0 * p.K * x));
            return p.z * f;
          },
          [x](const GaussianDerivative& p) -> cplx {
            const double u = (x - p.center) / p.width;
            return p.z * u * std::exp(-u * u);
          },
          [x](const GaussianPlain& p) -> cplx {
            const double u = (x - p.center) / p.width;
            return p.z * std::exp(-u * u);
          },
          [x](const InfiniteRangeAnalytic& p) -> cplx {
            const double w = p.width, K = p.K;
            const cplx poly = 2.0 * x * x * x - 3.0 * w * w * x +
                              kI * K * w * w * (2.0 * x * x - w * w);
            return p.z / (std::sqrt(kPi) * K * K * std::pow(w, 7)) *
                   std::polar(std::exp(-x * x / (w * w)), -2.0 * K * x) * poly;
          },
          [x](const SampledGrid& p) -> cplx {
            const double s = (x - p.x0) / p.dx;
            const auto n = static_cast<double>(p.values.size() - 1);
            if (s < 0.0 || s > n) return {};
            const auto i = std::min(static_cast<std::size_t>(s), p.values.size() - 2);
            const double t = s - static_cast<double>(i);
            return (1.0 - t) * p.values[i] + t * p.values[i + 1];
          },
      },
      spec.params());
}

cplx evaluate(const PotentialSpec& spec, double x, double k) {
  require_k(k);
  return spec.coupling().factor(k) * evaluate_shape(spec, x);
}

cplx refractive_index(const PotentialSpec& spec, double x, double k) {
  return principal_sqrt(1.0 - evaluate(spec, x, k) / (k * k));
}

cplx fourier1(const PotentialSpec& spec, double q, double k) {
  const double f = spec.coupling().factor(k);
  if (auto sum = spec.exponential_sum()) {
    cplx acc{};
    for (const auto& [beta, w] : sum->terms) {
      const double p = q - beta;
      acc += w * std::polar(1.0, -p * sum->x0) * box_transform(p, sum->length);
    }
    return f * acc;
  }
  if (spec.family() == Family::SampledGrid) return fourier1_quadrature(spec, q, k);
  const cplx shape = std::visit(
      overloaded{
          [q](const DeltaPair& p) {
            return p.z1 * std::polar(1.0, -q * p.a1) + p.z2 * std::polar(1.0, -q * p.a2);
          },
          [q](const GaussianPlain& p) {
            const double w = p.width;
            return p.z * std::sqrt(kPi) * w *
                   std::polar(std::exp(-0.25 * q * q * w * w), -q * p.center);
          },
          [q](const GaussianDerivative& p) {
            const double w = p.width;
            return p.z * w * (-0.5 * kI * q * w) * std::sqrt(kPi) *
                   std::polar(std::exp(-0.25 * q * q * w * w), -q * p.center);
          },
          [q](const InfiniteRangeAnalytic& p) {
            const double s = q / (2.0 * p.K) + 1.0;
            const double e = 0.5 * q + p.K;
            return kI * q * p.z * s * s * std::exp(-p.width * p.width * e * e);
          },
          [](const auto&) -> cplx {
            throw Error(ErrorCode::UnsupportedFamily, "no closed-form transform");
          },
      },
      spec.params());
  return f * shape;
}

cplx fourier1_quadrature(const PotentialSpec& spec, double q, double k,
                         double abs_tol) {
  if (spec.distributional()) {
    cplx acc{};
    for (const auto& [a, z] : spec.impulses(k)) acc += z * std::polar(1.0, -q * a);
    return acc;
  }
  const double f = spec.coupling().factor(k);
  const auto pts = spec.breakpoints();
  quad::Options opt;
  opt.abs_tol = abs_tol;
  opt.frequency = std::abs(q) + spec.max_frequency();
  opt.max_panel = spec.feature_length() / 2.0;
  const auto r = quad::integrate_pieces(
      [&](double x) { return std::polar(1.0, -q * x) * evaluate_shape(spec, x); },
      pts, opt);
  return f * r.value;
}

cplx fourier2(const PotentialSpec& spec, double q1, double q2, double k) {
  const double f = spec.coupling().factor(k);
  if (const auto* d = std::get_if<DeltaPair>(&spec.params())) {
    // theta(0) = 0: coincident deltas contribute nothing.
    cplx acc{};
    if (d->a1 > d->a2) acc += std::polar(1.0, -(q1 * d->a2 + q2 * d->a1));
    if (d->a2 > d->a1) acc += std::polar(1.0, -(q1 * d->a1 + q2 * d->a2));
    return f * f * d->z1 * d->z2 * acc;
  }
  if (auto sum = spec.exponential_sum()) {
    cplx acc{};
    for (const auto& [b1, w1] : sum->terms) {
      const double p1 = q1 - b1;
      for (const auto& [b2, w2] : sum->terms) {
        const double p2 = q2 - b2;
        acc += w1 * w2 * std::polar(1.0, -(p1 + p2) * sum->x0) *
               ordered_box(p1, p2, sum->length);
      }
    }
    return f * f * acc;
  }
  return fourier2_quadrature(spec, q1, q2, k);
}

cplx fourier2_quadrature(const PotentialSpec& spec, double q1, double q2,
                         double k, double abs_tol) {
  if (spec.distributional()) return fourier2(spec, q1, q2, k);
  const double f = spec.coupling().factor(k);
  const auto pts = spec.breakpoints();
  const auto& rule = quad::gauss_legendre(20);
  const double freq = std::max(std::abs(q1), std::abs(q2)) + spec.max_frequency();
  const double feature = spec.feature_length();

  auto g1 = [&](double x) { return std::polar(1.0, -q1 * x) * evaluate_shape(spec, x); };
  auto g2 = [&](double x) { return std::polar(1.0, -q2 * x) * evaluate_shape(spec, x); };

  // Outer Gauss nodes in x2; the cumulative inner integral in x1 is carried
  // across panels and completed from the panel start to each node.
  auto iterate = [&](int refine) {
    cplx total{}, cumulative{};
    for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
      const double a = pts[s], b = pts[s + 1];
      const double width = b - a;
      double h = std::min(width, feature / 2.0);
      if (freq > 0.0) h = std::min(h, kPi / freq);
      const int n = refine * std::max(1, static_cast<int>(std::ceil(width / h)));
      for (int i = 0; i < n; ++i) {
        const double lo = a + width * i / n;
        const double hi = (i == n - 1) ? b : a + width * (i + 1) / n;
        const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
        cplx panel{};
        for (std::size_t m = 0; m < rule.nodes.size(); ++m) {
          const double x2 = mid + half * rule.nodes[m];
          const cplx inner = cumulative + quad::fixed(g1, lo, x2, rule);
          panel += rule.weights[m] * g2(x2) * inner;
        }
        total += half * panel;
        cumulative += quad::fixed(g1, lo, hi, rule);
      }
    }
    return total;
  };

  cplx coarse = iterate(1);
  for (int refine = 2; refine <= 1 << 12; refine *= 2) {
    const cplx fine = iterate(refine);
    if (std::abs(fine - coarse) <= abs_tol) return f * f * fine;
    coarse = fine;
  }
  throw Error(ErrorCode::QuadratureFailure,
              "iterated double transform did not converge; residual estimate " +
                  std::to_string(std::abs(coarse)));
}

PeriodicStructure periodic_structure(const PotentialSpec& spec) {
  return std::visit(
      overloaded{
          [](const TruncatedExponential& p) {
            if (!(p.K > 0.0))
              throw Error(ErrorCode::NotPeriodic, "exponential needs K > 0");
            const double period = 2.0 * kPi / p.K;
            return PeriodicStructure{p.K, 1, period, p.length, p.length / period, p.z};
          },
          [](const LocallyPeriodicFourier& p) {
            int g = 0;
            for (const auto& [j, c] : merged_terms(p.terms))
              if (c != cplx{}) g = std::gcd(g, std::abs(j));
            if (g == 0) g = 1;
            const double period = 2.0 * kPi / (g * p.K);
            return PeriodicStructure{p.K, g, period, p.length, p.length / period, p.z};
          },
          [](const GeometricSeriesPeriodic& p) {
            const double period = 2.0 * kPi / p.K;
            return PeriodicStructure{p.K, 1, period, p.length, p.length / period, p.z};
          },
          [](const auto&) -> PeriodicStructure {
            throw Error(ErrorCode::NotPeriodic,
                        "family is not locally periodic");
          },
      },
      spec.params());
}

namespace {

cplx base_coefficient(const PotentialSpec& spec, int n) {
  return std::visit(
      overloaded{
          [n](const TruncatedExponential&) { return n == 1 ? cplx{1.0} : cplx{}; },
          [n](const LocallyPeriodicFourier& p) {
            cplx c{};
            for (const auto& t : p.terms)
              if (t.j == n) c += t.c;
            return c;
          },
          [n](const GeometricSeriesPeriodic& p) {
            if (n > 0 && n % 2 == 0) return std::pow(p.a, n / 2);
            if (n < 0 && (-n) % 2 == 1) return std::pow(p.b, (1 - n) / 2);
            return cplx{};
          },
          [](const auto&) -> cplx {
            throw Error(ErrorCode::NotPeriodic, "family is not locally periodic");
          },
      },
      spec.params());
}

}  // namespace

FourierCoefficient fourier_coefficients(const PotentialSpec& spec, int n) {
  const PeriodicStructure ps = periodic_structure(spec);
  FourierCoefficient out;
  out.n = n;
  out.c = base_coefficient(spec, n);
  out.a = ps.z * ps.period * base_coefficient(spec, n * ps.gcd);
  return out;
}

PotentialSpec mirror_locally_periodic(const PotentialSpec& spec) {
  if (const auto* e = std::get_if<TruncatedExponential>(&spec.params())) {
    return PotentialSpec(
        LocallyPeriodicFourier{e->z, e->K, e->length,
                               {{-1, std::polar(1.0, e->K * e->length)}}},
        spec.coupling());
  }
  if (const auto* p = std::get_if<LocallyPeriodicFourier>(&spec.params())) {
    LocallyPeriodicFourier m = *p;
    for (auto& t : m.terms) {
      t.c *= std::polar(1.0, t.j * p->K * p->length);
      t.j = -t.j;
    }
    return PotentialSpec(std::move(m), spec.coupling());
  }
  throw Error(ErrorCode::UnsupportedFamily,
              std::string("mirror not available for ") + to_string(spec.family()));
}

}  // namespace wavetm
