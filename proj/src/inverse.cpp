#include "wavetm/inverse.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "wavetm/quadrature.hpp"

namespace wavetm {

namespace {

constexpr int kNodes = 20;
constexpr int kDecaySamples = 1 << 15;
constexpr int kResync = 256;

double get(const std::map<std::string, double>& p, const std::string& name,
           const std::string& key) {
  const auto it = p.find(key);
  if (it == p.end())
    throw Error(ErrorCode::InvalidInput,
                "missing parameter '" + key + "' for " + name);
  return it->second;
}

cplx get_z(const std::map<std::string, double>& p) {
  const auto re = p.find("z_re"), im = p.find("z_im");
  const auto z = p.find("z");
  double r = re != p.end() ? re->second : (z != p.end() ? z->second : 1.0);
  double i = im != p.end() ? im->second : 0.0;
  return {r, i};
}

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

double taper_weight(double k, double k_max, double fraction) {
  const double start = (1.0 - fraction) * k_max;
  const double a = std::abs(k);
  if (a <= start) return 1.0;
  if (a >= k_max) return 0.0;
  return 0.5 * (1.0 + std::cos(kPi * (a - start) / (fraction * k_max)));
}

struct Window {
  double k_max = 0.0;
  double peak = 0.0;
  double edge = 0.0;  // max |D(+-k_max)|
};

Window choose_window(const FirstBornData& d, const InverseOptions& opt) {
  Window w;
  const double span = opt.k_max > 0.0 ? opt.k_max : opt.k_cap;
  std::vector<double> mag(kDecaySamples);
  for (int j = 1; j <= kDecaySamples; ++j) {
    const double k = span * j / kDecaySamples;
    mag[j - 1] = std::max(std::abs(d(k)), std::abs(d(-k)));
    w.peak = std::max(w.peak, mag[j - 1]);
  }
  if (opt.k_max > 0.0) {
    w.k_max = opt.k_max;
  } else if (w.peak == 0.0) {
    w.k_max = span / kDecaySamples;
  } else {
    // Smallest sample beyond which the data never exceed the decay threshold.
    int last_above = -1;
    for (int j = kDecaySamples - 1; j >= 0; --j)
      if (mag[j] > opt.decay_threshold * w.peak) {
        last_above = j;
        break;
      }
    const double start = span * (last_above + 2) / kDecaySamples;
    const double f = opt.taper ? opt.taper_fraction : 0.0;
    w.k_max = std::min(span, start / (1.0 - f));
  }
  w.edge = std::max(std::abs(d(w.k_max)), std::abs(d(-w.k_max)));
  return w;
}

// (1/2pi) int_0^kmax [e^{ikx} D(k) + e^{-ikx} D(-k)] w(k) dk on equal panels.
class FoldedTransform {
 public:
  FoldedTransform(const FirstBornData& d, double k_max, int panels, bool taper,
                  double fraction)
      : panels_(panels), width_(k_max / panels) {
    const auto& rule = quad::gauss_legendre(kNodes);
    offsets_.resize(kNodes);
    for (int j = 0; j < kNodes; ++j) offsets_[j] = 0.5 * width_ * (1.0 + rule.nodes[j]);
    plus_.resize(static_cast<std::size_t>(panels) * kNodes);
    minus_.resize(plus_.size());
    for (int p = 0; p < panels; ++p) {
      for (int j = 0; j < kNodes; ++j) {
        const double k = p * width_ + offsets_[j];
        const double w = 0.5 * width_ * rule.weights[j] / (2.0 * kPi) *
                         (taper ? taper_weight(k, k_max, fraction) : 1.0);
        plus_[p * kNodes + j] = w * d(k);
        minus_[p * kNodes + j] = w * d(-k);
      }
    }
  }

  cplx operator()(double x) const {
    std::array<cplx, kNodes> local;
    for (int j = 0; j < kNodes; ++j) local[j] = std::polar(1.0, offsets_[j] * x);
    const cplx step = std::polar(1.0, width_ * x);
    cplx base = 1.0, total{};
    for (int p = 0; p < panels_; ++p) {
      if (p % kResync == 0) base = std::polar(1.0, p * width_ * x);
      cplx ap{}, am{};
      const cplx* pp = &plus_[static_cast<std::size_t>(p) * kNodes];
      const cplx* pm = &minus_[static_cast<std::size_t>(p) * kNodes];
      for (int j = 0; j < kNodes; ++j) {
        ap += pp[j] * local[j];
        am += pm[j] * std::conj(local[j]);
      }
      total += base * ap + std::conj(base) * am;
      base *= step;
    }
    return total;
  }

  int panels() const { return panels_; }

 private:
  int panels_;
  double width_;
  std::vector<double> offsets_;
  std::vector<cplx> plus_, minus_;
};

// Exact integral of piecewise-linear data times e^{ikx} over the table.
cplx filon(const FirstBornData& d, const std::vector<cplx>& vals, double x) {
  cplx total{};
  for (std::size_t i = 0; i + 1 < d.k.size(); ++i) {
    const double h = d.k[i + 1] - d.k[i];
    const double th = x * h;
    cplx e0, e1;
    if (std::abs(th) < 0.5) {
      // Series in i theta: E0 = h sum (i th)^n/(n+1)!, E1 = h^2 sum (i th)^n/((n+2) n!).
      cplx term = 1.0;
      double fact = 1.0;
      for (int n = 0; n < 14; ++n) {
        if (n > 0) {
          term *= kI * th;
          fact *= n;
        }
        e0 += term / (fact * (n + 1));
        e1 += term / (fact * (n + 2));
      }
      e0 *= h;
      e1 *= h * h;
    } else {
      const cplx eh = std::polar(1.0, th);
      e0 = (eh - 1.0) / (kI * x);
      e1 = h * eh / (kI * x) - (eh - 1.0) / (kI * x * kI * x);
    }
    const cplx slope = (vals[i + 1] - vals[i]) / h;
    total += std::polar(1.0, x * d.k[i]) * (vals[i] * e0 + slope * e1);
  }
  return total / (2.0 * kPi);
}

std::string warning_tail(double edge, double peak) {
  std::ostringstream s;
  s << "TruncationWarning: |D(k_max)| = " << edge << " exceeds 1e-6 of the peak " << peak;
  return s.str();
}

// F(x) = D^(s x) and F'(x) on the output grid.
struct Composite {
  std::vector<cplx> f, df;
  double smoothness = 0.0;
  InverseTransform meta;
};

Composite composite(const FirstBornData& d, double s, std::span<const double> x,
                    const InverseOptions& opt) {
  Composite out;
  const std::size_t n = x.size();
  out.f.resize(n);
  out.df.resize(n);
  if (n == 0) return out;

  if (opt.use_closed_form && d.closed_inverse && d.closed_inverse_derivative) {
    for (std::size_t i = 0; i < n; ++i) {
      out.f[i] = d.closed_inverse(s * x[i]);
      out.df[i] = s * d.closed_inverse_derivative(s * x[i]);
    }
    out.meta.closed_form = true;
    return out;
  }

  double dx = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double g = std::abs(x[i + 1] - x[i]);
    if (g > 0.0 && (dx == 0.0 || g < dx)) dx = g;
  }
  // Step resolves both the output grid and the highest frequency in F.
  const double k_scale = d.is_tabulated()
                             ? std::max(std::abs(d.k.front()), std::abs(d.k.back()))
                             : choose_window(d, opt).k_max;
  double h = 0.05 / (std::abs(s) * k_scale);
  if (dx > 0.0) h = std::min(h, dx / 4.0);
  static constexpr std::array<int, 7> offs{-4, -2, -1, 0, 1, 2, 4};
  std::vector<double> y;
  y.reserve(n * offs.size());
  for (double xi : x)
    for (int m : offs) y.push_back(s * (xi + m * h));
  InverseOptions o = opt;
  o.use_closed_form = false;
  InverseTransform t = inverse_fourier(d, y, o);
  const std::vector<cplx> vals = std::move(t.values);
  out.meta = std::move(t);
  out.meta.x.assign(x.begin(), x.end());

  std::vector<double> err(n);
  double peak = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx* v = &vals[i * offs.size()];
    // v: F(x-4h), F(x-2h), F(x-h), F(x), F(x+h), F(x+2h), F(x+4h)
    const cplx d1 = (v[1] - 8.0 * v[2] + 8.0 * v[4] - v[5]) / (12.0 * h);
    const cplx d2 = (v[0] - 8.0 * v[1] + 8.0 * v[5] - v[6]) / (24.0 * h);
    out.f[i] = v[3];
    out.df[i] = d1;
    err[i] = std::abs(d1 - d2) / 15.0;
    peak = std::max(peak, std::abs(d1));
  }
  if (peak > 0.0) {
    std::nth_element(err.begin(), err.begin() + n / 2, err.end());
    out.smoothness = err[n / 2] / peak;
    if (out.smoothness > opt.smoothness_bound) {
      std::ostringstream msg;
      msg << "derivative noise " << out.smoothness << " of its peak exceeds "
          << opt.smoothness_bound
          << "; smooth or taper the data";
      throw Error(ErrorCode::NonSmoothData, msg.str());
    }
  }
  return out;
}

ReconstructedPotential base_result(const Composite& c, Route route,
                                   std::span<const double> x) {
  ReconstructedPotential r;
  r.x.assign(x.begin(), x.end());
  r.v.resize(x.size());
  r.route = route;
  r.k_max = c.meta.k_max;
  r.tapered = c.meta.tapered;
  r.closed_form = c.meta.closed_form;
  r.smoothness = c.smoothness;
  r.warnings = c.meta.warnings;
  return r;
}

// R(0) from the data, which is smooth at the origin for consistent data.
cplx value_at_zero(const FirstBornData& d) {
  if (d.is_tabulated()) return d(0.0);
  const double eps = 1e-7;
  return 0.5 * (d(eps) + d(-eps));
}

// 2 [D^(inf) - D^(-inf)] from means over the outer tenth of [-X, X], with X
// doubled until two successive windows agree.
std::pair<cplx, double> tail_jump(const FirstBornData& d, double x0,
                                  const InverseOptions& opt) {
  constexpr int kTailPoints = 16;
  auto jump = [&](double X) {
    std::vector<double> y;
    for (int i = 0; i < kTailPoints; ++i) {
      const double u = X * (0.9 + 0.1 * (i + 0.5) / kTailPoints);
      y.push_back(u);
      y.push_back(-u);
    }
    InverseOptions o = opt;
    o.use_closed_form = false;
    const auto t = inverse_fourier(d, y, o);
    cplx plus{}, minus{};
    for (int i = 0; i < kTailPoints; ++i) {
      plus += t.values[2 * i];
      minus += t.values[2 * i + 1];
    }
    return 2.0 * (plus - minus) / static_cast<double>(kTailPoints);
  };
  double X = x0;
  cplx prev = jump(X);
  for (int i = 0; i < opt.max_window_doublings; ++i) {
    const cplx next = jump(2.0 * X);
    X *= 2.0;
    if (std::abs(next - prev) <= opt.tail_tolerance * std::max(1.0, std::abs(next)))
      return {next, X};
    prev = next;
  }
  throw Error(ErrorCode::TailNonconvergence,
              "tail limits did not settle up to |x| = " + std::to_string(X));
}

ReconstructedPotential reflection_route(const FirstBornData& d, Route route,
                                        std::span<const double> x,
                                        const InverseOptions& opt) {
  const bool right = route == Route::RightReflection;
  const Composite c = composite(d, right ? 2.0 : -2.0, x, opt);
  ReconstructedPotential r = base_result(c, route, x);

  // alpha (1 + int D^) = 2 [D^(inf) - D^(-inf)], with int D^ = D(0).
  const cplx denominator = 1.0 + value_at_zero(d);
  if (std::abs(denominator) >= opt.alpha_degeneracy) {
    double xmax = 1.0;
    for (double xi : x) xmax = std::max(xmax, std::abs(xi));
    const auto [jump, window] = tail_jump(d, 4.0 * xmax, opt);
    r.alpha = jump / denominator;
    r.alpha_source = "tails";
    r.tail_window = window;
  } else if (d.alpha) {
    r.alpha = *d.alpha;
    r.alpha_source = "supplied";
  } else if (d.transmission) {
    // T1 = 2ik / (2ik - alpha) at any k.
    cplx sum{};
    const std::array<double, 2> ks{1.0, 2.0};
    std::array<cplx, 2> est;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const cplx t = d.transmission(ks[i]);
      est[i] = 2.0 * kI * ks[i] * (t - 1.0) / t;
      sum += est[i];
    }
    r.alpha = sum / 2.0;
    r.alpha_source = "transmission";
    if (std::abs(est[0] - est[1]) > 1e-8 * std::max(1.0, std::abs(r.alpha)))
      r.warnings.push_back("alpha estimates from T1 disagree across k");
  } else {
    std::ostringstream msg;
    msg << "1 + int D^ = " << denominator.real() << (denominator.imag() < 0 ? "" : "+")
        << denominator.imag()
        << "i vanishes; alpha needs T1 data or an explicit value";
    throw Error(ErrorCode::DegenerateAlphaDenominator, msg.str());
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    r.v[i] = right ? 2.0 * (c.df[i] - r.alpha * c.f[i])
                   : -2.0 * (c.df[i] + r.alpha * c.f[i]);
  }
  return r;
}

std::pair<double, double> support_window(const PotentialSpec& spec, double margin) {
  const Support s = spec.support();
  const double w = s.x_max - s.x_min;
  const double pad = margin * (w > 0.0 ? w : 1.0);
  return {s.x_min - pad, s.x_max + pad};
}

}  // namespace

const char* to_string(DataKind k) noexcept {
  switch (k) {
    case DataKind::M12: return "M12";
    case DataKind::M21: return "M21";
    case DataKind::RRight: return "R_right";
    case DataKind::RLeft: return "R_left";
  }
  return "unknown";
}

std::optional<DataKind> data_kind_from_string(const std::string& name) {
  if (name == "M12" || name == "m12") return DataKind::M12;
  if (name == "M21" || name == "m21") return DataKind::M21;
  if (name == "R_right" || name == "rr") return DataKind::RRight;
  if (name == "R_left" || name == "rl") return DataKind::RLeft;
  return std::nullopt;
}

const char* to_string(Route r) noexcept {
  switch (r) {
    case Route::M12: return "m12";
    case Route::M21: return "m21";
    case Route::RightReflection: return "rr";
    case Route::LeftReflection: return "rl";
  }
  return "unknown";
}

std::optional<Route> route_from_string(const std::string& name) {
  if (name == "m12") return Route::M12;
  if (name == "m21") return Route::M21;
  if (name == "rr") return Route::RightReflection;
  if (name == "rl") return Route::LeftReflection;
  return std::nullopt;
}

DataKind route_data_kind(Route r) {
  switch (r) {
    case Route::M12: return DataKind::M12;
    case Route::M21: return DataKind::M21;
    case Route::RightReflection: return DataKind::RRight;
    case Route::LeftReflection: return DataKind::RLeft;
  }
  return DataKind::M12;
}

FirstBornData FirstBornData::analytic(DataKind kind, SpectralFunction f, std::string name) {
  if (!f) throw Error(ErrorCode::InvalidInput, "analytic data needs a function");
  FirstBornData d;
  d.kind = kind;
  d.handle = std::move(f);
  d.name = std::move(name);
  return d;
}

FirstBornData FirstBornData::tabulated(DataKind kind, std::vector<double> k,
                                       std::vector<cplx> values) {
  if (k.size() != values.size() || k.size() < 3)
    throw Error(ErrorCode::InvalidInput, "tabulated data needs matching k and value columns");
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (!std::isfinite(k[i]) || !std::isfinite(values[i].real()) ||
        !std::isfinite(values[i].imag()))
      throw Error(ErrorCode::InvalidInput, "tabulated data must be finite (row " +
                                               std::to_string(i + 1) + ")");
    if (i > 0 && !(k[i] > k[i - 1]))
      throw Error(ErrorCode::InvalidInput, "tabulated k must be strictly increasing");
  }
  const double scale = std::max(std::abs(k.front()), std::abs(k.back()));
  for (std::size_t i = 0; i < k.size(); ++i)
    if (std::abs(k[i] + k[k.size() - 1 - i]) > 1e-9 * scale)
      throw Error(ErrorCode::InvalidInput, "tabulated k grid must be symmetric about 0");
  FirstBornData d;
  d.kind = kind;
  d.k = std::move(k);
  d.values = std::move(values);
  return d;
}

cplx FirstBornData::operator()(double kk) const {
  if (handle) return handle(kk);
  if (k.empty() || kk < k.front() || kk > k.back()) return {};
  const auto it = std::upper_bound(k.begin(), k.end(), kk);
  const std::size_t i =
      std::min<std::size_t>(std::max<std::ptrdiff_t>(it - k.begin() - 1, 0), k.size() - 2);
  const double t = (kk - k[i]) / (k[i + 1] - k[i]);
  return (1.0 - t) * values[i] + t * values[i + 1];
}

std::vector<std::string> registered_names() {
  return {"barrier_m12",  "two_block_m12",       "two_block_m12_literal",
          "gaussian_m12", "gaussian_over_k_m12", "eg01_rl"};
}

FirstBornData registered_data(const std::string& name,
                              const std::map<std::string, double>& p) {
  const cplx z = get_z(p);
  if (name == "barrier_m12") {
    const double L = get(p, name, "L");
    auto d = FirstBornData::analytic(
        DataKind::M12,
        [z, L](double k) { return z * (std::polar(1.0, -2.0 * k * L) - 1.0) / (4.0 * k * k); },
        name);
    d.closed_inverse = [z, L](double x) { return z * (std::abs(x) - std::abs(2.0 * L - x)) / 8.0; };
    d.closed_inverse_derivative = [z, L](double x) {
      return z * (sgn(x) + sgn(2.0 * L - x)) / 8.0;
    };
    return d;
  }
  if (name == "two_block_m12" || name == "two_block_m12_literal") {
    const double L = get(p, name, "L"), J = get(p, name, "J");
    const double c = name == "two_block_m12" ? 2.0 : 1.0;
    return FirstBornData::analytic(
        DataKind::M12,
        [z, L, J, c](double k) {
          return z * (std::polar(1.0, -2.0 * L * k) - 1.0) *
                 (std::polar(1.0, -c * (L + J) * k) - 1.0) / (4.0 * k * k);
        },
        name);
  }
  if (name == "gaussian_m12") {
    const double L = get(p, name, "L");
    auto d = FirstBornData::analytic(
        DataKind::M12, [z, L](double k) { return z * std::exp(-L * L * k * k); }, name);
    d.closed_inverse = [z, L](double x) {
      return z * std::exp(-x * x / (4.0 * L * L)) / (2.0 * std::sqrt(kPi) * L);
    };
    d.closed_inverse_derivative = [z, L](double x) {
      return -z * x * std::exp(-x * x / (4.0 * L * L)) / (4.0 * std::sqrt(kPi) * L * L * L);
    };
    return d;
  }
  if (name == "gaussian_over_k_m12") {
    const double L = get(p, name, "L");
    auto d = FirstBornData::analytic(
        DataKind::M12, [z, L](double k) { return z * std::exp(-L * L * k * k) / (L * k); },
        name);
    // Principal value at k = 0: (i z / 2L) erf(x / 2L).
    d.closed_inverse = [z, L](double x) { return kI * z * std::erf(x / (2.0 * L)) / (2.0 * L); };
    d.closed_inverse_derivative = [z, L](double x) {
      return kI * z * std::exp(-x * x / (4.0 * L * L)) / (2.0 * std::sqrt(kPi) * L * L);
    };
    return d;
  }
  if (name == "eg01_rl") {
    const double K = get(p, name, "K"), L = get(p, name, "L");
    return FirstBornData::analytic(
        DataKind::RLeft,
        [z, K, L](double k) {
          const double s = k / K - 1.0;
          return z * s * s * std::exp(-L * L * (k - K) * (k - K));
        },
        name);
  }
  throw Error(ErrorCode::InvalidInput, "unknown analytic data set '" + name + "'");
}

FirstBornData first_born_data(const PotentialSpec& spec, DataKind kind) {
  PotentialSpec base = spec;
  if (spec.coupling().kind == Coupling::Kind::KSquared)
    base = spec.with_coupling(Coupling::constant()).scaled(spec.coupling().c);
  const cplx alpha = fourier1(base, 0.0, 1.0);
  SpectralFunction f;
  switch (kind) {
    case DataKind::M12:
      f = [base](double k) { return -kI * fourier1(base, 2.0 * k, 1.0) / (2.0 * k); };
      break;
    case DataKind::M21:
      f = [base](double k) { return kI * fourier1(base, -2.0 * k, 1.0) / (2.0 * k); };
      break;
    case DataKind::RRight:
      f = [base, alpha](double k) {
        return fourier1(base, 2.0 * k, 1.0) / (2.0 * kI * k - alpha);
      };
      break;
    case DataKind::RLeft:
      f = [base, alpha](double k) {
        return fourier1(base, -2.0 * k, 1.0) / (2.0 * kI * k - alpha);
      };
      break;
  }
  auto d = FirstBornData::analytic(kind, std::move(f),
                                   std::string("forward:") + to_string(spec.family()));
  d.transmission = [alpha](double k) { return 2.0 * kI * k / (2.0 * kI * k - alpha); };
  return d;
}

InverseTransform inverse_fourier(const FirstBornData& data, std::span<const double> x,
                                 const InverseOptions& opt) {
  InverseTransform out;
  out.x.assign(x.begin(), x.end());
  out.values.resize(x.size());
  if (opt.use_closed_form && data.closed_inverse) {
    for (std::size_t i = 0; i < x.size(); ++i) out.values[i] = data.closed_inverse(x[i]);
    out.closed_form = true;
    return out;
  }

  if (data.is_tabulated()) {
    out.k_max = std::max(std::abs(data.k.front()), std::abs(data.k.back()));
    out.tapered = opt.taper;
    std::vector<cplx> vals = data.values;
    double peak = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      peak = std::max(peak, std::abs(vals[i]));
      if (opt.taper) vals[i] *= taper_weight(data.k[i], out.k_max, opt.taper_fraction);
    }
    const double edge = std::max(std::abs(data.values.front()), std::abs(data.values.back()));
    if (edge > opt.warn_threshold * peak) out.warnings.push_back(warning_tail(edge, peak));
    for (std::size_t i = 0; i < x.size(); ++i) out.values[i] = filon(data, vals, x[i]);
    return out;
  }

  const Window w = choose_window(data, opt);
  out.k_max = w.k_max;
  out.tapered = opt.taper;
  if (w.edge > opt.warn_threshold * w.peak) out.warnings.push_back(warning_tail(w.edge, w.peak));
  if (w.peak == 0.0 || x.empty()) return out;

  double xmax = 0.0;
  for (double xi : x) xmax = std::max(xmax, std::abs(xi));
  int panels = std::max(64, static_cast<int>(std::ceil(w.k_max * (xmax + 1.0) / kPi)));

  // Probe the extremes and the middle of the requested points.
  std::vector<double> probes;
  {
    auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    probes = {*lo, *hi, x[x.size() / 2]};
  }
  FoldedTransform coarse(data, w.k_max, panels, opt.taper, opt.taper_fraction);
  for (int it = 0;; ++it) {
    FoldedTransform fine(data, w.k_max, 2 * panels, opt.taper, opt.taper_fraction);
    double diff = 0.0, scale = 0.0;
    for (double p : probes) {
      const cplx a = coarse(p), b = fine(p);
      diff = std::max(diff, std::abs(a - b));
      scale = std::max(scale, std::abs(b));
    }
    panels *= 2;
    if (diff <= opt.abs_tol + opt.rel_tol * scale) {
      for (std::size_t i = 0; i < x.size(); ++i) out.values[i] = fine(x[i]);
      return out;
    }
    if (it + 1 >= opt.max_doublings)
      throw Error(ErrorCode::QuadratureFailure,
                  "inverse transform did not converge; residual estimate " +
                      std::to_string(diff));
    coarse = std::move(fine);
  }
}

ReconstructedPotential potential_from_offdiagonal(const FirstBornData& data,
                                                  std::span<const double> x,
                                                  const InverseOptions& opt) {
  if (data.kind != DataKind::M12 && data.kind != DataKind::M21)
    throw Error(ErrorCode::InvalidInput, "off-diagonal route needs M12 or M21 data");
  const bool m12 = data.kind == DataKind::M12;
  const Composite c = composite(data, m12 ? 2.0 : -2.0, x, opt);
  ReconstructedPotential r = base_result(c, m12 ? Route::M12 : Route::M21, x);
  for (std::size_t i = 0; i < x.size(); ++i) r.v[i] = 2.0 * c.df[i];
  // v~(0) = lim 2ik M12(k) = lim -2ik M21(k).
  const double eps = 1e-7;
  const double sign = m12 ? 1.0 : -1.0;
  r.alpha = sign * kI * eps * (data(eps) - data(-eps));
  r.alpha_source = "data";
  return r;
}

ReconstructedPotential potential_from_right_reflection(const FirstBornData& data,
                                                       std::span<const double> x,
                                                       const InverseOptions& opt) {
  if (data.kind != DataKind::RRight)
    throw Error(ErrorCode::InvalidInput, "right-reflection route needs R_right data");
  return reflection_route(data, Route::RightReflection, x, opt);
}

ReconstructedPotential potential_from_left_reflection(const FirstBornData& data,
                                                      std::span<const double> x,
                                                      const InverseOptions& opt) {
  if (data.kind != DataKind::RLeft)
    throw Error(ErrorCode::InvalidInput, "left-reflection route needs R_left data");
  return reflection_route(data, Route::LeftReflection, x, opt);
}

ReconstructedPotential reconstruct(const FirstBornData& data, Route route,
                                   std::span<const double> x, const InverseOptions& opt) {
  if (data.kind != route_data_kind(route))
    throw Error(ErrorCode::InvalidInput, std::string("route ") + to_string(route) +
                                             " cannot use " + to_string(data.kind) + " data");
  switch (route) {
    case Route::M12:
    case Route::M21: return potential_from_offdiagonal(data, x, opt);
    case Route::RightReflection: return potential_from_right_reflection(data, x, opt);
    case Route::LeftReflection: return potential_from_left_reflection(data, x, opt);
  }
  throw Error(ErrorCode::InvalidInput, "unknown route");
}

RoundTripReport roundtrip_validate(const PotentialSpec& spec, Route route,
                                   const RoundTripOptions& opt) {
  RoundTripReport rep;
  rep.route = route;
  if (spec.distributional()) {
    rep.detail = "delta potentials have no pointwise reconstruction";
    return rep;
  }
  try {
    const auto [lo, hi] = support_window(spec, opt.margin_fraction);
    const int n = std::max(opt.points, 2);
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = lo + (hi - lo) * i / (n - 1);

    const FirstBornData data = first_born_data(spec, route_data_kind(route));
    rep.reconstruction = reconstruct(data, route, x, opt.inverse);

    const Support s = spec.support();
    const double exclusion = opt.exclusion_fraction * (s.x_max - s.x_min);
    const auto jumps = spec.discontinuities();
    const double c =
        spec.coupling().kind == Coupling::Kind::KSquared ? spec.coupling().c : 1.0;
    const double dx = (hi - lo) / (n - 1);
    double l2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const bool near_jump = std::any_of(jumps.begin(), jumps.end(), [&](double j) {
        return std::abs(x[i] - j) <= exclusion;
      });
      if (near_jump) continue;
      const cplx ref = c * evaluate_shape(spec, x[i]);
      const double e = std::abs(rep.reconstruction.v[i] - ref);
      rep.sup_error = std::max(rep.sup_error, e);
      rep.sup_reference = std::max(rep.sup_reference, std::abs(ref));
      l2 += e * e * dx;
    }
    rep.l2_error = std::sqrt(l2);
    rep.ok = true;
    rep.detail = "compared outside +-" + std::to_string(exclusion) + " of each jump";
  } catch (const Error& e) {
    rep.detail = std::string(to_string(e.code())) + ": " + e.what();
  }
  return rep;
}

}  // namespace wavetm
