#include "wavetm/invisibility.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>

namespace wavetm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string join_flags(const std::vector<std::string>& flags) {
  std::string out;
  for (const auto& f : flags) {
    if (!out.empty()) out += ';';
    // Keep only the leading tag of a warning message.
    out += f.substr(0, f.find(':'));
  }
  return out;
}

ScanRow compute_row(const PotentialSpec& spec, double k, ScanMethod method, double tol) {
  ScanRow row;
  row.k = k;
  try {
    std::vector<std::string> flags;
    ScatteringAmplitudes a;
    if (method == ScanMethod::Exact) {
      OdeOptions opt;
      opt.tol = tol;
      const TransferMatrix m = transfer_matrix_ode(spec, k, opt);
      flags = m.warnings;
      a = amplitudes_from_transfer(m);
    } else {
      a = amplitudes(spec, k, method, tol);
    }
    row.abs_rl = std::abs(a.r_left);
    row.abs_rr = std::abs(a.r_right);
    row.abs_tm1 = std::abs(a.t - 1.0);
    row.flags = join_flags(flags);
  } catch (const Error& e) {
    row.abs_rl = row.abs_rr = row.abs_tm1 = kInf;
    row.flags = to_string(e.code());
  }
  return row;
}

}  // namespace

const char* to_string(ScanMethod m) noexcept {
  switch (m) {
    case ScanMethod::Exact: return "exact";
    case ScanMethod::Born1: return "born1";
    case ScanMethod::Born2: return "born2";
  }
  return "unknown";
}

std::optional<ScanMethod> scan_method_from_string(const std::string& name) {
  if (name == "exact" || name == "ode") return ScanMethod::Exact;
  if (name == "born1") return ScanMethod::Born1;
  if (name == "born2") return ScanMethod::Born2;
  return std::nullopt;
}

const char* to_string(Direction d) noexcept {
  return d == Direction::Left ? "left" : "right";
}

const char* to_string(Grade g) noexcept {
  return g == Grade::Reflectionless ? "reflectionless" : "invisible";
}

int default_thread_count() {
  if (const char* env = std::getenv("WAVETM_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<double> uniform_grid(double k_min, double k_max, int n) {
  if (n < 1 || !(k_max >= k_min))
    throw Error(ErrorCode::InvalidInput, "k grid needs n >= 1 and k_max >= k_min");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i)
    out[i] = n == 1 ? k_min : k_min + (k_max - k_min) * i / (n - 1);
  return out;
}

ScatteringAmplitudes amplitudes(const PotentialSpec& spec, double k, ScanMethod method,
                                double tol) {
  switch (method) {
    case ScanMethod::Exact: {
      OdeOptions opt;
      opt.tol = tol;
      return amplitudes_from_transfer(transfer_matrix_ode(spec, k, opt));
    }
    case ScanMethod::Born1: return amplitudes_first_order(spec, k);
    case ScanMethod::Born2: return amplitudes_second_order(spec, k);
  }
  throw Error(ErrorCode::InvalidInput, "unknown scan method");
}

SpectralScan scan(const PotentialSpec& spec, std::span<const double> k_grid,
                  ScanMethod method, const ScanOptions& opt) {
  for (double k : k_grid)
    if (!(k > 0.0) || !std::isfinite(k))
      throw Error(ErrorCode::InvalidWavenumber, "scan grid must be positive and finite");
  std::vector<double> ks(k_grid.begin(), k_grid.end());
  std::sort(ks.begin(), ks.end());

  SpectralScan out;
  out.method = method;
  out.rows.resize(ks.size());
  const int threads = std::clamp(opt.threads > 0 ? opt.threads : default_thread_count(), 1,
                                 static_cast<int>(std::max<std::size_t>(ks.size(), 1)));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < ks.size(); i = next++)
      out.rows[i] = compute_row(spec, ks[i], method, opt.tol);
  };
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  return out;
}

Classification classify_theorem2(const PotentialSpec& spec, const ClassifyOptions& opt) {
  Classification out;
  out.structure = periodic_structure(spec);
  const PeriodicStructure& ps = out.structure;
  const double n_real = ps.periods;
  const long n = std::lround(n_real);
  if (n < 1 || std::abs(n_real - n) > 1e-9 * std::max(1.0, n_real)) {
    out.status = ErrorCode::PeriodMismatch;
    std::ostringstream msg;
    msg << "support length " << ps.length << " is not an integer multiple of the period "
        << ps.period;
    out.reason = msg.str();
    return out;
  }

  std::vector<cplx> a(2 * opt.j_max + 1);
  double a_max = 0.0;
  for (int i = -opt.j_max; i <= opt.j_max; ++i) {
    a[i + opt.j_max] = fourier_coefficients(spec, i).a;
    a_max = std::max(a_max, std::abs(a[i + opt.j_max]));
  }
  if (a_max == 0.0) {
    out.reason = "all Fourier coefficients vanish";
    return out;
  }
  auto zero = [&](int i) { return std::abs(a[i + opt.j_max]) <= opt.eps_a * a_max; };
  const bool a0_zero = zero(0);

  for (int j = 1; j <= opt.j_max; ++j) {
    for (const Direction dir : {Direction::Left, Direction::Right}) {
      const int vanishing = dir == Direction::Left ? -j : j;
      if (!zero(vanishing) || zero(-vanishing)) continue;
      InvisibilityPrediction p;
      p.j = j;
      p.direction = dir;
      p.grade = a0_zero ? Grade::Invisible : Grade::Reflectionless;
      p.period = ps.period;
      p.periods = static_cast<int>(n);
      p.strict = n % 2 == 0;
      p.k = kPi * j / ps.period;
      p.lambda = 2.0 * ps.period / j;
      std::ostringstream prov;
      prov << "a_" << vanishing << " = 0, a_" << -vanishing << " != 0";
      if (a0_zero) prov << ", a_0 = 0";
      prov << "; L = " << n << " l with l = " << ps.period
           << " the fundamental period (gcd " << ps.gcd << " of the exponents)";
      if (!p.strict) prov << "; N odd, only L = N l is used";
      p.provenance = prov.str();
      out.predictions.push_back(p);
    }
  }
  std::stable_sort(out.predictions.begin(), out.predictions.end(),
                   [](const auto& x, const auto& y) { return x.k < y.k; });
  return out;
}

ExponentFit fit_exponent(std::span<const double> magnitudes, double zero_floor) {
  ExponentFit fit;
  fit.magnitudes.assign(magnitudes.begin(), magnitudes.end());
  const bool all_zero = std::all_of(magnitudes.begin(), magnitudes.end(),
                                    [&](double m) { return m <= zero_floor; });
  if (all_zero) {
    fit.vanishes = true;
    fit.exponent = kInf;
    return fit;
  }
  if (magnitudes.front() <= zero_floor) {
    fit.exponent = std::nan("");
    return fit;
  }
  if (std::any_of(magnitudes.begin(), magnitudes.end(),
                  [&](double m) { return m <= zero_floor; })) {
    fit.exponent = kInf;
    return fit;
  }
  // log2 |X| against -i for couplings z / 2^i.
  const auto n = static_cast<double>(magnitudes.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < magnitudes.size(); ++i) {
    const double x = -static_cast<double>(i);
    const double y = std::log2(magnitudes[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  fit.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return fit;
}

VerificationReport verify_prediction(const PotentialSpec& spec,
                                     const InvisibilityPrediction& prediction,
                                     ScanMethod engine, const VerifyThresholds& th) {
  VerificationReport rep;
  rep.k = prediction.k;
  rep.engine = engine;
  const int levels = th.three_point ? 3 : 2;
  std::vector<double> sup, opp, tm1;
  try {
    for (int i = 0; i < levels; ++i) {
      const PotentialSpec s = spec.scaled(std::ldexp(1.0, -i));
      const ScatteringAmplitudes a = amplitudes(s, prediction.k, engine, th.tol);
      const double rl = std::abs(a.r_left), rr = std::abs(a.r_right);
      sup.push_back(prediction.direction == Direction::Left ? rl : rr);
      opp.push_back(prediction.direction == Direction::Left ? rr : rl);
      tm1.push_back(std::abs(a.t - 1.0));
    }
  } catch (const Error& e) {
    rep.detail = std::string("computation failed: ") + e.what();
    return rep;
  }
  rep.suppressed = fit_exponent(sup, th.zero_floor);
  rep.opposite = fit_exponent(opp, th.zero_floor);
  rep.transmission = fit_exponent(tm1, th.zero_floor);

  std::ostringstream d;
  if (rep.suppressed.vanishes && rep.opposite.vanishes && rep.transmission.vanishes) {
    rep.pass = true;
    rep.detail = "all amplitudes vanish; invisible from both sides";
    return rep;
  }
  bool ok = true;
  auto suppressed_ok = [&](const ExponentFit& f) {
    return f.vanishes || f.exponent >= th.min_suppressed_exponent;
  };
  if (!suppressed_ok(rep.suppressed)) {
    ok = false;
    d << "suppressed reflection exponent " << rep.suppressed.exponent << " below "
      << th.min_suppressed_exponent << "; ";
  }
  if (prediction.grade == Grade::Invisible && !suppressed_ok(rep.transmission)) {
    ok = false;
    d << "|T-1| exponent " << rep.transmission.exponent << " below "
      << th.min_suppressed_exponent << "; ";
  }
  if (rep.opposite.vanishes ||
      !(std::abs(rep.opposite.exponent - th.opposite_exponent) <= th.opposite_slack)) {
    ok = false;
    d << "opposite reflection exponent " << rep.opposite.exponent << " is not "
      << th.opposite_exponent << "; ";
  }
  rep.pass = ok;
  rep.detail = ok ? "prediction confirmed" : d.str();
  return rep;
}

}  // namespace wavetm
