#include "wavetm.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <limits>
#include <map>
#include <memory>
#include <new>

#include <json.hpp>

#include "wavetm/acceptance.hpp"
#include "wavetm/born.hpp"
#include "wavetm/inverse.hpp"
#include "wavetm/invisibility.hpp"
#include "wavetm/spec_io.hpp"
#include "wavetm/transfer.hpp"
#include "wavetm/two_level.hpp"

struct wtm_spec {
  wavetm::PotentialSpec spec;
};

struct wtm_data {
  wavetm::FirstBornData data;
};

namespace {

using json = nlohmann::ordered_json;
using wavetm::cplx;
using wavetm::Error;
using wavetm::ErrorCode;

thread_local std::string g_last_error;

wtm_status fail(wtm_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
wtm_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return WTM_OK;
  } catch (const Error& e) {
    return fail(static_cast<wtm_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(WTM_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(WTM_INTERNAL_ERROR, e.what());
  }
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorCode::InvalidInput, msg);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(const json& doc, char** out) {
  require(out != nullptr, "output pointer is null");
  *out = dup_string(doc.dump(2));
}

json cj(cplx z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const wavetm::Mat2& m) {
  return json::array({json::array({cj(m.a11), cj(m.a12)}), json::array({cj(m.a21), cj(m.a22)})});
}

const char* order_name(wavetm::Order o) {
  switch (o) {
    case wavetm::Order::Exact: return "exact";
    case wavetm::Order::Born1: return "born1";
    case wavetm::Order::Born2: return "born2";
    case wavetm::Order::BornN: return "bornN";
  }
  return "unknown";
}

json amplitudes_json(const wavetm::ScatteringAmplitudes& a) {
  json j;
  j["r_left"] = cj(a.r_left);
  j["r_right"] = cj(a.r_right);
  j["t"] = cj(a.t);
  j["abs_r_left"] = std::abs(a.r_left);
  j["abs_r_right"] = std::abs(a.r_right);
  j["abs_t_minus_1"] = std::abs(a.t - 1.0);
  j["order"] = order_name(a.order);
  if (a.order == wavetm::Order::BornN) j["born_order"] = a.born_order;
  return j;
}

const wavetm::PotentialSpec& spec_of(const wtm_spec* s) {
  require(s != nullptr, "spec handle is null");
  return s->spec;
}

unsigned warning_flags(const std::vector<std::string>& warnings) {
  unsigned f = 0;
  for (const auto& w : warnings) {
    if (w.rfind("TruncationWarning", 0) == 0) f |= WTM_FLAG_TRUNCATED;
    if (w.rfind("NonconvergentSeries", 0) == 0) f |= WTM_FLAG_NONCONVERGENT;
  }
  return f;
}

wavetm::DataKind kind_of(const char* kind) {
  require(kind != nullptr, "data kind is null");
  const auto k = wavetm::data_kind_from_string(kind);
  require(k.has_value(), std::string("unknown data kind '") + kind +
                             "' (expected M12, M21, R_right or R_left)");
  return *k;
}

wavetm::Route route_of(const char* route) {
  require(route != nullptr, "route is null");
  const auto r = wavetm::route_from_string(route);
  require(r.has_value(),
          std::string("unknown route '") + route + "' (expected m12, m21, rr or rl)");
  return *r;
}

json reconstruction_meta(const wavetm::ReconstructedPotential& r) {
  json j;
  j["route"] = wavetm::to_string(r.route);
  j["alpha"] = cj(r.alpha);
  j["alpha_source"] = r.alpha_source;
  j["k_max"] = r.k_max;
  j["tapered"] = r.tapered;
  j["closed_form"] = r.closed_form;
  if (r.tail_window > 0.0) j["tail_window"] = r.tail_window;
  j["smoothness"] = r.smoothness;
  j["errors"] = r.warnings;
  return j;
}

}  // namespace

extern "C" {

const char* wtm_version(void) { return "1.0.0"; }

const char* wtm_last_error(void) { return g_last_error.c_str(); }

const char* wtm_status_name(wtm_status status) {
  if (status == WTM_OK) return "Ok";
  if (status == WTM_INTERNAL_ERROR) return "InternalError";
  if (status >= WTM_INVALID_INPUT && status <= WTM_IO_ERROR)
    return wavetm::to_string(static_cast<ErrorCode>(status));
  return "Unknown";
}

int wtm_status_is_input_error(wtm_status status) {
  switch (status) {
    case WTM_INVALID_INPUT:
    case WTM_PARSE_ERROR:
    case WTM_IO_ERROR:
    case WTM_INVALID_WAVENUMBER:
    case WTM_DISTRIBUTIONAL_POTENTIAL:
    case WTM_NOT_PERIODIC:
    case WTM_UNSUPPORTED_FAMILY:
    case WTM_WAVENUMBER_MISMATCH: return 1;
    default: return 0;
  }
}

void wtm_string_free(char* s) { std::free(s); }

wtm_status wtm_engine_from_string(const char* name, wtm_engine* out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "null argument");
    const std::string n = name;
    if (n == "ode" || n == "exact") *out = WTM_ENGINE_ODE;
    else if (n == "analytic") *out = WTM_ENGINE_ANALYTIC;
    else if (n == "born1") *out = WTM_ENGINE_BORN1;
    else if (n == "born2") *out = WTM_ENGINE_BORN2;
    else if (n == "bornN") *out = WTM_ENGINE_BORNN;
    else
      throw Error(ErrorCode::InvalidInput,
                  "unknown method '" + n + "' (expected ode, analytic, born1, born2, bornN)");
  });
}

wtm_status wtm_spec_parse(const char* text, wtm_spec** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    *out = new wtm_spec{wavetm::parse_spec(text)};
  });
}

wtm_status wtm_spec_load(const char* path, wtm_spec** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new wtm_spec{wavetm::load_spec(path)};
  });
}

wtm_status wtm_spec_to_json(const wtm_spec* spec, char** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    *out = dup_string(wavetm::spec_to_json(spec_of(spec)));
  });
}

void wtm_spec_free(wtm_spec* spec) { delete spec; }

wtm_status wtm_scatter(const wtm_spec* handle, double k, wtm_engine engine, int order,
                       double tol, char** report_json) {
  return guarded([&] {
    const auto& spec = spec_of(handle);
    require(tol > 0.0, "tol must be positive");
    wavetm::TransferMatrix m;
    std::optional<wavetm::ScatteringAmplitudes> amps;
    json doc = json::object();
    switch (engine) {
      case WTM_ENGINE_ODE: {
        wavetm::OdeOptions o;
        o.tol = tol;
        m = wavetm::transfer_matrix_ode(spec, k, o);
        break;
      }
      case WTM_ENGINE_ANALYTIC:
        require(k > 0.0, "k must be positive");
        m = wavetm::analytic_transfer(spec, k);
        break;
      case WTM_ENGINE_BORN1:
      case WTM_ENGINE_BORN2: {
        const int n = engine == WTM_ENGINE_BORN1 ? 1 : 2;
        m = wavetm::born_sum(spec, k, n).matrix;
        amps = n == 1 ? wavetm::amplitudes_first_order(spec, k)
                      : wavetm::amplitudes_second_order(spec, k);
        break;
      }
      case WTM_ENGINE_BORNN: {
        require(order >= 1, "order must be at least 1");
        wavetm::BornOptions o;
        o.tol = std::min(tol, 1e-12);
        const auto s = wavetm::born_sum(spec, k, order, o);
        m = s.matrix;
        doc["rho"] = s.rho;
        doc["residual_estimate"] = s.residual_estimate;
        doc["convergent"] = s.convergent;
        break;
      }
      default: throw Error(ErrorCode::InvalidInput, "unknown engine");
    }
    json head{{"k", k}, {"method", m.method_name()}, {"M", matrix_json(m.m)},
              {"det_residual", m.det_residual()}};
    head.update(doc);
    doc = std::move(head);
    try {
      if (!amps) amps = wavetm::amplitudes_from_transfer(m);
      doc["amplitudes"] = amplitudes_json(*amps);
      doc["Rl"] = cj(amps->r_left);
      doc["Rr"] = cj(amps->r_right);
      doc["T"] = cj(amps->t);
    } catch (const Error& e) {
      doc["amplitudes"] = nullptr;
      doc["Rl"] = doc["Rr"] = doc["T"] = nullptr;
      doc["amplitude_error"] = std::string(wavetm::to_string(e.code())) + ": " + e.what();
    }
    doc["warnings"] = m.warnings;
    emit(doc, report_json);
  });
}

wtm_status wtm_scan(const wtm_spec* handle, const double* k, size_t n, wtm_engine engine,
                    int order, double tol, int threads, wtm_scan_row* rows) {
  return guarded([&] {
    const auto& spec = spec_of(handle);
    require(n > 0, "k grid is empty");
    require(k != nullptr && rows != nullptr, "null argument");
    for (size_t i = 1; i < n; ++i) require(k[i] > k[i - 1], "k grid must be increasing");
    const std::span<const double> grid(k, n);

    if (engine == WTM_ENGINE_BORNN || engine == WTM_ENGINE_ANALYTIC) {
      require(engine == WTM_ENGINE_ANALYTIC || order >= 1, "order must be at least 1");
      for (size_t i = 0; i < n; ++i) {
        wtm_scan_row& r = rows[i];
        r = {k[i], 0.0, 0.0, 0.0, WTM_OK, 0};
        try {
          const wavetm::TransferMatrix m =
              engine == WTM_ENGINE_ANALYTIC ? wavetm::analytic_transfer(spec, k[i])
                                            : wavetm::born_sum(spec, k[i], order).matrix;
          const auto a = wavetm::amplitudes_from_transfer(m);
          r.abs_rl = std::abs(a.r_left);
          r.abs_rr = std::abs(a.r_right);
          r.abs_tm1 = std::abs(a.t - 1.0);
          r.flags = warning_flags(m.warnings);
        } catch (const Error& e) {
          r.abs_rl = r.abs_rr = r.abs_tm1 = std::numeric_limits<double>::infinity();
          r.status = static_cast<wtm_status>(e.code());
        }
      }
      return;
    }

    wavetm::ScanMethod method = wavetm::ScanMethod::Exact;
    if (engine == WTM_ENGINE_BORN1) method = wavetm::ScanMethod::Born1;
    else if (engine == WTM_ENGINE_BORN2) method = wavetm::ScanMethod::Born2;
    wavetm::ScanOptions opt;
    opt.tol = tol;
    opt.threads = threads;
    const auto s = wavetm::scan(spec, grid, method, opt);
    for (size_t i = 0; i < n; ++i) {
      const auto& row = s.rows[i];
      wtm_scan_row& r = rows[i];
      r = {row.k, row.abs_rl, row.abs_rr, row.abs_tm1, WTM_OK, 0};
      if (std::isinf(row.abs_rl)) {
        const auto code = wavetm::error_code_from_string(row.flags);
        r.status = code ? static_cast<wtm_status>(*code) : WTM_INTERNAL_ERROR;
      } else if (row.flags.find("TruncationWarning") != std::string::npos) {
        r.flags |= WTM_FLAG_TRUNCATED;
      }
    }
  });
}

wtm_status wtm_spec_support(const wtm_spec* handle, double* x_min, double* x_max) {
  return guarded([&] {
    require(x_min != nullptr && x_max != nullptr, "null argument");
    const auto s = spec_of(handle).support();
    *x_min = s.x_min;
    *x_max = s.x_max;
  });
}

wtm_status wtm_diagnose(const wtm_spec* handle, double k, double x, wtm_diagnostic* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    const auto d = wavetm::spectral_diagnostic(spec_of(handle), k, k * x);
    out->e_plus = {d.e_plus.real(), d.e_plus.imag()};
    out->e_minus = {d.e_minus.real(), d.e_minus.imag()};
    out->exceptional = d.exceptional ? 1 : 0;
    out->pseudo_hermitian_residual = d.pseudo_hermitian_residual;
    out->eigenvector_condition = d.eigenvector_condition;
  });
}

wtm_status wtm_born(const wtm_spec* handle, double k, int order, double tol, int cross_check,
                    char** report_json) {
  return guarded([&] {
    const auto& spec = spec_of(handle);
    require(order >= 1, "order must be at least 1");
    wavetm::BornOptions o;
    o.tol = tol;
    o.cross_check = cross_check != 0;
    const auto s = wavetm::born_sum(spec, k, order, o);
    json terms = json::array();
    for (const auto& t : s.terms) {
      json j{{"order", t.order}, {"matrix", matrix_json(t.matrix)},
             {"norm", t.matrix.frobenius()}};
      if (t.closed_form_residual) j["closed_form_residual"] = *t.closed_form_residual;
      terms.push_back(j);
    }
    json doc{{"k", k},
             {"order", order},
             {"terms", terms},
             {"M", matrix_json(s.matrix.m)},
             {"rho", s.rho},
             {"residual_estimate", s.residual_estimate},
             {"convergent", s.convergent},
             {"warnings", s.matrix.warnings}};
    try {
      std::optional<wavetm::ScatteringAmplitudes> a;
      if (order == 1) a = wavetm::amplitudes_first_order(spec, k);
      else if (order == 2) a = wavetm::amplitudes_second_order(spec, k);
      else a = wavetm::amplitudes_from_transfer(s.matrix);
      doc["amplitudes"] = amplitudes_json(*a);
    } catch (const Error& e) {
      doc["amplitudes"] = nullptr;
      doc["amplitude_error"] = std::string(wavetm::to_string(e.code())) + ": " + e.what();
    }
    emit(doc, report_json);
  });
}

wtm_status wtm_invisibility(const wtm_spec* handle, int j_max, wtm_engine engine,
                            int three_point, char** report_json) {
  return guarded([&] {
    const auto& spec = spec_of(handle);
    require(j_max >= 1, "jmax must be at least 1");
    require(engine == WTM_ENGINE_ODE || engine == WTM_ENGINE_BORN2,
            "verification engine must be ode or born2");
    wavetm::ClassifyOptions co;
    co.j_max = j_max;
    const auto c = wavetm::classify_theorem2(spec, co);
    wavetm::VerifyThresholds th;
    th.three_point = three_point != 0;
    const auto method =
        engine == WTM_ENGINE_ODE ? wavetm::ScanMethod::Exact : wavetm::ScanMethod::Born2;

    auto fit = [](const wavetm::ExponentFit& f) {
      json j{{"magnitudes", f.magnitudes}, {"vanishes", f.vanishes}};
      if (std::isfinite(f.exponent)) j["exponent"] = f.exponent;
      else j["exponent"] = nullptr;
      return j;
    };
    json preds = json::array();
    bool all_pass = true;
    for (const auto& p : c.predictions) {
      const auto v = wavetm::verify_prediction(spec, p, method, th);
      all_pass = all_pass && v.pass;
      preds.push_back({{"k", p.k},
                       {"lambda", p.lambda},
                       {"direction", wavetm::to_string(p.direction)},
                       {"grade", wavetm::to_string(p.grade)},
                       {"j", p.j},
                       {"periods", p.periods},
                       {"strict", p.strict},
                       {"provenance", p.provenance},
                       {"verification",
                        {{"pass", v.pass},
                         {"engine", wavetm::to_string(v.engine)},
                         {"suppressed", fit(v.suppressed)},
                         {"opposite", fit(v.opposite)},
                         {"transmission", fit(v.transmission)},
                         {"detail", v.detail}}}});
    }
    const auto& ps = c.structure;
    json doc{{"structure",
              {{"base_K", ps.base_K},
               {"gcd", ps.gcd},
               {"period", ps.period},
               {"length", ps.length},
               {"periods", ps.periods}}},
             {"predictions", preds},
             {"all_verified", all_pass}};
    if (c.status) {
      doc["status"] = wavetm::to_string(*c.status);
      doc["reason"] = c.reason;
    }
    emit(doc, report_json);
  });
}

wtm_status wtm_data_from_spec(const wtm_spec* spec, const char* kind, wtm_data** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    *out = new wtm_data{wavetm::first_born_data(spec_of(spec), kind_of(kind))};
  });
}

wtm_status wtm_data_registered(const char* name, const char* const* keys, const double* values,
                               size_t n, wtm_data** out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "null argument");
    require(n == 0 || (keys != nullptr && values != nullptr), "null parameter arrays");
    std::map<std::string, double> params;
    for (size_t i = 0; i < n; ++i) {
      require(keys[i] != nullptr, "null parameter name");
      params[keys[i]] = values[i];
    }
    *out = new wtm_data{wavetm::registered_data(name, params)};
  });
}

wtm_status wtm_data_tabulated(const char* kind, const double* k, const wtm_complex* values,
                              size_t n, wtm_data** out) {
  return guarded([&] {
    require(k != nullptr && values != nullptr && out != nullptr, "null argument");
    std::vector<double> kk(k, k + n);
    std::vector<cplx> vv(n);
    for (size_t i = 0; i < n; ++i) vv[i] = {values[i].re, values[i].im};
    *out = new wtm_data{wavetm::FirstBornData::tabulated(kind_of(kind), std::move(kk),
                                                         std::move(vv))};
  });
}

void wtm_data_free(wtm_data* data) { delete data; }

const char* wtm_registered_names(void) {
  static const std::string names = [] {
    std::string s;
    for (const auto& n : wavetm::registered_names()) s += (s.empty() ? "" : ",") + n;
    return s;
  }();
  return names.c_str();
}

void wtm_invert_options_default(wtm_invert_options* opt) {
  if (!opt) return;
  const wavetm::InverseOptions d;
  opt->k_max = d.k_max;
  opt->taper = d.taper ? 1 : 0;
  opt->use_closed_form = d.use_closed_form ? 1 : 0;
}

wtm_status wtm_invert(const wtm_data* data, const char* route, const double* x, size_t n,
                      const wtm_invert_options* opt, wtm_complex* v_out, char** meta_json) {
  return guarded([&] {
    require(data != nullptr, "data handle is null");
    require(n > 0 && x != nullptr && v_out != nullptr, "x grid is empty");
    wavetm::InverseOptions o;
    if (opt) {
      require(opt->k_max >= 0.0, "k_max must be non-negative");
      o.k_max = opt->k_max;
      o.taper = opt->taper != 0;
      o.use_closed_form = opt->use_closed_form != 0;
    }
    const auto r = wavetm::reconstruct(data->data, route_of(route), {x, n}, o);
    for (size_t i = 0; i < n; ++i) v_out[i] = {r.v[i].real(), r.v[i].imag()};
    if (meta_json) emit(reconstruction_meta(r), meta_json);
  });
}

wtm_status wtm_roundtrip(const wtm_spec* spec, const char* route, char** report_json) {
  return guarded([&] {
    const auto rep = wavetm::roundtrip_validate(spec_of(spec), route_of(route));
    json doc{{"ok", rep.ok},
             {"route", wavetm::to_string(rep.route)},
             {"sup_error", rep.sup_error},
             {"l2_error", rep.l2_error},
             {"sup_reference", rep.sup_reference},
             {"detail", rep.detail}};
    if (rep.ok) doc["reconstruction"] = reconstruction_meta(rep.reconstruction);
    emit(doc, report_json);
  });
}

wtm_status wtm_validate(const char* fixtures_dir, const int* ids, size_t n,
                        char** report_json) {
  return guarded([&] {
    std::vector<wavetm::NamedSpec> fixtures;
    std::string source = "built-in";
    if (fixtures_dir) {
      namespace fs = std::filesystem;
      const fs::path dir(fixtures_dir);
      if (!fs::is_directory(dir))
        throw Error(ErrorCode::IoError, "fixture directory '" + dir.string() + "' not found");
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".json") files.push_back(e.path());
      std::sort(files.begin(), files.end());
      for (const auto& f : files) {
        try {
          fixtures.push_back({f.stem().string(), wavetm::load_spec(f.string())});
        } catch (const Error& e) {
          throw Error(e.code(), f.filename().string() + ": " + e.what());
        }
      }
      source = dir.string();
    } else {
      fixtures = wavetm::default_fixtures();
    }
    std::vector<int> which;
    if (ids && n > 0) which.assign(ids, ids + n);
    for (int id : which)
      require(id >= 1 && id <= wavetm::kCriterionCount,
              "criterion " + std::to_string(id) + " does not exist");
    const auto results = wavetm::run_acceptance(fixtures, which);
    json checks = json::array();
    bool all = true;
    for (const auto& r : results) {
      all = all && r.pass;
      checks.push_back({{"id", r.id},
                        {"title", r.title},
                        {"pass", r.pass},
                        {"detail", r.detail},
                        {"seconds", r.seconds}});
    }
    json names = json::array();
    for (const auto& f : fixtures) names.push_back(f.name);
    emit(json{{"pass", all}, {"fixtures", source}, {"fixture_names", names}, {"checks", checks}},
         report_json);
  });
}

}  // extern "C"
