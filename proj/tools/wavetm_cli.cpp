// wavetm: command-line front end over the C interface.
//
// Exit status: 0 success, 1 computation failure, 2 input error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wavetm.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitCompute = 1;
constexpr int kExitInput = 2;

struct Failure {
  int exit_code;
  std::string message;
};

[[noreturn]] void input_error(const std::string& field, const std::string& msg) {
  throw Failure{kExitInput, field + ": " + msg};
}

void check(wtm_status s) {
  if (s == WTM_OK) return;
  throw Failure{wtm_status_is_input_error(s) ? kExitInput : kExitCompute,
                std::string(wtm_status_name(s)) + ": " + wtm_last_error()};
}

struct SpecDeleter {
  void operator()(wtm_spec* s) const { wtm_spec_free(s); }
};
struct DataDeleter {
  void operator()(wtm_data* d) const { wtm_data_free(d); }
};
using SpecPtr = std::unique_ptr<wtm_spec, SpecDeleter>;
using DataPtr = std::unique_ptr<wtm_data, DataDeleter>;

// Takes ownership of a library string.
std::string take(char* s) {
  std::string out = s ? s : "";
  wtm_string_free(s);
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Config {
  std::string subcommand;
  std::string spec_path;
  std::optional<double> k;
  double k_min = 0.05, k_max = 4.0;
  int k_steps = 400;
  std::string method = "ode";
  int order = 2;
  std::optional<double> tol;
  std::string out;
  std::string route = "m12";
  int jmax = 16;
  bool gnuplot = false;
  bool diagnostics = false;
  bool cross_check = false;
  bool three_point = false;
  // invert
  std::string data_name, table_path, kind;
  std::vector<std::string> params;
  std::optional<double> x_min, x_max;
  int x_steps = 401;
  double inv_k_max = 0.0;
  bool no_taper = false, numeric = false, roundtrip = false;
  // validate
  std::string fixtures;
  std::vector<int> criteria;
};

double tolerance(const Config& c) { return c.tol.value_or(1e-10); }

json tolerance_provenance(const Config& c) {
  return {{"tol", tolerance(c)}, {"source", c.tol ? "--tol" : "default"}};
}

json config_json(const Config& c) {
  json j{{"subcommand", c.subcommand}};
  if (!c.spec_path.empty()) j["spec"] = c.spec_path;
  if (c.subcommand == "scatter" || c.subcommand == "born") j["k"] = c.k.value_or(0.0);
  if (c.subcommand == "scan") {
    j["k_grid"] = {{"k_min", c.k_min}, {"k_max", c.k_max}, {"k_steps", c.k_steps}};
    j["diagnostics"] = c.diagnostics;
  }
  if (c.subcommand != "validate" && c.subcommand != "invert") j["method"] = c.method;
  if (c.subcommand == "born" || c.method == "bornN") j["order"] = c.order;
  if (c.subcommand == "invisibility") {
    j["jmax"] = c.jmax;
    j["three_point"] = c.three_point;
  }
  if (c.subcommand == "invert") {
    j["route"] = c.route;
    if (!c.data_name.empty()) j["data"] = c.data_name;
    if (!c.table_path.empty()) j["table"] = c.table_path;
    if (!c.params.empty()) j["params"] = c.params;
    j["x_grid"] = {{"x_min", c.x_min ? json(*c.x_min) : json("auto")},
                   {"x_max", c.x_max ? json(*c.x_max) : json("auto")},
                   {"x_steps", c.x_steps}};
    j["k_max"] = c.inv_k_max;
    j["taper"] = !c.no_taper;
    j["numeric"] = c.numeric;
    j["roundtrip"] = c.roundtrip;
  }
  if (c.subcommand == "validate") {
    j["fixtures"] = c.fixtures.empty() ? "built-in" : c.fixtures;
    j["criteria"] = c.criteria;
  }
  j["out"] = c.out.empty() ? "-" : c.out;
  return j;
}

wtm_engine engine_of(const Config& c) {
  wtm_engine e;
  if (wtm_engine_from_string(c.method.c_str(), &e) != WTM_OK)
    input_error("--method", wtm_last_error());
  return e;
}

SpecPtr load(const Config& c) {
  if (c.spec_path.empty()) input_error("--spec", "required");
  wtm_spec* s = nullptr;
  const wtm_status st = wtm_spec_load(c.spec_path.c_str(), &s);
  if (st != WTM_OK)
    throw Failure{kExitInput, "--spec " + c.spec_path + ": " + wtm_status_name(st) + ": " +
                                  wtm_last_error()};
  return SpecPtr(s);
}

json spec_json(const wtm_spec* s) {
  char* out = nullptr;
  check(wtm_spec_to_json(s, &out));
  return json::parse(take(out));
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Failure{kExitInput, "--out: cannot write '" + path + "'"};
  f << text;
  if (!f) throw Failure{kExitCompute, "write to '" + path + "' failed"};
}

// Sidecar next to every output file: config echo plus tolerance provenance.
void write_sidecar(const Config& c, const std::string& path, const json& extra) {
  json side{{"config", config_json(c)},
            {"tolerances", tolerance_provenance(c)},
            {"library_version", wtm_version()}};
  for (const auto& [k, v] : extra.items()) side[k] = v;
  write_file(path + ".meta.json", side.dump(2) + "\n");
}

void emit_json(const Config& c, const json& result, const json& extra = json::object()) {
  json doc{{"config", config_json(c)}, {"result", result}};
  const std::string text = doc.dump(2) + "\n";
  if (c.out.empty() || c.out == "-") {
    std::cout << text;
  } else {
    write_file(c.out, text);
    write_sidecar(c, c.out, extra);
  }
}

int run_scatter(const Config& c) {
  const auto spec = load(c);
  if (!c.k) input_error("--k", "required");
  char* out = nullptr;
  check(wtm_scatter(spec.get(), *c.k, engine_of(c), c.order, tolerance(c), &out));
  emit_json(c, json::parse(take(out)), {{"spec", spec_json(spec.get())}});
  return kExitOk;
}

std::vector<double> k_grid(const Config& c) {
  if (c.k_steps < 1) input_error("--k-steps", "must be at least 1");
  if (!(c.k_min > 0.0)) input_error("--k-min", "must be positive");
  if (c.k_steps > 1 && !(c.k_max > c.k_min)) input_error("--k-max", "must exceed --k-min");
  std::vector<double> k(c.k_steps);
  for (int i = 0; i < c.k_steps; ++i)
    k[i] = c.k_steps == 1 ? c.k_min : c.k_min + (c.k_max - c.k_min) * i / (c.k_steps - 1);
  return k;
}

std::string gnuplot_script(const std::string& csv) {
  std::ostringstream s;
  s << "# gnuplot " << csv << ".gp\n"
    << "set datafile separator ','\n"
    << "set key autotitle columnhead\n"
    << "set xlabel 'k'\n"
    << "set logscale y\n"
    << "plot '" << csv << "' using 1:2 with lines lw 3 title '|R^l|', \\\n"
    << "     '' using 1:3 with lines dt 2 title '|R^r|', \\\n"
    << "     '' using 1:4 with lines lw 1 title '|T-1|'\n";
  return s.str();
}

constexpr int kDiagnosticSamples = 513;

// Per k: the sample with the smallest |E+| (closest to a turning point) and
// the largest pseudo-Hermiticity residual over the support.
std::string diagnostics_csv(const wtm_spec* spec, const std::vector<double>& k) {
  double a = 0.0, b = 0.0;
  check(wtm_spec_support(spec, &a, &b));
  std::ostringstream csv;
  csv << "k,x_min_abs_n,re_e_plus,im_e_plus,exceptional,eigenvector_condition,"
         "max_pseudo_hermitian_residual,flags\n";
  for (double kk : k) {
    wtm_diagnostic best{}, d{};
    double best_x = a, best_abs = std::numeric_limits<double>::infinity(), residual = 0.0;
    bool exceptional = false;
    wtm_status status = WTM_OK;
    for (int i = 0; i < kDiagnosticSamples && status == WTM_OK; ++i) {
      const double x = a + (b - a) * i / (kDiagnosticSamples - 1);
      status = wtm_diagnose(spec, kk, x, &d);
      if (status != WTM_OK) break;
      const double m = std::hypot(d.e_plus.re, d.e_plus.im);
      if (m < best_abs) {
        best_abs = m;
        best = d;
        best_x = x;
      }
      exceptional = exceptional || d.exceptional;
      residual = std::max(residual, d.pseudo_hermitian_residual);
    }
    csv << num(kk) << ',';
    if (status != WTM_OK) {
      csv << ",,,,,," << wtm_status_name(status) << '\n';
      continue;
    }
    csv << num(best_x) << ',' << num(best.e_plus.re) << ',' << num(best.e_plus.im) << ','
        << (exceptional ? 1 : 0) << ',' << num(best.eigenvector_condition) << ','
        << num(residual) << ",\n";
  }
  return csv.str();
}

int run_scan(const Config& c) {
  const auto spec = load(c);
  if (c.out.empty()) input_error("--out", "scan needs an output CSV path");
  const auto k = k_grid(c);
  std::vector<wtm_scan_row> rows(k.size());
  check(wtm_scan(spec.get(), k.data(), k.size(), engine_of(c), c.order, tolerance(c), 0,
                 rows.data()));
  std::ostringstream csv;
  csv << "k,abs_Rl,abs_Rr,abs_Tm1,method,flags\n";
  int failed = 0;
  for (const auto& r : rows) {
    std::string flags;
    auto add = [&flags](const std::string& f) { flags += (flags.empty() ? "" : ";") + f; };
    if (r.status != WTM_OK) {
      ++failed;
      add(wtm_status_name(r.status));
    }
    if (r.flags & WTM_FLAG_TRUNCATED) add("TruncationWarning");
    if (r.flags & WTM_FLAG_NONCONVERGENT) add("NonconvergentSeries");
    csv << num(r.k) << ',' << num(r.abs_rl) << ',' << num(r.abs_rr) << ',' << num(r.abs_tm1)
        << ',' << c.method << ',' << flags << '\n';
  }
  write_file(c.out, csv.str());
  json extra{{"spec", spec_json(spec.get())},
             {"columns", {"k", "abs_Rl", "abs_Rr", "abs_Tm1", "method", "flags"}},
             {"rows", rows.size()},
             {"failed_rows", failed}};
  if (c.gnuplot) {
    write_file(c.out + ".gp", gnuplot_script(c.out));
    extra["gnuplot_script"] = c.out + ".gp";
  }
  if (c.diagnostics) {
    const std::string path = c.out + ".diagnostics.csv";
    write_file(path, diagnostics_csv(spec.get(), k));
    extra["diagnostics"] = path;
    write_sidecar(c, path, {{"spec", spec_json(spec.get())}, {"x_samples", kDiagnosticSamples}});
  }
  write_sidecar(c, c.out, extra);
  return kExitOk;
}

int run_born(const Config& c) {
  const auto spec = load(c);
  if (!c.k) input_error("--k", "required");
  if (c.order < 1) input_error("--order", "must be at least 1");
  char* out = nullptr;
  check(wtm_born(spec.get(), *c.k, c.order, std::min(tolerance(c), 1e-12), c.cross_check, &out));
  emit_json(c, json::parse(take(out)), {{"spec", spec_json(spec.get())}});
  return kExitOk;
}

int run_invisibility(const Config& c) {
  const auto spec = load(c);
  char* out = nullptr;
  check(wtm_invisibility(spec.get(), c.jmax, engine_of(c), c.three_point, &out));
  const json result = json::parse(take(out));
  emit_json(c, result, {{"spec", spec_json(spec.get())}});
  return result.value("all_verified", false) ? kExitOk : kExitCompute;
}

std::vector<std::pair<std::string, double>> parse_params(const std::vector<std::string>& raw) {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& p : raw) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) input_error("--param", "expected key=value, got '" + p + "'");
    try {
      std::size_t used = 0;
      const double v = std::stod(p.substr(eq + 1), &used);
      if (used != p.size() - eq - 1) throw std::invalid_argument(p);
      out.emplace_back(p.substr(0, eq), v);
    } catch (const std::exception&) {
      input_error("--param " + p.substr(0, eq), "value is not a number");
    }
  }
  return out;
}

DataPtr read_table(const Config& c) {
  std::ifstream in(c.table_path);
  if (!in) input_error("--table", "cannot read '" + c.table_path + "'");
  std::vector<double> k;
  std::vector<wtm_complex> v;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double a, b, d;
    if (!(row >> a >> b >> d)) {
      if (lineno == 1) continue;  // header
      input_error("--table line " + std::to_string(lineno), "expected k, re, im");
    }
    k.push_back(a);
    v.push_back({b, d});
  }
  const std::string kind = c.kind.empty() ? "M12" : c.kind;
  wtm_data* d = nullptr;
  const wtm_status st = wtm_data_tabulated(kind.c_str(), k.data(), v.data(), k.size(), &d);
  if (st != WTM_OK) input_error("--table", wtm_last_error());
  return DataPtr(d);
}

int run_invert(const Config& c) {
  const bool have_spec = !c.spec_path.empty();
  const int sources = have_spec + !c.data_name.empty() + !c.table_path.empty();
  if (sources != 1) input_error("--spec/--data/--table", "give exactly one data source");

  SpecPtr spec;
  if (have_spec) spec = load(c);

  if (c.roundtrip) {
    if (!have_spec) input_error("--roundtrip", "needs --spec");
    char* out = nullptr;
    check(wtm_roundtrip(spec.get(), c.route.c_str(), &out));
    const json rep = json::parse(take(out));
    emit_json(c, rep, {{"spec", spec_json(spec.get())}});
    return rep.value("ok", false) ? kExitOk : kExitCompute;
  }

  static const std::map<std::string, std::string> route_kind{
      {"m12", "M12"}, {"m21", "M21"}, {"rr", "R_right"}, {"rl", "R_left"}};
  const auto rk = route_kind.find(c.route);
  if (rk == route_kind.end()) input_error("--route", "expected m12, m21, rr or rl");

  DataPtr data;
  if (have_spec) {
    wtm_data* d = nullptr;
    check(wtm_data_from_spec(spec.get(), rk->second.c_str(), &d));
    data.reset(d);
  } else if (!c.data_name.empty()) {
    const auto params = parse_params(c.params);
    std::vector<const char*> keys;
    std::vector<double> vals;
    for (const auto& [key, v] : params) {
      keys.push_back(key.c_str());
      vals.push_back(v);
    }
    wtm_data* d = nullptr;
    const wtm_status st =
        wtm_data_registered(c.data_name.c_str(), keys.data(), vals.data(), keys.size(), &d);
    if (st != WTM_OK)
      input_error("--data", std::string(wtm_last_error()) + " (known: " + wtm_registered_names() + ")");
    data.reset(d);
  } else {
    data = read_table(c);
  }

  double lo = c.x_min.value_or(-4.0), hi = c.x_max.value_or(4.0);
  if (have_spec && (!c.x_min || !c.x_max)) {
    const json s = spec_json(spec.get());
    if (s["support"].is_array()) {
      const double a = s["support"][0], b = s["support"][1];
      const double pad = 0.25 * (b - a > 0 ? b - a : 1.0);
      if (!c.x_min) lo = a - pad;
      if (!c.x_max) hi = b + pad;
    }
  }
  if (c.x_steps < 2) input_error("--x-steps", "must be at least 2");
  if (!(hi > lo)) input_error("--x-max", "must exceed --x-min");
  std::vector<double> x(c.x_steps);
  for (int i = 0; i < c.x_steps; ++i) x[i] = lo + (hi - lo) * i / (c.x_steps - 1);

  wtm_invert_options opt;
  wtm_invert_options_default(&opt);
  opt.k_max = c.inv_k_max;
  opt.taper = c.no_taper ? 0 : 1;
  opt.use_closed_form = c.numeric ? 0 : 1;
  std::vector<wtm_complex> v(x.size());
  char* meta = nullptr;
  check(wtm_invert(data.get(), c.route.c_str(), x.data(), x.size(), &opt, v.data(), &meta));
  const json meta_json = json::parse(take(meta));

  std::ostringstream csv;
  csv << "x,re_v,im_v\n";
  for (std::size_t i = 0; i < x.size(); ++i)
    csv << num(x[i]) << ',' << num(v[i].re) << ',' << num(v[i].im) << '\n';
  if (c.out.empty() || c.out == "-") {
    std::cout << csv.str();
  } else {
    write_file(c.out, csv.str());
    json extra{{"reconstruction", meta_json}, {"columns", {"x", "re_v", "im_v"}}};
    if (have_spec) extra["spec"] = spec_json(spec.get());
    write_sidecar(c, c.out, extra);
  }
  return kExitOk;
}

int run_validate(const Config& c) {
  char* out = nullptr;
  check(wtm_validate(c.fixtures.empty() ? nullptr : c.fixtures.c_str(),
                     c.criteria.empty() ? nullptr : c.criteria.data(), c.criteria.size(), &out));
  json rep = json::parse(take(out));
  for (const auto& chk : rep["checks"]) {
    std::printf("criterion %2d %s: %s (%.2f s) %s\n", chk["id"].get<int>(),
                chk["pass"].get<bool>() ? "PASS" : "FAIL", chk["title"].get<std::string>().c_str(),
                chk["seconds"].get<double>(), chk["detail"].get<std::string>().c_str());
  }
  // Timings vary run to run; keep them out of the file so outputs are reproducible.
  for (auto& chk : rep["checks"]) chk.erase("seconds");
  if (!c.out.empty() && c.out != "-") {
    write_file(c.out, json{{"config", config_json(c)}, {"result", rep}}.dump(2) + "\n");
    write_sidecar(c, c.out, json::object());
  }
  return rep.value("pass", false) ? kExitOk : kExitCompute;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transfer-matrix scattering, Born series, invisibility and inverse scattering"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(wtm_version()));
  Config cfg;

  auto spec_opt = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--spec", cfg.spec_path, "potential spec JSON file");
    if (required) o->required();
  };
  auto method_opt = [&](CLI::App* sub, const std::string& def) {
    cfg.method = def;
    sub->add_option("--method", cfg.method, "ode|analytic|born1|born2|bornN")->capture_default_str();
    sub->add_option("--order", cfg.order, "Born order N for bornN")->capture_default_str();
  };
  auto tol_opt = [&](CLI::App* sub) {
    sub->add_option("--tol", cfg.tol, "integration tolerance (default 1e-10)")
        ->check(CLI::PositiveNumber);
  };
  auto out_opt = [&](CLI::App* sub) { sub->add_option("--out", cfg.out, "output path ('-' for stdout)"); };

  auto* scatter = app.add_subcommand("scatter", "transfer matrix and amplitudes at one k");
  spec_opt(scatter, true);
  scatter->add_option("--k", cfg.k, "wavenumber")->required();
  method_opt(scatter, "ode");
  tol_opt(scatter);
  out_opt(scatter);

  auto* scan = app.add_subcommand("scan", "|R^l|, |R^r|, |T-1| over a k grid (CSV)");
  spec_opt(scan, true);
  scan->add_option("--k-min", cfg.k_min)->capture_default_str();
  scan->add_option("--k-max", cfg.k_max)->capture_default_str();
  scan->add_option("--k-steps", cfg.k_steps)->capture_default_str();
  method_opt(scan, "ode");
  tol_opt(scan);
  out_opt(scan);
  scan->add_flag("--gnuplot-script", cfg.gnuplot, "also write <out>.gp");
  scan->add_flag("--diagnostics", cfg.diagnostics,
                 "also write <out>.diagnostics.csv (two-level eigenvalues over the support)");

  auto* born = app.add_subcommand("born", "Born terms and partial sums at one k");
  spec_opt(born, true);
  born->add_option("--k", cfg.k, "wavenumber")->required();
  born->add_option("--order", cfg.order, "highest order")->capture_default_str();
  born->add_flag("--cross-check", cfg.cross_check, "compare orders 1 and 2 with closed forms");
  tol_opt(born);
  out_opt(born);

  auto* invis = app.add_subcommand("invisibility", "classify and verify invisibility modes");
  spec_opt(invis, true);
  invis->add_option("--jmax", cfg.jmax)->capture_default_str();
  cfg.method = "ode";
  invis->add_option("--method", cfg.method, "verification engine: ode|born2")->capture_default_str();
  invis->add_flag("--three-point", cfg.three_point, "fit over z, z/2, z/4");
  out_opt(invis);

  auto* invert = app.add_subcommand("invert", "reconstruct v(x) from first-order data (CSV)");
  spec_opt(invert, false);
  invert->add_option("--route", cfg.route, "m12|m21|rr|rl")->capture_default_str();
  invert->add_option("--data", cfg.data_name, "registered analytic data set");
  invert->add_option("--param", cfg.params, "key=value for --data (repeatable)");
  invert->add_option("--table", cfg.table_path, "CSV of k, re, im on a symmetric k grid");
  invert->add_option("--kind", cfg.kind, "data kind of --table: M12|M21|R_right|R_left");
  invert->add_option("--x-min", cfg.x_min);
  invert->add_option("--x-max", cfg.x_max);
  invert->add_option("--x-steps", cfg.x_steps)->capture_default_str();
  invert->add_option("--k-max", cfg.inv_k_max, "transform cutoff, 0 for automatic")
      ->capture_default_str();
  invert->add_flag("--no-taper", cfg.no_taper);
  invert->add_flag("--numeric", cfg.numeric, "ignore closed-form inverses");
  invert->add_flag("--roundtrip", cfg.roundtrip, "forward data from --spec, invert, compare");
  out_opt(invert);

  auto* validate = app.add_subcommand("validate", "run the acceptance checks");
  validate->add_option("--fixtures", cfg.fixtures, "directory of fixture spec files");
  validate->add_option("--criteria", cfg.criteria, "subset of checks, e.g. --criteria 1 2 9");
  out_opt(validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*scatter) {
      cfg.subcommand = "scatter";
      return run_scatter(cfg);
    }
    if (*scan) {
      cfg.subcommand = "scan";
      return run_scan(cfg);
    }
    if (*born) {
      cfg.subcommand = "born";
      return run_born(cfg);
    }
    if (*invis) {
      cfg.subcommand = "invisibility";
      return run_invisibility(cfg);
    }
    if (*invert) {
      cfg.subcommand = "invert";
      return run_invert(cfg);
    }
    cfg.subcommand = "validate";
    return run_validate(cfg);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCompute;
  }
}
