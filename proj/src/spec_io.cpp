#include "wavetm/spec_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace wavetm {

namespace {

using json = nlohmann::ordered_json;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void fail(ErrorCode code, const std::string& path, const std::string& msg) {
  throw Error(code, path + ": " + msg);
}

class Fields {
 public:
  Fields(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) fail(ErrorCode::ParseError, path_, "expected an object");
  }

  std::string at(const std::string& key) const { return path_ + "." + key; }
  bool has(const std::string& key) const { return obj_.contains(key); }
  const json& raw(const std::string& key) const { return obj_.at(key); }

  double real(const std::string& key) const {
    if (!has(key)) fail(ErrorCode::ParseError, at(key), "missing required field");
    return to_real(obj_.at(key), at(key));
  }
  double real(const std::string& key, double fallback) const {
    return has(key) ? real(key) : fallback;
  }
  cplx complex(const std::string& key) const {
    if (!has(key)) fail(ErrorCode::ParseError, at(key), "missing required field");
    return to_complex(obj_.at(key), at(key));
  }
  cplx complex(const std::string& key, cplx fallback) const {
    return has(key) ? complex(key) : fallback;
  }

  static double to_real(const json& v, const std::string& path) {
    if (!v.is_number()) fail(ErrorCode::ParseError, path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(ErrorCode::InvalidInput, path, "must be finite");
    return d;
  }
  static cplx to_complex(const json& v, const std::string& path) {
    if (v.is_number()) return {to_real(v, path), 0.0};
    if (v.is_array() && v.size() == 2)
      return {to_real(v[0], path + "[0]"), to_real(v[1], path + "[1]")};
    fail(ErrorCode::ParseError, path, "expected a number or [re, im] pair");
  }

 private:
  const json& obj_;
  std::string path_;
};

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

FamilyParams parse_params(Family f, const Fields& p, cplx z_default, bool z_optional) {
  auto z = [&](const std::string& key = "z") {
    return z_optional ? p.complex(key, z_default) : p.complex(key);
  };
  switch (f) {
    case Family::DeltaPair:
      return DeltaPair{p.complex("z1"), p.complex("z2"), p.real("a1"), p.real("a2")};
    case Family::RectangularBarrier:
      return RectangularBarrier{z(), p.real("L"), p.real("offset", 0.0)};
    case Family::TruncatedExponential:
      return TruncatedExponential{z(), p.real("K"), p.real("L")};
    case Family::LocallyPeriodicFourier: {
      LocallyPeriodicFourier lp{z(), p.real("K"), p.real("L"), {}};
      if (!p.has("terms")) fail(ErrorCode::ParseError, p.at("terms"), "missing required field");
      const json& terms = p.raw("terms");
      if (!terms.is_array()) fail(ErrorCode::ParseError, p.at("terms"), "expected an array");
      for (std::size_t i = 0; i < terms.size(); ++i) {
        const Fields t(terms[i], p.at("terms") + "[" + std::to_string(i) + "]");
        const double j = t.real("j");
        if (j != std::round(j) || std::abs(j) > 1e6)
          fail(ErrorCode::InvalidInput, t.at("j"), "must be an integer");
        lp.terms.push_back({static_cast<int>(j), t.complex("c")});
      }
      return lp;
    }
    case Family::GaussianDerivative:
      return GaussianDerivative{z(), p.real("L"), p.real("center", 0.0)};
    case Family::GaussianPlain:
      return GaussianPlain{z(), p.real("L"), p.real("center", 0.0)};
    case Family::GeometricSeriesPeriodic:
      return GeometricSeriesPeriodic{z(), p.complex("a"), p.complex("b"), p.real("K"),
                                     p.real("L")};
    case Family::InfiniteRangeAnalytic:
      return InfiniteRangeAnalytic{z(), p.real("K"), p.real("L")};
    case Family::SampledGrid: {
      SampledGrid g{p.real("x0"), p.real("dx"), {}};
      if (!p.has("values")) fail(ErrorCode::ParseError, p.at("values"), "missing required field");
      const json& vals = p.raw("values");
      if (!vals.is_array()) fail(ErrorCode::ParseError, p.at("values"), "expected an array");
      for (std::size_t i = 0; i < vals.size(); ++i)
        g.values.push_back(
            Fields::to_complex(vals[i], p.at("values") + "[" + std::to_string(i) + "]"));
      return g;
    }
  }
  fail(ErrorCode::InvalidInput, "family", "unsupported");
}

double center_of(const FamilyParams& p) {
  return std::visit(overloaded{
                        [](const GaussianDerivative& g) { return g.center; },
                        [](const GaussianPlain& g) { return g.center; },
                        [](const auto&) { return 0.0; },
                    },
                    p);
}

bool infinite_family(Family f) {
  return f == Family::GaussianDerivative || f == Family::GaussianPlain ||
         f == Family::InfiniteRangeAnalytic;
}

}  // namespace

PotentialSpec parse_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, "$", e.what());
  }
  const Fields top(doc, "$");
  if (!top.has("family")) fail(ErrorCode::ParseError, "family", "missing required field");
  if (!top.raw("family").is_string())
    fail(ErrorCode::ParseError, "family", "expected a string");
  const std::string fname = top.raw("family").get<std::string>();
  const auto family = family_from_string(fname);
  if (!family) fail(ErrorCode::InvalidInput, "family", "unknown family '" + fname + "'");

  Coupling coupling;
  if (top.has("coupling")) {
    const json& c = top.raw("coupling");
    if (c.is_string() && c.get<std::string>() == "constant") {
      coupling = Coupling::constant();
    } else if (c.is_object() && c.contains("k_squared")) {
      coupling = Coupling::k_squared(Fields::to_real(c.at("k_squared"), "coupling.k_squared"));
    } else {
      fail(ErrorCode::ParseError, "coupling", "expected \"constant\" or {\"k_squared\": c}");
    }
  }

  if (!top.has("params")) fail(ErrorCode::ParseError, "params", "missing required field");
  const Fields params(top.raw("params"), "params");
  const bool ksq = coupling.kind == Coupling::Kind::KSquared;
  FamilyParams fp = parse_params(*family, params, 1.0, ksq);

  double radius = 0.0;
  if (top.has("truncation_radius")) {
    radius = Fields::to_real(top.raw("truncation_radius"), "truncation_radius");
    if (radius <= 0.0) fail(ErrorCode::InvalidInput, "truncation_radius", "must be positive");
  }

  const json* support = top.has("support") ? &top.raw("support") : nullptr;
  if (support && support->is_array()) {
    if (support->size() != 2) fail(ErrorCode::ParseError, "support", "expected [x_min, x_max]");
    const double lo = Fields::to_real((*support)[0], "support[0]");
    const double hi = Fields::to_real((*support)[1], "support[1]");
    if (!(hi > lo)) fail(ErrorCode::InvalidInput, "support", "x_max must exceed x_min");
    if (infinite_family(*family) && radius == 0.0) {
      const double c = center_of(fp);
      radius = std::max(std::abs(lo - c), std::abs(hi - c));
    }
  } else if (support && !(support->is_string() && support->get<std::string>() == "infinite")) {
    fail(ErrorCode::ParseError, "support", "expected [x_min, x_max] or \"infinite\"");
  }

  try {
    PotentialSpec spec(std::move(fp), coupling, radius);
    if (support && support->is_array() && !infinite_family(*family)) {
      const Support s = spec.support();
      const double lo = (*support)[0].get<double>(), hi = (*support)[1].get<double>();
      const double tol = 1e-9 * std::max({1.0, std::abs(s.x_min), std::abs(s.x_max)});
      if (std::abs(lo - s.x_min) > tol || std::abs(hi - s.x_max) > tol) {
        std::ostringstream msg;
        msg << "[" << lo << ", " << hi << "] disagrees with the parameters, which give ["
            << s.x_min << ", " << s.x_max << "]";
        fail(ErrorCode::InvalidInput, "support", msg.str());
      }
    }
    return spec;
  } catch (const Error& e) {
    if (std::string(e.what()).rfind("support:", 0) == 0) throw;
    throw Error(e.code(), std::string("params: ") + e.what());
  }
}

PotentialSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read spec file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

std::string spec_to_json(const PotentialSpec& spec, int indent) {
  json doc;
  doc["family"] = to_string(spec.family());
  json p = json::object();
  std::visit(overloaded{
                 [&](const DeltaPair& d) {
                   p["z1"] = complex_json(d.z1);
                   p["z2"] = complex_json(d.z2);
                   p["a1"] = d.a1;
                   p["a2"] = d.a2;
                 },
                 [&](const RectangularBarrier& b) {
                   p["z"] = complex_json(b.z);
                   p["L"] = b.length;
                   p["offset"] = b.offset;
                 },
                 [&](const TruncatedExponential& e) {
                   p["z"] = complex_json(e.z);
                   p["K"] = e.K;
                   p["L"] = e.length;
                 },
                 [&](const LocallyPeriodicFourier& lp) {
                   p["z"] = complex_json(lp.z);
                   p["K"] = lp.K;
                   p["L"] = lp.length;
                   json terms = json::array();
                   for (const auto& t : lp.terms)
                     terms.push_back({{"j", t.j}, {"c", complex_json(t.c)}});
                   p["terms"] = terms;
                 },
                 [&](const GaussianDerivative& g) {
                   p["z"] = complex_json(g.z);
                   p["L"] = g.width;
                   p["center"] = g.center;
                 },
                 [&](const GaussianPlain& g) {
                   p["z"] = complex_json(g.z);
                   p["L"] = g.width;
                   p["center"] = g.center;
                 },
                 [&](const GeometricSeriesPeriodic& g) {
                   p["z"] = complex_json(g.z);
                   p["a"] = complex_json(g.a);
                   p["b"] = complex_json(g.b);
                   p["K"] = g.K;
                   p["L"] = g.length;
                 },
                 [&](const InfiniteRangeAnalytic& r) {
                   p["z"] = complex_json(r.z);
                   p["K"] = r.K;
                   p["L"] = r.width;
                 },
                 [&](const SampledGrid& s) {
                   p["x0"] = s.x0;
                   p["dx"] = s.dx;
                   json vals = json::array();
                   for (cplx v : s.values) vals.push_back(complex_json(v));
                   p["values"] = vals;
                 },
             },
             spec.params());
  doc["params"] = p;
  const Support s = spec.support();
  if (s.infinite) {
    doc["support"] = "infinite";
    doc["truncation_radius"] = spec.truncation_radius();
  } else {
    doc["support"] = json::array({s.x_min, s.x_max});
  }
  if (spec.coupling().kind == Coupling::Kind::KSquared)
    doc["coupling"] = {{"k_squared", spec.coupling().c}};
  else
    doc["coupling"] = "constant";
  return doc.dump(indent);
}

}  // namespace wavetm
