#include "rfk/io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rfk/error.hpp"

namespace rfk::io {

namespace {

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(fmt::format("missing JSON member \"{}\"", key));
  return j.at(key);
}

std::vector<double> doubles(const Json& j, const char* what) {
  if (!j.is_array()) throw ValidationError(fmt::format("{} must be an array", what));
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw ValidationError(fmt::format("{} must hold numbers", what));
    out.push_back(v.get<double>());
  }
  return out;
}

Json vec3(Vec3 v) { return Json::array({v.x, v.y, v.z}); }

std::string svg_header(const std::string& title) {
  return fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" viewBox=\"0 0 640 640\">\n"
      "<rect width=\"640\" height=\"640\" fill=\"white\"/>\n"
      "<text x=\"320\" y=\"28\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">{}</text>\n",
      title);
}

// Plot area [60, 600] x [50, 590].
constexpr double kLeft = 60.0, kRight = 600.0, kTop = 50.0, kBottom = 590.0;

struct Axes {
  double x0, x1, y0, y1;
  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kRight - kLeft); }
  double py(double y) const { return kBottom - (y - y0) / (y1 - y0) * (kBottom - kTop); }
};

std::string frame(const Axes& a, const std::string& xlabel, const std::string& ylabel) {
  std::string s = fmt::format(
      "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", kLeft, kTop,
      kRight - kLeft, kBottom - kTop);
  for (int i = 0; i <= 4; ++i) {
    const double x = a.x0 + (a.x1 - a.x0) * i / 4.0;
    const double y = a.y0 + (a.y1 - a.y0) * i / 4.0;
    s += fmt::format(
        "<text x=\"{:.2f}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" "
        "text-anchor=\"middle\">{:.3g}</text>\n",
        a.px(x), kBottom + 16, x);
    s += fmt::format(
        "<text x=\"{}\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"11\" "
        "text-anchor=\"end\">{:.3g}</text>\n",
        kLeft - 6, a.py(y) + 4, y);
  }
  s += fmt::format(
      "<text x=\"330\" y=\"624\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">{}</text>\n",
      xlabel);
  s += fmt::format(
      "<text x=\"16\" y=\"320\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
      "transform=\"rotate(-90 16 320)\">{}</text>\n",
      ylabel);
  return s;
}

}  // namespace

Json to_json(const BigInt& v) {
  if (fits_int64(v)) return v.convert_to<std::int64_t>();
  return v.str();
}

BigInt bigint_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    const bool digits = !s.empty() && std::all_of(s.begin() + (s[0] == '-' ? 1 : 0), s.end(),
                                                  [](char c) { return c >= '0' && c <= '9'; });
    if (!digits || s == "-") throw ValidationError("coefficient string is not an integer: " + s);
    return BigInt(s);
  }
  throw ValidationError("coefficients must be integers");
}

Json to_json(const CoefficientLaw& law) {
  Json j;
  j["decay"] = law.kind() == DecayKind::power_decay ? "power" : "none";
  if (law.kind() == DecayKind::power_decay) j["alpha"] = law.alpha();
  j["degree"] = law.degree();
  return j;
}

Json to_json(const TrigSeries& s) { return Json{{"a", s.a}, {"b", s.b}}; }
Json to_json(const PlaneCurve& c) { return Json{{"x", to_json(c.x)}, {"y", to_json(c.y)}}; }
Json to_json(const SpaceCurve& c) {
  return Json{{"x", to_json(c.x)}, {"y", to_json(c.y)}, {"z", to_json(c.z)}};
}

Json to_json(const CrossingDiagram& d) {
  Json gauss = Json::array();
  for (const auto& e : gauss_entries(d)) gauss.push_back(Json::array({e.label, e.over ? "O" : "U", e.sign}));
  Json j;
  j["n"] = d.size();
  j["gauss"] = std::move(gauss);
  j["params"] = d.params;
  return j;
}

Json to_json(const LaurentPolynomial& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(to_json(c));
  Json j;
  j["min_exp"] = p.min_exp();
  j["coeffs"] = std::move(coeffs);
  return j;
}

Json to_json(const SpherePolygon& poly) {
  Json v = Json::array();
  for (const auto& p : poly.vertices) v.push_back(vec3(p));
  return Json{{"vertices", std::move(v)}};
}

Json to_json(const KacRiceReport& r) {
  Json j;
  j["alpha"] = r.alpha;
  j["value"] = r.value;
  j["delta"] = r.delta;
  j["delta_half_value"] = r.delta_half_value;
  j["k_max"] = r.k_max;
  j["mode"] = r.mode == IntegrationMode::reduced_1d ? "1d" : "2d";
  j["kernel"] = to_string(r.kernel);
  j["converged"] = r.converged;
  return j;
}

Json to_json(const ModelSpec& m) {
  Json j;
  j["kind"] = to_string(m.kind);
  if (m.kind == ModelKind::fourier) {
    j["law"] = to_json(m.law);
  } else {
    j["n"] = m.sphere_n;
  }
  return j;
}

Json to_json(const KnotSample& s) {
  Json j;
  j["index"] = s.index;
  j["seed"] = s.seed;
  j["stream"] = s.stream;
  j["model"] = to_json(s.model);
  j["failed"] = s.failed;
  if (s.failed) {
    j["failure"] = s.failure;
    return j;
  }
  j["crossings_raw"] = s.crossings_raw;
  j["crossings_simplified"] = s.crossings_simplified;
  j["retries"] = s.retries;
  j["direction"] = vec3(s.direction);
  Json gauss = Json::array();
  for (const auto& e : s.gauss) gauss.push_back(Json::array({e.label, e.over ? "O" : "U", e.sign}));
  j["gauss"] = std::move(gauss);
  j["alexander"] = to_json(s.alexander);
  j["knot"] = s.knot.name;
  j["ambiguous"] = s.knot.ambiguous;
  j["matches"] = s.knot.matches;
  if (!s.roots.empty() || !s.roots_converged) {
    Json roots = Json::array();
    for (const auto& r : s.roots) roots.push_back(Json::array({r.real(), r.imag()}));
    j["roots"] = std::move(roots);
    j["roots_converged"] = s.roots_converged;
  }
  return j;
}

TrigSeries series_from_json(const Json& j) {
  auto a = doubles(member(j, "a"), "series \"a\"");
  auto b = doubles(member(j, "b"), "series \"b\"");
  if (a.size() != b.size()) throw ValidationError("series \"a\" and \"b\" differ in length");
  if (a.empty()) throw ValidationError("series must have degree >= 1");
  return TrigSeries(std::move(a), std::move(b));
}

PlaneCurve plane_curve_from_json(const Json& j) {
  PlaneCurve c{series_from_json(member(j, "x")), series_from_json(member(j, "y"))};
  if (c.x.degree() != c.y.degree()) throw ValidationError("curve coordinates differ in degree");
  return c;
}

SpaceCurve space_curve_from_json(const Json& j) {
  SpaceCurve c{series_from_json(member(j, "x")), series_from_json(member(j, "y")),
               series_from_json(member(j, "z"))};
  if (c.x.degree() != c.y.degree() || c.x.degree() != c.z.degree())
    throw ValidationError("curve coordinates differ in degree");
  return c;
}

CrossingDiagram diagram_from_json(const Json& j) {
  const Json& gauss = member(j, "gauss");
  if (!gauss.is_array()) throw ValidationError("\"gauss\" must be an array");
  std::vector<GaussEntry> code;
  for (const auto& e : gauss) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_string() ||
        !e[2].is_number_integer())
      throw ValidationError("Gauss entries must be [label, \"O\"|\"U\", sign]");
    const auto& ou = e[1].get_ref<const std::string&>();
    if (ou != "O" && ou != "U") throw ValidationError("Gauss entries must be marked \"O\" or \"U\"");
    code.push_back({e[0].get<int>(), ou == "O", e[2].get<int>()});
  }
  CrossingDiagram d = diagram_from_gauss(code);
  if (j.contains("n") && (!j["n"].is_number_integer() || j["n"].get<int>() != d.size()))
    throw ValidationError("\"n\" does not match the Gauss code");
  if (j.contains("params") && !j["params"].empty()) {
    auto params = doubles(j["params"], "\"params\"");
    if (params.size() != d.gauss.size()) throw ValidationError("\"params\" needs one value per passage");
    CrossingDiagram with = d;
    with.params = std::move(params);
    std::vector<int> seen(d.crossings.size(), 0);
    for (std::size_t k = 0; k < with.gauss.size(); ++k) {
      auto& c = with.crossings[static_cast<std::size_t>(with.gauss[k].crossing)];
      (seen[static_cast<std::size_t>(with.gauss[k].crossing)]++ == 0 ? c.s : c.t) = with.params[k];
    }
    return with;
  }
  return d;
}

LaurentPolynomial polynomial_from_json(const Json& j) {
  const Json& me = member(j, "min_exp");
  if (!me.is_number_integer()) throw ValidationError("\"min_exp\" must be an integer");
  const Json& cs = member(j, "coeffs");
  if (!cs.is_array()) throw ValidationError("\"coeffs\" must be an array");
  std::vector<BigInt> c;
  for (const auto& v : cs) c.push_back(bigint_from_json(v));
  return LaurentPolynomial(me.get<int>(), std::move(c));
}

SpherePolygon polygon_from_json(const Json& j) {
  const Json& vs = member(j, "vertices");
  if (!vs.is_array()) throw ValidationError("\"vertices\" must be an array");
  SpherePolygon p;
  for (const auto& v : vs) {
    const auto x = doubles(v, "vertex");
    if (x.size() != 3) throw ValidationError("vertices must have three coordinates");
    p.vertices.push_back({x[0], x[1], x[2]});
  }
  validate(p);
  return p;
}

std::string format_double(double x) { return fmt::format("{}", x); }

std::string census_csv(const CensusResult& c) {
  std::string s = "name,count\n";
  for (const auto& r : c.rows) s += fmt::format("{},{}\n", r.name, r.count);
  return s;
}

std::string roots_csv(const std::vector<std::complex<double>>& roots) {
  std::string s = "re,im\n";
  for (const auto& r : roots) s += fmt::format("{},{}\n", r.real(), r.imag());
  return s;
}

std::string profiles_csv(const std::vector<CoefficientProfile>& ps) {
  std::string s = "sample,exponent,log_abs_coeff\n";
  for (const auto& p : ps)
    for (const auto& [e, v] : p.points) s += fmt::format("{},{},{}\n", p.sample, e, v);
  return s;
}

std::string tails_csv(const TailResult& t) {
  std::string s = "N,p,lo,hi\n";
  for (const auto& r : t.rows) s += fmt::format("{},{},{},{}\n", r.threshold, r.p, r.lo, r.hi);
  return s;
}

std::string samples_jsonl(const std::vector<KnotSample>& samples) {
  std::string s;
  for (const auto& k : samples) {
    s += to_json(k).dump();
    s += '\n';
  }
  return s;
}

std::string roots_svg(const std::vector<std::complex<double>>& roots, const std::string& title) {
  double r = 1.5;
  for (const auto& z : roots) r = std::max({r, std::abs(z.real()), std::abs(z.imag())});
  r *= 1.05;
  const Axes a{-r, r, -r, r};
  std::string s = svg_header(title) + frame(a, "Re", "Im");
  s += fmt::format("<line x1=\"{}\" y1=\"{:.2f}\" x2=\"{}\" y2=\"{:.2f}\" stroke=\"#bbb\"/>\n", kLeft, a.py(0),
                   kRight, a.py(0));
  s += fmt::format("<line x1=\"{:.2f}\" y1=\"{}\" x2=\"{:.2f}\" y2=\"{}\" stroke=\"#bbb\"/>\n", a.px(0), kTop,
                   a.px(0), kBottom);
  s += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"{:.2f}\" fill=\"none\" stroke=\"#888\" "
                   "stroke-dasharray=\"4 3\"/>\n",
                   a.px(0), a.py(0), a.px(1) - a.px(0));
  for (const auto& z : roots)
    s += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"2\" fill=\"#1f4e9c\"/>\n", a.px(z.real()),
                     a.py(z.imag()));
  return s + "</svg>\n";
}

std::string profiles_svg(const std::vector<CoefficientProfile>& ps, const std::string& title) {
  static constexpr const char* kColors[] = {"#1f4e9c", "#c0392b", "#27833a", "#8e44ad", "#d68910", "#117a8b"};
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  bool any = false;
  for (const auto& p : ps)
    for (const auto& [e, v] : p.points) {
      if (!any) {
        x0 = x1 = e;
        y0 = y1 = v;
        any = true;
      }
      x0 = std::min<double>(x0, e);
      x1 = std::max<double>(x1, e);
      y0 = std::min(y0, v);
      y1 = std::max(y1, v);
    }
  if (x1 - x0 < 1) x1 = x0 + 1;
  if (y1 - y0 < 1) y1 = y0 + 1;
  const Axes a{x0, x1, y0, y1 + 0.05 * (y1 - y0)};
  std::string s = svg_header(title) + frame(a, "exponent", "log |coefficient|");
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (ps[i].points.empty()) continue;
    s += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.2\" points=\"", kColors[i % 6]);
    for (const auto& [e, v] : ps[i].points) s += fmt::format("{:.2f},{:.2f} ", a.px(e), a.py(v));
    s += "\"/>\n";
  }
  return s + "</svg>\n";
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("cannot write " + path.string());
}

Json read_json(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace rfk::io
