// Command-line front end: sampling, geometry, Kac-Rice integrals, Alexander polynomials and
// the batch experiments.

#include <fmt/format.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rfk/curve_geometry.hpp"
#include "rfk/error.hpp"
#include "rfk/experiments.hpp"
#include "rfk/io.hpp"
#include "rfk/kac_rice.hpp"
#include "rfk/knot_algebra.hpp"
#include "rfk/parallel.hpp"
#include "rfk/roots.hpp"
#include "rfk/sphere_model.hpp"

namespace fs = std::filesystem;
using rfk::io::Json;

namespace {

struct Common {
  std::optional<std::uint64_t> seed;
  int jobs = 0;
  std::string config;
  std::string out;
};

struct LawArgs {
  std::string decay = "power";
  double alpha = 2.0;
  int degree = 100;

  rfk::CoefficientLaw law() const {
    if (decay == "power") return rfk::CoefficientLaw::power_decay(alpha, degree);
    if (decay == "none") return rfk::CoefficientLaw::no_decay(degree);
    throw rfk::ValidationError("--decay must be power or none");
  }
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "Master seed (drawn from entropy and printed when omitted)");
  sub->add_option("--jobs", c.jobs, "Worker threads (default: FOURIER_KNOTS_JOBS or logical cores)");
  sub->add_option("--config", c.config, "Flat key=value file of option defaults");
}

void add_law(CLI::App* sub, LawArgs& l) {
  sub->add_option("--decay", l.decay, "Coefficient law: power or none")->capture_default_str();
  sub->add_option("--alpha", l.alpha, "Decay exponent: sd(a_k) = k^-alpha")->capture_default_str();
  sub->add_option("--degree", l.degree, "Truncation degree N")->capture_default_str();
}

std::uint64_t resolve_seed(const Common& c) {
  if (c.seed) return *c.seed;
  std::random_device rd;
  const std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  std::fprintf(stderr, "seed: %llu\n", static_cast<unsigned long long>(s));
  return s;
}

int resolve_jobs(const Common& c) {
  if (c.jobs < 0) throw rfk::ValidationError("--jobs must be positive");
  return c.jobs > 0 ? c.jobs : rfk::default_jobs();
}

rfk::Vec3 parse_vec3(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw rfk::ValidationError("bad vector component: " + item);
    }
  }
  if (v.size() != 3) throw rfk::ValidationError("vectors are given as x,y,z");
  const rfk::Vec3 d{v[0], v[1], v[2]};
  if (!(rfk::norm(d) > 0.0)) throw rfk::ValidationError("direction must be nonzero");
  return rfk::normalized(d);
}

template <class T>
std::vector<T> parse_list(const std::string& s, const char* what) {
  std::vector<T> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream is(item);
    T v{};
    if (!(is >> v) || !(is >> std::ws).eof()) throw rfk::ValidationError(fmt::format("bad {} entry: {}", what, item));
    out.push_back(v);
  }
  if (out.empty()) throw rfk::ValidationError(fmt::format("{} must not be empty", what));
  return out;
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    rfk::io::write_text(out, text);
  }
}

// Reads the flat key=value config named by --config and turns it into "--key=value" tokens.
std::vector<std::string> config_tokens(const std::vector<std::string>& argv) {
  std::string path;
  for (std::size_t i = 0; i < argv.size(); ++i) {
    if (argv[i] == "--config" && i + 1 < argv.size()) path = argv[i + 1];
    if (argv[i].rfind("--config=", 0) == 0) path = argv[i].substr(9);
  }
  if (path.empty()) return {};
  std::vector<std::string> tokens;
  std::istringstream in(rfk::io::read_text(path));
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw rfk::ValidationError(fmt::format("{}:{}: expected key=value", path, lineno));
    const auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || key == "config") throw rfk::ValidationError(fmt::format("{}:{}: bad key", path, lineno));
    tokens.push_back("--" + key + "=" + value);
  }
  return tokens;
}

class OutputDir {
 public:
  explicit OutputDir(fs::path root) : root_(std::move(root)) {}
  void write(const std::string& name, const std::string& text) {
    rfk::io::write_text(root_ / name, text);
    files_.push_back(name);
  }
  const std::vector<std::string>& files() const { return files_; }
  const fs::path& root() const { return root_; }

 private:
  fs::path root_;
  std::vector<std::string> files_;
};

Json failure_list(const std::vector<rfk::KnotSample>& samples) {
  Json f = Json::array();
  for (const auto& s : samples)
    if (s.failed) f.push_back(Json{{"index", s.index}, {"reason", s.failure}});
  return f;
}

Json root_summary_json(const rfk::RootSummary& s) {
  Json j;
  j["polynomials"] = s.polynomials;
  j["nontrivial"] = s.nontrivial;
  j["positive_root_sum"] = s.positive_root_sum;
  j["positive_root_sum_fraction"] = s.positive_root_sum_fraction;
  j["real_roots"] = s.real_roots;
  j["negative_real_roots"] = s.negative_real_roots;
  j["all_real_roots_positive"] = s.all_real_roots_positive;
  j["min_real_root"] = s.min_real_root ? Json(*s.min_real_root) : Json(nullptr);
  std::optional<double> min_pos;
  for (const auto& p : s.per_polynomial)
    if (p.min_positive_real && (!min_pos || *p.min_positive_real < *min_pos)) min_pos = p.min_positive_real;
  j["min_positive_real_root"] = min_pos ? Json(*min_pos) : Json(nullptr);
  j["max_span"] = s.max_span;
  j["max_half_span"] = s.max_half_span;
  j["pooled_roots"] = s.pooled_roots.size();
  j["median_unit_distance"] = s.median_unit_distance;
  Json hist = Json::array();
  for (std::size_t i = 0; i < s.unit_distance_edges.size(); ++i)
    hist.push_back(Json{{"from", s.unit_distance_edges[i]}, {"count", s.unit_distance_histogram[i]}});
  j["unit_distance_histogram"] = std::move(hist);
  return j;
}

// ---------------------------------------------------------------------------------------

struct GenerateArgs {
  std::string model = "fourier";
  LawArgs law;
  int n = 100;
  std::int64_t samples = 1;
  std::uint64_t stream = 0;
};

int cmd_generate(const GenerateArgs& a, const Common& c) {
  if (a.samples < 1) throw rfk::ValidationError("--samples must be at least 1");
  if (a.model != "fourier" && a.model != "sphere") throw rfk::ValidationError("--model must be fourier or sphere");
  std::optional<rfk::CoefficientLaw> law;
  if (a.model == "fourier") law = a.law.law();
  if (a.model == "sphere" && a.n < 3) throw rfk::ValidationError("--n must be at least 3");
  const std::uint64_t seed = resolve_seed(c);
  std::string lines;
  for (std::int64_t i = 0; i < a.samples; ++i) {
    const std::uint64_t stream = a.stream + static_cast<std::uint64_t>(i);
    Json j;
    std::string name;
    if (law) {
      j = rfk::io::to_json(rfk::sample_space_curve(*law, seed, stream));
      j["law"] = rfk::io::to_json(*law);
      name = fmt::format("curve_{:06}.json", stream);
    } else {
      j = rfk::io::to_json(rfk::sample_sphere_polygon(a.n, seed, stream));
      j["n"] = a.n;
      name = fmt::format("polygon_{:06}.json", stream);
    }
    j["seed"] = seed;
    j["stream"] = stream;
    if (c.out.empty()) {
      lines += j.dump() + "\n";
    } else {
      rfk::io::write_text(fs::path(c.out) / name, j.dump() + "\n");
    }
  }
  if (c.out.empty()) emit("", lines);
  else std::fprintf(stderr, "wrote %lld file(s) to %s\n", static_cast<long long>(a.samples), c.out.c_str());
  return 0;
}

// ---------------------------------------------------------------------------------------

struct CurveSource {
  std::string curve;  // JSON file
  LawArgs law;
  std::uint64_t stream = 0;

  rfk::SpaceCurve space(std::uint64_t seed) const {
    if (!curve.empty()) return rfk::io::space_curve_from_json(rfk::io::read_json(curve));
    return rfk::sample_space_curve(law.law(), seed, stream);
  }
  rfk::PlaneCurve plane(std::uint64_t seed) const {
    if (!curve.empty()) return rfk::io::plane_curve_from_json(rfk::io::read_json(curve));
    return rfk::sample_plane_curve(law.law(), seed, stream);
  }
};

void add_curve_source(CLI::App* sub, CurveSource& s) {
  sub->add_option("--curve", s.curve, "Curve JSON file (otherwise a curve is sampled)");
  add_law(sub, s.law);
  sub->add_option("--stream", s.stream, "Sample stream of the sampled curve");
}

struct IntersectionArgs {
  CurveSource source;
  std::int64_t samples = 0;
  int grid = 0;
};

int cmd_intersections(const IntersectionArgs& a, const Common& c) {
  const std::uint64_t seed = resolve_seed(c);
  rfk::IntersectionOptions opts;
  opts.grid = a.grid;
  if (a.grid < 0) throw rfk::ValidationError("--grid must be non-negative");
  Json j;
  if (a.samples > 0) {
    if (!a.source.curve.empty()) throw rfk::ValidationError("--samples samples curves; drop --curve");
    const auto law = a.source.law.law();
    const auto mc = rfk::count_self_intersections_mc(law, a.samples, seed, opts, resolve_jobs(c));
    j["law"] = rfk::io::to_json(law);
    j["samples"] = mc.samples;
    j["mean"] = mc.mean;
    j["standard_error"] = mc.standard_error;
    j["retries"] = mc.retries;
  } else {
    const auto pts = rfk::find_self_intersections(a.source.plane(seed), opts);
    Json list = Json::array();
    for (const auto& p : pts) list.push_back(Json{{"s", p.s}, {"t", p.t}, {"point", {p.point.x, p.point.y}}});
    j["count"] = pts.size();
    j["intersections"] = std::move(list);
  }
  emit(c.out, j.dump() + "\n");
  return 0;
}

// ---------------------------------------------------------------------------------------

struct KacRiceArgs {
  double alpha = 2.0;
  std::string mode = "1d";
  std::string kernel = "closed_form";
  std::string regularizer = "linear";
  std::int64_t k_max = 0;
  double delta = 1e-3;
  double tol = 1e-4;
};

int cmd_kacrice(const KacRiceArgs& a, const Common& c) {
  rfk::KacRiceProblem p;
  p.alpha = a.alpha;
  if (a.mode == "1d") p.mode = rfk::IntegrationMode::reduced_1d;
  else if (a.mode == "2d") p.mode = rfk::IntegrationMode::tensor_2d;
  else throw rfk::ValidationError("--mode must be 1d or 2d");
  if (a.kernel == "closed_form") p.kernel = rfk::KernelMode::closed_form;
  else if (a.kernel == "series") p.kernel = rfk::KernelMode::series;
  else if (a.kernel == "quadratic") p.kernel = rfk::KernelMode::quadratic;
  else throw rfk::ValidationError("--kernel must be closed_form, series or quadratic");
  if (a.regularizer == "linear") p.regularizer = rfk::Regularizer::g_linear;
  else if (a.regularizer == "sin") p.regularizer = rfk::Regularizer::g_sin;
  else throw rfk::ValidationError("--regularizer must be linear or sin");
  p.k_max = a.k_max;
  p.delta = a.delta;
  p.tol = a.tol;
  resolve_seed(c);  // the quadrature is deterministic; the seed is only reported
  const rfk::KacRiceReport r = rfk::evaluate(p);
  emit(c.out, rfk::io::to_json(r).dump() + "\n");
  if (!r.converged) {
    std::fprintf(stderr,
                 "kacrice: not converged: value %.9g at delta %.3g but %.9g at delta/2 (tol %.3g)\n",
                 r.value, r.delta, r.delta_half_value, p.tol);
    return 3;
  }
  return 0;
}

// ---------------------------------------------------------------------------------------

struct DiagramArgs {
  CurveSource source;
  std::string polygon;
  std::string direction = "0,0,1";
  bool simplify = false;
};

rfk::CrossingDiagram diagram_of(const DiagramArgs& a, std::uint64_t seed) {
  const rfk::Vec3 d = parse_vec3(a.direction);
  rfk::CrossingDiagram diagram;
  if (!a.polygon.empty()) {
    const auto poly = rfk::io::polygon_from_json(rfk::io::read_json(a.polygon));
    diagram = rfk::polygon_generic_diagram(poly, d, seed).diagram;
  } else {
    const auto curve = a.source.space(seed);
    diagram = rfk::build_generic_diagram(curve, d, seed).diagram;
  }
  return a.simplify ? rfk::simplify_diagram(diagram) : diagram;
}

void add_diagram_source(CLI::App* sub, DiagramArgs& a) {
  add_curve_source(sub, a.source);
  sub->add_option("--polygon", a.polygon, "Polygon JSON file instead of a curve");
  sub->add_option("--direction", a.direction, "Projection direction x,y,z")->capture_default_str();
}

int cmd_diagram(const DiagramArgs& a, const Common& c) {
  emit(c.out, rfk::io::to_json(diagram_of(a, resolve_seed(c))).dump() + "\n");
  return 0;
}

// ---------------------------------------------------------------------------------------

struct AlexanderArgs {
  DiagramArgs diagram;
  std::string diagram_file;
  std::string knot;
  std::string method = "fast";
  bool no_simplify = false;
};

rfk::LaurentPolynomial alexander_of(const AlexanderArgs& a, const Common& c, std::string* label) {
  if (!a.knot.empty()) {
    for (const auto& e : rfk::knot_table())
      if (e.name == a.knot) {
        if (label) *label = e.name;
        return e.alexander;
      }
    throw rfk::ValidationError("knot " + a.knot + " is not in the table");
  }
  rfk::AlexanderOptions opts;
  if (a.method == "fast") opts.method = rfk::AlexanderMethod::fast;
  else if (a.method == "exact") opts.method = rfk::AlexanderMethod::exact;
  else throw rfk::ValidationError("--method must be fast or exact");
  opts.simplify = !a.no_simplify;
  const rfk::CrossingDiagram d = a.diagram_file.empty()
                                     ? diagram_of(a.diagram, resolve_seed(c))
                                     : rfk::io::diagram_from_json(rfk::io::read_json(a.diagram_file));
  return rfk::alexander_polynomial(d, opts);
}

void add_alexander_source(CLI::App* sub, AlexanderArgs& a) {
  add_diagram_source(sub, a.diagram);
  sub->add_option("--diagram", a.diagram_file, "Diagram JSON file");
  sub->add_option("--knot", a.knot, "Table knot name, e.g. 3_1");
  sub->add_option("--method", a.method, "Determinant method: fast or exact")->capture_default_str();
  sub->add_flag("--no-simplify", a.no_simplify, "Skip Reidemeister I/II simplification");
}

int cmd_alexander(const AlexanderArgs& a, const Common& c) {
  std::string label;
  const auto p = alexander_of(a, c, &label);
  const auto id = rfk::identify_knot(p);
  Json j = rfk::io::to_json(p);
  j["text"] = p.to_string();
  j["knot"] = id.name;
  j["matches"] = id.matches;
  emit(c.out, j.dump() + "\n");
  return 0;
}

// ---------------------------------------------------------------------------------------

struct RootsArgs {
  AlexanderArgs source;
  std::string polynomial;
  std::string coeffs;
  int min_exp = 0;
};

int cmd_roots(const RootsArgs& a, const Common& c) {
  rfk::LaurentPolynomial p;
  if (!a.polynomial.empty()) {
    p = rfk::io::polynomial_from_json(rfk::io::read_json(a.polynomial));
  } else if (!a.coeffs.empty()) {
    std::vector<rfk::BigInt> cs;
    for (const auto& s : parse_list<std::string>(a.coeffs, "--coeffs")) cs.push_back(rfk::io::bigint_from_json(Json(s)));
    p = rfk::LaurentPolynomial(a.min_exp, std::move(cs));
  } else {
    p = alexander_of(a.source, c, nullptr);
  }
  if (p.is_zero()) throw rfk::ValidationError("the zero polynomial has no root set");
  emit(c.out, rfk::io::roots_csv(rfk::laurent_roots(p).roots));
  return 0;
}

// ---------------------------------------------------------------------------------------

struct ExperimentArgs {
  std::string model = "fourier";
  LawArgs law;
  int n = 100;
  std::int64_t samples = 0;  // 0: per-experiment default
  std::string direction = "0,0,1";
  bool no_simplify = false;
  int bound = 20;
  std::string thresholds = "1,2,3,4,5,6,8,10,15,20,30,50";
  std::string sphere_ns = "100,120,140,160,180";
};

rfk::ExperimentSpec experiment_spec(const ExperimentArgs& a, std::int64_t default_samples, std::uint64_t seed,
                                    int jobs) {
  rfk::ExperimentSpec s;
  if (a.model == "fourier") s.model = rfk::ModelSpec::fourier(a.law.law());
  else if (a.model == "sphere") s.model = rfk::ModelSpec::sphere(a.n);
  else throw rfk::ValidationError("--model must be fourier or sphere");
  s.samples = a.samples > 0 ? a.samples : default_samples;
  if (a.samples < 0) throw rfk::ValidationError("--samples must be at least 1");
  s.seed = seed;
  s.projection = parse_vec3(a.direction);
  s.jobs = jobs;
  s.simplify = !a.no_simplify;
  rfk::validate(s);
  return s;
}

Json spec_json(const rfk::ExperimentSpec& s) {
  Json j;
  j["model"] = rfk::io::to_json(s.model);
  j["samples"] = s.samples;
  j["seed"] = s.seed;
  j["projection"] = {s.projection.x, s.projection.y, s.projection.z};
  j["simplify"] = s.simplify;
  return j;
}

void write_census(OutputDir& dir, const rfk::CensusResult& r) {
  dir.write("census.csv", rfk::io::census_csv(r));
  dir.write("samples.jsonl", rfk::io::samples_jsonl(r.samples));
}

int finish(OutputDir& dir, Json manifest, std::int64_t successes) {
  manifest["successes"] = successes;
  manifest["files"] = dir.files();
  rfk::io::write_text(dir.root() / "manifest.json", manifest.dump(2) + "\n");
  std::fprintf(stderr, "wrote %zu file(s) and manifest.json to %s\n", dir.files().size(), dir.root().c_str());
  return successes > 0 ? 0 : 3;
}

int cmd_experiment(const std::string& kind, const ExperimentArgs& a, const Common& c) {
  const std::uint64_t seed = resolve_seed(c);
  const int jobs = resolve_jobs(c);
  OutputDir dir(c.out.empty() ? fs::path("fourier_knots_out") / kind : fs::path(c.out));
  Json manifest;
  manifest["experiment"] = kind;

  if (kind == "census") {
    const auto spec = experiment_spec(a, 100, seed, jobs);
    const auto r = rfk::run_census(spec);
    write_census(dir, r);
    manifest["spec"] = spec_json(spec);
    manifest["failures"] = failure_list(r.samples);
    emit("", rfk::io::census_csv(r));
    return finish(dir, manifest, r.successes());
  }
  if (kind == "roots") {
    const auto spec = experiment_spec(a, 600, seed, jobs);
    const auto r = rfk::run_root_cloud(spec);
    dir.write("roots.csv", rfk::io::roots_csv(r.summary.pooled_roots));
    dir.write("roots.svg", rfk::io::roots_svg(r.summary.pooled_roots, "Alexander polynomial roots"));
    dir.write("samples.jsonl", rfk::io::samples_jsonl(r.samples));
    Json summary = root_summary_json(r.summary);
    summary["unconverged"] = r.unconverged;
    dir.write("summary.json", summary.dump(2) + "\n");
    manifest["spec"] = spec_json(spec);
    manifest["failures"] = failure_list(r.samples);
    emit("", summary.dump(2) + "\n");
    return finish(dir, manifest, static_cast<std::int64_t>(r.samples.size()) - r.failures);
  }
  if (kind == "profiles") {
    const auto spec = experiment_spec(a, 4, seed, jobs);
    const auto r = rfk::run_coeff_profiles(spec);
    dir.write("profiles.csv", rfk::io::profiles_csv(r.profiles));
    dir.write("profiles.svg", rfk::io::profiles_svg(r.profiles, "log |coefficient| by exponent"));
    dir.write("samples.jsonl", rfk::io::samples_jsonl(r.samples));
    manifest["spec"] = spec_json(spec);
    manifest["failures"] = failure_list(r.samples);
    return finish(dir, manifest, static_cast<std::int64_t>(r.profiles.size()));
  }
  if (kind == "reciprocal") {
    const std::int64_t samples = a.samples > 0 ? a.samples : 600;
    const auto r = rfk::run_reciprocal_baseline(a.law.degree, a.bound, samples, seed, jobs);
    dir.write("roots.csv", rfk::io::roots_csv(r.pooled_roots));
    dir.write("roots.svg", rfk::io::roots_svg(r.pooled_roots, "Roots of random reciprocal polynomials"));
    std::string polys;
    for (const auto& p : r.polynomials) polys += rfk::io::to_json(p).dump() + "\n";
    dir.write("polynomials.jsonl", polys);
    Json summary;
    summary["polynomials"] = r.polynomials.size();
    summary["pooled_roots"] = r.pooled_roots.size();
    summary["median_unit_distance"] = r.median_unit_distance;
    summary["reciprocal_closure_error"] = r.reciprocal_closure_error;
    dir.write("summary.json", summary.dump(2) + "\n");
    manifest["spec"] = Json{{"degree", a.law.degree}, {"bound", a.bound}, {"samples", samples}, {"seed", seed}};
    manifest["failures"] = Json::array();
    emit("", summary.dump(2) + "\n");
    return finish(dir, manifest, samples);
  }
  if (kind == "tails") {
    if (a.model != "fourier") throw rfk::ValidationError("tails are estimated for the Fourier model");
    const std::int64_t samples = a.samples > 0 ? a.samples : 1000;
    const auto law = a.law.law();
    const auto r = rfk::run_tail_estimate(law, samples, parse_list<int>(a.thresholds, "--thresholds"), seed, jobs);
    dir.write("tails.csv", rfk::io::tails_csv(r));
    std::string counts = "sample,crossings\n";
    for (std::size_t i = 0; i < r.crossings.size(); ++i) counts += fmt::format("{},{}\n", i, r.crossings[i]);
    dir.write("crossings.csv", counts);
    manifest["spec"] = Json{{"law", rfk::io::to_json(law)}, {"samples", samples}, {"seed", seed}};
    manifest["mean_crossings"] = r.mean;
    manifest["failures"] = r.failures;
    emit("", rfk::io::tails_csv(r));
    return finish(dir, manifest, static_cast<std::int64_t>(r.crossings.size()));
  }
  if (kind == "universality") {
    const auto spec = experiment_spec(a, 100, seed, jobs);
    const auto ns = parse_list<int>(a.sphere_ns, "--sphere-n");
    const auto r = rfk::run_universality_compare(spec, ns, spec.samples);
    std::int64_t ok = 0;
    Json failures = Json::object();
    const auto report = [&](const std::string& name, const rfk::ModelReport& m) {
      dir.write(name + "/census.csv", rfk::io::census_csv(m.census));
      dir.write(name + "/profiles.csv", rfk::io::profiles_csv(m.profiles));
      dir.write(name + "/profiles.svg", rfk::io::profiles_svg(m.profiles, name + ": log |coefficient|"));
      dir.write(name + "/samples.jsonl", rfk::io::samples_jsonl(m.census.samples));
      failures[name] = failure_list(m.census.samples);
      ok += m.census.successes();
    };
    report("fourier", r.fourier);
    for (std::size_t i = 0; i < ns.size(); ++i) report(fmt::format("sphere_{}", ns[i]), r.spheres[i]);
    manifest["spec"] = spec_json(spec);
    manifest["sphere_n"] = ns;
    manifest["failures"] = std::move(failures);
    return finish(dir, manifest, ok);
  }
  throw rfk::ValidationError("unknown experiment " + kind);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random Fourier knots: sampling, crossing geometry, Kac-Rice integrals and Alexander polynomials",
               "fourier_knots"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  Common common;

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Sample Fourier curves or sphere polygons as JSON");
  add_common(g, common);
  g->add_option("--model", gen.model, "fourier or sphere")->capture_default_str();
  add_law(g, gen.law);
  g->add_option("--n", gen.n, "Sphere polygon vertices")->capture_default_str();
  g->add_option("--samples", gen.samples, "Number of samples")->capture_default_str();
  g->add_option("--stream", gen.stream, "First sample stream")->capture_default_str();
  g->add_option("--out", common.out, "Output directory (default: JSON lines on stdout)");

  IntersectionArgs inter;
  auto* in = app.add_subcommand("intersections", "Self-intersections of a plane curve, or their Monte Carlo mean");
  add_common(in, common);
  add_curve_source(in, inter.source);
  in->add_option("--samples", inter.samples, "Monte Carlo sample count (0: one curve)");
  in->add_option("--grid", inter.grid, "Initial polyline resolution (0: automatic)");
  in->add_option("--out", common.out, "Output file (default: stdout)");

  KacRiceArgs kr;
  auto* k = app.add_subcommand("kacrice", "Expected number of self-intersections by the Kac-Rice integral");
  add_common(k, common);
  k->add_option("--alpha", kr.alpha, "Decay exponent (> 3/2)")->capture_default_str();
  k->add_option("--mode", kr.mode, "Quadrature: 1d or 2d")->capture_default_str();
  k->add_option("--kernel", kr.kernel, "closed_form, series or quadratic")->capture_default_str();
  k->add_option("--regularizer", kr.regularizer, "linear or sin")->capture_default_str();
  k->add_option("--kmax", kr.k_max, "Series truncation (series kernel; 0: from the tail bound)");
  k->add_option("--delta", kr.delta, "Half-width of the excluded diagonal strip")->capture_default_str();
  k->add_option("--tol", kr.tol, "Tolerance of the delta-halving check")->capture_default_str();
  k->add_option("--out", common.out, "Output file (default: stdout)");

  DiagramArgs dia;
  auto* d = app.add_subcommand("diagram", "Crossing diagram (signed Gauss code) of a projection");
  add_common(d, common);
  add_diagram_source(d, dia);
  d->add_flag("--simplify", dia.simplify, "Apply Reidemeister I/II simplification");
  d->add_option("--out", common.out, "Output file (default: stdout)");

  AlexanderArgs alex;
  auto* al = app.add_subcommand("alexander", "Alexander polynomial and table lookup");
  add_common(al, common);
  add_alexander_source(al, alex);
  al->add_option("--out", common.out, "Output file (default: stdout)");

  RootsArgs roots;
  auto* ro = app.add_subcommand("roots", "Roots of a Laurent polynomial as re,im CSV");
  add_common(ro, common);
  add_alexander_source(ro, roots.source);
  ro->add_option("--polynomial", roots.polynomial, "Polynomial JSON file");
  ro->add_option("--coeffs", roots.coeffs, "Comma-separated ascending coefficients");
  ro->add_option("--min-exp", roots.min_exp, "Exponent of the first coefficient");
  ro->add_option("--out", common.out, "Output file (default: stdout)");

  ExperimentArgs ex;
  std::string kind;
  auto* e = app.add_subcommand("experiment", "Batch experiments writing CSV, JSON lines, SVG and a manifest");
  e->add_option("kind", kind, "census, roots, profiles, reciprocal, tails or universality")
      ->required()
      ->check(CLI::IsMember({"census", "roots", "profiles", "reciprocal", "tails", "universality"}));
  add_common(e, common);
  e->add_option("--model", ex.model, "fourier or sphere")->capture_default_str();
  add_law(e, ex.law);
  e->add_option("--n", ex.n, "Sphere polygon vertices")->capture_default_str();
  e->add_option("--samples", ex.samples, "Sample count (default depends on the experiment)");
  e->add_option("--direction", ex.direction, "Projection direction x,y,z")->capture_default_str();
  e->add_flag("--no-simplify", ex.no_simplify, "Skip diagram simplification");
  e->add_option("--bound", ex.bound, "Coefficient bound of the reciprocal baseline")->capture_default_str();
  e->add_option("--thresholds", ex.thresholds, "Crossing thresholds of the tail estimate")->capture_default_str();
  e->add_option("--sphere-n", ex.sphere_ns, "Sphere polygon sizes for the universality comparison")
      ->capture_default_str();
  e->add_option("--out", common.out, "Output directory (default: fourier_knots_out/<kind>)");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    const auto extra = config_tokens(args);
    // Config values go right after the subcommand tokens; later command-line flags win.
    std::size_t at = args.empty() ? 0 : 1;
    if (!args.empty() && args[0] == "experiment" && args.size() > 1 && args[1].rfind("-", 0) != 0) at = 2;
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(std::min(at, args.size())), extra.begin(), extra.end());
    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::ParseError& err) {
      const int code = app.exit(err);
      return code == 0 ? 0 : 2;
    }
    if (g->parsed()) return cmd_generate(gen, common);
    if (in->parsed()) return cmd_intersections(inter, common);
    if (k->parsed()) return cmd_kacrice(kr, common);
    if (d->parsed()) return cmd_diagram(dia, common);
    if (al->parsed()) return cmd_alexander(alex, common);
    if (ro->parsed()) return cmd_roots(roots, common);
    if (e->parsed()) return cmd_experiment(kind, ex, common);
    return 2;
  } catch (const rfk::ValidationError& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 2;
  } catch (const rfk::InvalidDiagram& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 2;
  } catch (const nlohmann::json::exception& err) {
    std::fprintf(stderr, "error: malformed input: %s\n", err.what());
    return 2;
  } catch (const rfk::NumericalError& err) {
    std::fprintf(stderr, "numerical failure: %s\n", err.what());
    return 3;
  } catch (const rfk::IoError& err) {
    std::fprintf(stderr, "i/o error: %s\n", err.what());
    return 4;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
}
