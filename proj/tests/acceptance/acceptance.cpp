// End-to-end checks of the numbered acceptance criteria. Prints one [PASS]/[FAIL] line per
// criterion; `--only N` (repeatable) restricts the run. Seeds and tolerances are fixed here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "../unit/oracles.hpp"
#include "json.hpp"
#include "rfk/curve_geometry.hpp"
#include "rfk/error.hpp"
#include "rfk/experiments.hpp"
#include "rfk/io.hpp"
#include "rfk/kac_rice.hpp"
#include "rfk/knot_algebra.hpp"
#include "rfk/parallel.hpp"
#include "rfk/rng.hpp"
#include "rfk/segments.hpp"
#include "rfk/sphere_model.hpp"

using namespace rfk;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 1;

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int jobs() { return default_jobs(); }

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "rfk_acceptance" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// Runs the command line tool; returns its exit status with stdout captured.
int run_cli(const std::string& args, std::string* out = nullptr) {
  const fs::path capture = scratch_dir("cli") / "stdout.txt";
  const std::string cmd = fmt::format("{} {} >{} 2>/dev/null", FOURIER_KNOTS_BIN, args, capture.string());
  const int status = std::system(cmd.c_str());
  if (out) *out = io::read_text(capture);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

ExperimentSpec fourier(double alpha, int degree, std::int64_t samples) {
  ExperimentSpec s;
  s.model = ModelSpec::fourier(CoefficientLaw::power_decay(alpha, degree));
  s.samples = samples;
  s.seed = kSeed;
  s.jobs = jobs();
  return s;
}

std::string census_line(const CensusResult& c) {
  std::string s;
  for (const auto& r : c.rows) s += fmt::format("{}{}={}", s.empty() ? "" : " ", r.name, r.count);
  return s + fmt::format(" failures={}", c.failures);
}

// --- 1: the closed-form Kac-Rice value at alpha = 2 -------------------------------------------

Outcome criterion1() {
  const Stopwatch clock;
  std::string out;
  const int code = run_cli("kacrice --alpha 2 --seed 1", &out);
  const double t = clock.seconds();
  const double ref = 0.130804;
  double value = NAN, half = NAN;
  if (!out.empty()) {
    const auto j = nlohmann::json::parse(out);
    value = j.at("value").get<double>();
    half = j.at("delta_half_value").get<double>();
  }
  const bool ok = code == 0 && std::abs(value - ref) <= 1e-3 && t < 10.0;
  return {ok, fmt::format("exit {} value {:.6f} (delta/2: {:.6f}) vs {:.6f} +- 1e-3, {:.1f} s", code, value, half,
                          ref, t)};
}

// --- 2: integrator self-consistency --------------------------------------------------------------

Outcome criterion2() {
  const Stopwatch clock;
  KacRiceProblem p;
  const KacRiceReport one = evaluate(p);
  p.mode = IntegrationMode::tensor_2d;
  const KacRiceReport two = evaluate(p);
  const double d12 = std::abs(one.value - two.value);
  const double dd = std::abs(one.value - one.delta_half_value);
  // k_max doubling on the truncated-series kernel.
  KacRiceProblem s;
  s.kernel = KernelMode::series;
  s.k_max = 256;
  const double v1 = evaluate(s).value;
  s.k_max = 512;
  const double v2 = evaluate(s).value;
  const double dk = std::abs(v1 - v2);
  const double t = clock.seconds();
  const bool ok = d12 <= 1e-6 && dd <= p.tol && dk <= p.tol && t < 120.0;
  return {ok, fmt::format("|1d-2d| {:.2e} (<= 1e-6); delta halving {:.6f} -> {:.6f}, |diff| {:.2e}; "
                          "k_max 256 -> 512: {:.6f} -> {:.6f}, |diff| {:.2e} (tol {:.0e}); {:.1f} s",
                          d12, one.value, one.delta_half_value, dd, v1, v2, dk, p.tol, t)};
}

// --- 3: Monte Carlo against Kac-Rice ------------------------------------------------------------

Outcome criterion3() {
  const Stopwatch clock;
  const auto law = CoefficientLaw::power_decay(2.0, 64);
  const MonteCarloCount mc = count_self_intersections_mc(law, 10000, kSeed, {}, jobs());
  KacRiceProblem p;
  p.kernel = KernelMode::series;
  p.k_max = 64;
  const KacRiceReport kr = evaluate(p);
  const double t = clock.seconds();
  std::optional<int> factor;
  for (int f : {1, 2})
    if (std::abs(f * mc.mean - kr.value) <= 3.0 * f * mc.standard_error) {
      factor = f;
      break;
    }
  const bool ok = factor.has_value() && kr.converged && t < 300.0;
  return {ok, fmt::format("MC {:.4f} +- {:.4f} (unordered, {} curves), Kac-Rice {:.6f} (ordered, k_max 64); "
                          "factor {}; {:.1f} s",
                          mc.mean, mc.standard_error, mc.samples, kr.value,
                          factor ? std::to_string(*factor) : "none", t)};
}

// --- 4: quadratic growth without decay ---------------------------------------------------------

Outcome criterion4() {
  const std::vector<int> ns{10, 20, 40};
  std::vector<double> xs, ys;
  std::string means;
  for (int n : ns) {
    const auto mc = count_self_intersections_mc(CoefficientLaw::no_decay(n), 400, kSeed, {}, jobs());
    xs.push_back(std::log(n));
    ys.push_back(std::log(mc.mean));
    means += fmt::format(" N={}:{:.1f}", n, mc.mean);
  }
  const double mx = (xs[0] + xs[1] + xs[2]) / 3, my = (ys[0] + ys[1] + ys[2]) / 3;
  double sxy = 0, sxx = 0;
  for (int i = 0; i < 3; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  const double slope = sxy / sxx;
  return {std::abs(slope - 2.0) <= 0.3, fmt::format("exponent {:.3f} (2.0 +- 0.3);{}", slope, means)};
}

// --- 5-8: censuses ------------------------------------------------------------------------------

Outcome criterion5() {
  const CensusResult c = run_census(fourier(2.0, 100, 200));
  const double u = c.fraction("unknot");
  return {c.successes() > 0 && u >= 0.99, fmt::format("unknot fraction {:.4f} (>= 0.99); {}", u, census_line(c))};
}

Outcome criterion6() {
  const CensusResult c = run_census(fourier(1.5, 100, 400));
  const double u = c.fraction("unknot");
  std::string top;
  std::int64_t best = 0;
  bool tie = false;
  for (const auto& r : c.rows) {
    if (r.name == "unknot" || r.name == "other") continue;
    if (r.count > best) {
      best = r.count;
      top = r.name;
      tie = false;
    } else if (r.count == best) {
      tie = true;
    }
  }
  const bool ok = u >= 0.90 && u <= 0.995 && top == "3_1" && !tie;
  return {ok, fmt::format("unknot fraction {:.4f} in [0.90, 0.995]; most common nontrivial {}; {}", u,
                          top.empty() ? "none" : top, census_line(c))};
}

Outcome criterion7() {
  const CensusResult c = run_census(fourier(1.0, 100, 400));
  const double u = c.fraction("unknot"), tr = c.fraction("3_1");
  const bool ok = u >= 0.38 && u <= 0.64 && tr >= 0.12 && tr <= 0.35 && c.count("5_2") > 0 && c.count("8_20") > 0;
  return {ok, fmt::format("unknot {:.4f} in [0.38, 0.64], trefoil {:.4f} in [0.12, 0.35], 5_2 x{}, 8_20 x{}; {}", u,
                          tr, c.count("5_2"), c.count("8_20"), census_line(c))};
}

Outcome criterion8() {
  const CensusResult c = run_census(fourier(1.25, 100, 400));
  const double u = c.fraction("unknot");
  return {u >= 0.80 && u <= 0.96, fmt::format("unknot fraction {:.4f} in [0.80, 0.96]; {}", u, census_line(c))};
}

// --- 9, 12: root statistics ---------------------------------------------------------------------

struct Cloud {
  RootCloudResult result;
  double seconds = 0;
};

const Cloud& alexander_cloud() {
  static const Cloud cloud = [] {
    const Stopwatch clock;
    Cloud c;
    c.result = run_root_cloud(fourier(1.0, 100, 600));
    c.seconds = clock.seconds();
    return c;
  }();
  return cloud;
}

Outcome criterion9() {
  const Cloud& c = alexander_cloud();
  const RootSummary& s = c.result.summary;
  const double min_real = s.min_real_root.value_or(NAN);
  // Smallest real root among positive ones, reported alongside the overall minimum.
  double min_pos = INFINITY;
  for (const auto& st : s.per_polynomial)
    if (st.min_positive_real) min_pos = std::min(min_pos, *st.min_positive_real);
  const bool span_ok = s.max_span >= 8 && s.max_span <= 16;
  const bool real_ok = s.all_real_roots_positive && min_real >= 0.15 && min_real <= 0.35;
  const bool sum_ok = s.positive_root_sum_fraction >= 0.95;
  const bool ok = span_ok && real_ok && sum_ok && c.result.unconverged == 0 && c.seconds < 1800.0;
  return {ok, fmt::format("max span {} in [8, 16]; real roots {} ({} negative), min {:.4f}, min positive {:.4f} "
                          "in [0.15, 0.35]; positive root sums {}/{} = {:.4f} (>= 0.95); failures {}, "
                          "unconverged {}; {:.1f} s",
                          s.max_span, s.real_roots, s.negative_real_roots, min_real, min_pos, s.positive_root_sum,
                          s.nontrivial, s.positive_root_sum_fraction, c.result.failures, c.result.unconverged,
                          c.seconds)};
}

Outcome criterion12() {
  const ReciprocalResult r = run_reciprocal_baseline(12, 20, 600, kSeed, jobs());
  double closure = 0;
  for (const auto& rr : r.roots) closure = std::max(closure, reciprocal_closure_error(rr.roots));
  const double alex = alexander_cloud().result.summary.median_unit_distance;
  std::size_t on_circle = 0;
  for (const auto& z : r.pooled_roots) on_circle += std::abs(std::abs(z) - 1) <= kUnitTol;
  std::size_t alex_on = 0;
  const auto& pooled = alexander_cloud().result.summary.pooled_roots;
  for (const auto& z : pooled) alex_on += std::abs(std::abs(z) - 1) <= kUnitTol;
  const bool ok = closure <= 1e-8 && r.median_unit_distance < alex;
  return {ok, fmt::format("closure error {:.2e} (<= 1e-8); median ||r|-1|: reciprocal {:.3e} vs Alexander {:.3e} "
                          "(strictly smaller required); on the circle: {}/{} vs {}/{}",
                          closure, r.median_unit_distance, alex, on_circle, r.pooled_roots.size(), alex_on,
                          pooled.size())};
}

// --- 10: invariant suite ------------------------------------------------------------------------

Vec3 random_direction(const CounterRng& rng, std::uint64_t index) {
  for (std::uint32_t a = 0;; a += 3) {
    const Vec3 v{rng.gaussian(index, a), rng.gaussian(index, a + 1), rng.gaussian(index, a + 2)};
    if (norm(v) > 1e-6) return normalized(v);
  }
}

Outcome criterion10() {
  struct Regime {
    std::string name;
    ModelSpec model;
  };
  const std::vector<Regime> regimes{
      {"alpha=1", ModelSpec::fourier(CoefficientLaw::power_decay(1.0, 100))},
      {"alpha=1.25", ModelSpec::fourier(CoefficientLaw::power_decay(1.25, 100))},
      {"alpha=1.5", ModelSpec::fourier(CoefficientLaw::power_decay(1.5, 100))},
      {"sphere N=60", ModelSpec::sphere(60)},
  };
  constexpr int kPerRegime = 50;
  std::vector<std::string> problems(regimes.size() * kPerRegime);
  std::vector<int> nontrivial(problems.size(), 0);
  parallel_for(static_cast<std::int64_t>(problems.size()), jobs(), [&](std::int64_t idx) {
    const auto& reg = regimes[static_cast<std::size_t>(idx / kPerRegime)];
    const auto stream = static_cast<std::uint64_t>(idx % kPerRegime);
    const CounterRng dirs(kSeed + 1000, static_cast<std::uint64_t>(idx));
    std::string& err = problems[static_cast<std::size_t>(idx)];
    try {
      std::optional<LaurentPolynomial> first;
      for (std::uint64_t k = 0; k < 3; ++k) {
        const Vec3 dir = random_direction(dirs, k);
        CrossingDiagram d;
        if (reg.model.kind == ModelKind::sphere) {
          d = polygon_generic_diagram(sample_sphere_polygon(reg.model.sphere_n, kSeed, stream), dir, k).diagram;
        } else {
          d = build_generic_diagram(sample_space_curve(reg.model.law, kSeed, stream), dir, k).diagram;
        }
        const BigInt at1 = alexander_minor_determinant(d).at_one();
        if (at1 != 1 && at1 != -1) err += " Delta(1)!=+-1";
        const LaurentPolynomial raw = alexander_polynomial(d, {AlexanderMethod::fast, false});
        if (!raw.is_palindromic()) err += " not palindromic";
        if (alexander_polynomial(simplify_diagram(d), {AlexanderMethod::fast, false}) != raw)
          err += " changed by simplification";
        if (alexander_polynomial(mirror(d), {AlexanderMethod::fast, false}) != raw) err += " changed by mirroring";
        if (!first) {
          first = raw;
          nontrivial[static_cast<std::size_t>(idx)] = raw.span() > 0;
        } else if (*first != raw) {
          err += " projection dependent";
        }
      }
    } catch (const Error& e) {
      err += std::string(" ") + e.what();
    }
  });
  std::size_t failures = 0;
  std::string first_problem;
  for (std::size_t i = 0; i < problems.size(); ++i)
    if (!problems[i].empty()) {
      ++failures;
      if (first_problem.empty()) first_problem = fmt::format("; first: knot {}{}", i, problems[i]);
    }
  int knotted = 0;
  for (int v : nontrivial) knotted += v;
  return {failures == 0, fmt::format("{} knots x 3 projections across {} regimes, {} nontrivial; {} failures{}",
                                     problems.size(), regimes.size(), knotted, failures, first_problem)};
}

// --- 11: oracle equivalence ---------------------------------------------------------------------

Outcome criterion11() {
  int det_bad = 0;
  const CounterRng rng(kSeed, 11);
  for (int c = 0; c < 50; ++c) {
    const int n = 1 + c % 7;
    LaurentMatrix m(n, std::vector<LaurentPolynomial>(n));
    std::vector<std::vector<oracle::Poly>> om(n, std::vector<oracle::Poly>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const std::uint64_t idx = static_cast<std::uint64_t>(c * 64 + i * 8 + j);
        std::vector<BigInt> co;
        const int len = static_cast<int>(rng.uniform_int(idx, 1, 0, 3));
        for (int k = 0; k < len; ++k) co.emplace_back(rng.uniform_int(idx, 2 + k, -4, 4));
        m[i][j] = LaurentPolynomial(static_cast<int>(rng.uniform_int(idx, 0, -2, 2)), std::move(co));
        om[i][j] = oracle::from(m[i][j]);
      }
    const LaurentPolynomial d = determinant_laurent(m);
    if (d != determinant_cofactor(m) || oracle::from(d) != oracle::det(om)) ++det_bad;
  }

  int sweep_bad = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const CounterRng r(kSeed + 11, s);
    const int n = 4 + static_cast<int>(r.uniform_int(0, 1, 0, 80));
    std::vector<Vec2> pts;
    for (int i = 0; i < n; ++i) pts.push_back({r.uniform(i, 2), r.uniform(i, 3)});
    const auto sweep = segment_intersections(pts, ScanMode::sweep);
    const auto brute = segment_intersections(pts, ScanMode::brute_force);
    std::vector<std::pair<std::size_t, std::size_t>> got;
    for (const auto& h : sweep.hits) got.emplace_back(h.i, h.j);
    if (!(sweep.hits == brute.hits) || got != oracle::crossing_pairs(pts)) ++sweep_bad;
  }

  // Hand-derived: trefoil t - 1 + 1/t, figure-eight -t + 3 - 1/t, 5_2 2t - 3 + 2/t.
  const std::map<std::string, LaurentPolynomial> hand{{"3_1", LaurentPolynomial(-1, {1, -1, 1})},
                                                      {"4_1", LaurentPolynomial(-1, {-1, 3, -1})},
                                                      {"5_2", LaurentPolynomial(-1, {2, -3, 2})}};
  int table_bad = 0;
  for (const auto& e : knot_table()) {
    const auto it = hand.find(e.name);
    if (it == hand.end()) continue;
    if (e.alexander != it->second || alexander_polynomial(diagram_from_gauss(e.gauss)) != it->second) ++table_bad;
  }
  const bool ok = det_bad == 0 && sweep_bad == 0 && table_bad == 0;
  return {ok, fmt::format("determinant mismatches {}/50, sweep mismatches {}/200, table mismatches {}/3", det_bad,
                          sweep_bad, table_bad)};
}

// --- 13: determinism ----------------------------------------------------------------------------

std::map<std::string, std::string> tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) files[fs::relative(e.path(), root).string()] = io::read_text(e.path());
  return files;
}

Outcome criterion13() {
  const std::vector<std::pair<std::string, std::string>> runs{
      {"census", "--alpha 1 --degree 40 --samples 24"},
      {"roots", "--alpha 1 --degree 40 --samples 24"},
      {"profiles", "--alpha 1.25 --degree 40 --samples 24"},
      {"reciprocal", "--samples 60"},
      {"tails", "--alpha 1.25 --degree 10 --samples 60"},
      {"universality", "--alpha 1.25 --degree 40 --samples 12 --sphere-n 10 --sphere-n 40"},
      {"census", "--model sphere --n 40 --samples 24"},
  };
  const fs::path base = scratch_dir("determinism");
  int differing = 0, errors = 0;
  std::size_t compared = 0;
  std::string detail;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& [kind, args] = runs[i];
    std::vector<std::map<std::string, std::string>> outs;
    for (const auto& [tag, j] : {std::pair{"a", 1}, {"b", 1}, {"c", 8}}) {
      const fs::path out = base / fmt::format("{}_{}_{}", i, kind, tag);
      const int code = run_cli(fmt::format("experiment {} {} --seed 5 --jobs {} --out {}", kind, args, j, out.string()));
      if (code != 0) {
        ++errors;
        detail += fmt::format(" {} exit {};", kind, code);
        break;
      }
      outs.push_back(tree(out));
    }
    if (outs.size() != 3) continue;
    compared += outs[0].size();
    if (outs[0].empty() || outs[0] != outs[1] || outs[0] != outs[2]) {
      ++differing;
      detail += fmt::format(" {} differs;", kind);
    }
  }
  return {differing == 0 && errors == 0,
          fmt::format("{} experiments x (rerun, --jobs 8): {} files per run set, {} differing, {} errors{}",
                      runs.size(), compared, differing, errors, detail)};
}

}  // namespace

int main(int argc, char** argv) {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) {
      only.insert(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--only N]...\n", argv[0]);
      return 2;
    }
  }
  const std::vector<std::function<Outcome()>> criteria{criterion1,  criterion2,  criterion3, criterion4, criterion5,
                                                       criterion6,  criterion7,  criterion8, criterion9, criterion10,
                                                       criterion11, criterion12, criterion13};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(n)) continue;
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %d: %s\n", o.pass ? "PASS" : "FAIL", n, o.detail.c_str());
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
