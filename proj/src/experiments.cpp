#include "rfk/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "rfk/error.hpp"
#include "rfk/parallel.hpp"
#include "rfk/rng.hpp"
#include "rfk/sphere_model.hpp"

namespace rfk {

namespace {

// Seed of the perturbation stream of one sample (splitmix64 finalizer).
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

struct Projected {
  CrossingDiagram diagram;
  Vec3 direction;
  int retries = 0;
};

Projected project_sample(const ExperimentSpec& spec, std::uint64_t stream) {
  const std::uint64_t pseed = sample_seed(spec.seed, stream);
  if (spec.model.kind == ModelKind::sphere) {
    const SpherePolygon poly = sample_sphere_polygon(spec.model.sphere_n, spec.seed, stream);
    PolygonDiagramAttempt a = polygon_generic_diagram(poly, spec.projection, pseed);
    return {std::move(a.diagram), a.direction, a.retries};
  }
  const SpaceCurve curve = sample_space_curve(spec.model.law, spec.seed, stream);
  DiagramAttempt a = build_generic_diagram(curve, spec.projection, pseed, spec.diagram);
  return {std::move(a.diagram), a.direction, a.retries};
}

}  // namespace

std::string to_string(ModelKind k) { return k == ModelKind::fourier ? "fourier" : "sphere"; }

void validate(const ExperimentSpec& spec) {
  if (spec.samples < 1) throw ValidationError("samples must be at least 1");
  if (spec.jobs < 1) throw ValidationError("jobs must be at least 1");
  if (!(norm(spec.projection) > 0.0)) throw ValidationError("projection direction must be nonzero");
  if (spec.model.kind == ModelKind::sphere && spec.model.sphere_n < 3)
    throw ValidationError("sphere polygons need N >= 3");
}

KnotSample sample_knot(const ExperimentSpec& spec, std::int64_t index, bool with_roots) {
  KnotSample s;
  s.index = index;
  s.seed = spec.seed;
  s.stream = static_cast<std::uint64_t>(index);
  s.model = spec.model;
  try {
    Projected p = project_sample(spec, s.stream);
    s.direction = p.direction;
    s.retries = p.retries;
    s.crossings_raw = p.diagram.size();
    const CrossingDiagram d = spec.simplify ? simplify_diagram(p.diagram) : p.diagram;
    s.crossings_simplified = d.size();
    s.gauss = gauss_entries(d);
    const LaurentPolynomial minor = alexander_minor_determinant(d);
    const BigInt at_one = minor.at_one();
    if (at_one != 1 && at_one != -1) throw NumericalError("Alexander invariant violated: |Delta(1)| != 1");
    s.alexander = normalize_alexander(minor);
    if (!s.alexander.is_palindromic()) throw NumericalError("Alexander invariant violated: not palindromic");
    s.knot = identify_knot(s.alexander);
    if (with_roots) {
      RootOptions ro;
      ro.allow_partial = true;
      const RootResult r = laurent_roots(s.alexander, ro);
      s.roots = r.roots;
      s.roots_converged = r.converged;
    }
  } catch (const Error& e) {
    s.failed = true;
    s.failure = e.what();
  }
  return s;
}

std::vector<KnotSample> sample_knots(const ExperimentSpec& spec, bool with_roots) {
  validate(spec);
  std::vector<KnotSample> out(static_cast<std::size_t>(spec.samples));
  parallel_for(spec.samples, spec.jobs, [&](std::int64_t i) {
    out[static_cast<std::size_t>(i)] = sample_knot(spec, i, with_roots);
  });
  return out;
}

std::int64_t CensusResult::count(const std::string& name) const {
  for (const auto& r : rows)
    if (r.name == name) return r.count;
  return 0;
}

std::int64_t CensusResult::successes() const {
  return static_cast<std::int64_t>(samples.size()) - failures;
}

double CensusResult::fraction(const std::string& name) const {
  const std::int64_t n = successes();
  return n > 0 ? static_cast<double>(count(name)) / static_cast<double>(n) : 0.0;
}

CensusResult census_from(std::vector<KnotSample> samples) {
  CensusResult c;
  std::map<std::string, std::int64_t> counts;
  for (const auto& s : samples) {
    if (s.failed) {
      ++c.failures;
    } else {
      ++counts[s.knot.name];
    }
  }
  std::vector<std::string> order{"unknot"};
  for (const auto& e : knot_table()) order.push_back(e.name);
  order.push_back("other");
  for (const auto& name : order) {
    const auto it = counts.find(name);
    if (it != counts.end()) c.rows.push_back({name, it->second});
  }
  c.samples = std::move(samples);
  return c;
}

CensusResult run_census(const ExperimentSpec& spec) { return census_from(sample_knots(spec)); }

RootCloudResult run_root_cloud(const ExperimentSpec& spec) {
  RootCloudResult r;
  r.samples = sample_knots(spec, true);
  std::vector<LaurentPolynomial> ps;
  std::vector<RootResult> roots;
  for (const auto& s : r.samples) {
    if (s.failed) {
      ++r.failures;
      continue;
    }
    if (!s.roots_converged) ++r.unconverged;
    ps.push_back(s.alexander);
    RootResult rr;
    rr.roots = s.roots;
    rr.converged = s.roots_converged;
    roots.push_back(std::move(rr));
  }
  r.summary = summarize_roots(ps, roots);
  return r;
}

CoefficientProfile coefficient_profile(const LaurentPolynomial& p, std::int64_t sample) {
  CoefficientProfile prof;
  prof.sample = sample;
  const auto& c = p.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    // log|c| = log(mantissa) + exponent * log 2, safe beyond the double range.
    const BigInt a = abs(c[i]);
    const unsigned bits = boost::multiprecision::msb(a);
    const unsigned shift = bits > 60 ? bits - 60 : 0;
    const double head = static_cast<double>(static_cast<BigInt>(a >> shift).convert_to<double>());
    prof.points.emplace_back(p.min_exp() + static_cast<int>(i),
                             std::log(head) + static_cast<double>(shift) * std::log(2.0));
  }
  return prof;
}

ProfileResult run_coeff_profiles(const ExperimentSpec& spec) {
  ProfileResult r;
  r.samples = sample_knots(spec);
  for (const auto& s : r.samples) {
    if (s.failed) {
      ++r.failures;
    } else {
      r.profiles.push_back(coefficient_profile(s.alexander, s.index));
    }
  }
  return r;
}

LaurentPolynomial sample_reciprocal_polynomial(int degree, int bound, std::uint64_t seed,
                                               std::uint64_t stream) {
  if (degree < 2 || degree % 2 != 0) throw ValidationError("reciprocal degree must be even and >= 2");
  if (bound < 1) throw ValidationError("coefficient bound must be >= 1");
  const CounterRng rng(seed, stream);
  const int half = degree / 2;
  std::vector<BigInt> c(static_cast<std::size_t>(degree + 1));
  std::int64_t lead = 0;
  for (std::uint64_t attempt = 0; lead == 0; ++attempt)
    lead = rng.uniform_int(static_cast<std::uint64_t>(half + 1) + attempt, slots::kReciprocal, -bound, bound);
  c[0] = c[static_cast<std::size_t>(degree)] = lead;
  for (int k = 1; k <= half; ++k) {
    const std::int64_t v = rng.uniform_int(static_cast<std::uint64_t>(k), slots::kReciprocal, -bound, bound);
    c[static_cast<std::size_t>(k)] = c[static_cast<std::size_t>(degree - k)] = v;
  }
  return LaurentPolynomial(-half, std::move(c));
}

double reciprocal_closure_error(const std::vector<std::complex<double>>& roots) {
  double worst = 0.0;
  for (const auto& r : roots) {
    const std::complex<double> inv = 1.0 / r;
    double best = INFINITY;
    for (const auto& q : roots) best = std::min(best, std::abs(q - inv));
    worst = std::max(worst, best);
  }
  return worst;
}

ReciprocalResult run_reciprocal_baseline(int degree, int bound, std::int64_t samples,
                                         std::uint64_t seed, int jobs) {
  if (samples < 1) throw ValidationError("samples must be at least 1");
  ReciprocalResult r;
  r.polynomials.resize(static_cast<std::size_t>(samples));
  r.roots.resize(static_cast<std::size_t>(samples));
  parallel_for(samples, jobs, [&](std::int64_t i) {
    const auto k = static_cast<std::size_t>(i);
    r.polynomials[k] = sample_reciprocal_polynomial(degree, bound, seed, static_cast<std::uint64_t>(i));
    r.roots[k] = laurent_roots(r.polynomials[k]);
  });
  std::vector<std::vector<std::complex<double>>> sets;
  for (const auto& rr : r.roots) {
    sets.push_back(rr.roots);
    r.reciprocal_closure_error = std::max(r.reciprocal_closure_error, reciprocal_closure_error(rr.roots));
  }
  r.pooled_roots = pool_roots(sets);
  r.median_unit_distance = median_unit_distance(r.pooled_roots);
  return r;
}

WilsonInterval wilson_interval(std::int64_t successes, std::int64_t trials, double z) {
  if (trials <= 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
  // The bounds are exact at the extremes; rounding must not move them past p.
  const double lo = successes == 0 ? 0.0 : std::min(p, std::max(0.0, centre - half));
  const double hi = successes == trials ? 1.0 : std::max(p, std::min(1.0, centre + half));
  return {lo, hi};
}

TailResult run_tail_estimate(const CoefficientLaw& law, std::int64_t samples,
                             const std::vector<int>& thresholds, std::uint64_t seed, int jobs) {
  if (!std::is_sorted(thresholds.begin(), thresholds.end()))
    throw ValidationError("tail thresholds must be ascending");
  ExperimentSpec spec;
  spec.model = ModelSpec::fourier(law);
  spec.samples = samples;
  spec.seed = seed;
  spec.jobs = jobs;
  validate(spec);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(samples), -1);
  parallel_for(samples, jobs, [&](std::int64_t i) {
    try {
      counts[static_cast<std::size_t>(i)] = project_sample(spec, static_cast<std::uint64_t>(i)).diagram.size();
    } catch (const NonGeneric&) {
    }
  });
  TailResult t;
  double sum = 0.0;
  for (auto c : counts) {
    if (c < 0) {
      ++t.failures;
      continue;
    }
    t.crossings.push_back(c);
    sum += static_cast<double>(c);
  }
  const auto n = static_cast<std::int64_t>(t.crossings.size());
  t.mean = n > 0 ? sum / static_cast<double>(n) : 0.0;
  for (int threshold : thresholds) {
    const auto above = std::count_if(t.crossings.begin(), t.crossings.end(),
                                     [threshold](std::int64_t c) { return c > threshold; });
    const WilsonInterval w = wilson_interval(above, n);
    t.rows.push_back({threshold, n > 0 ? static_cast<double>(above) / static_cast<double>(n) : 0.0, w.lo, w.hi});
  }
  return t;
}

UniversalityResult run_universality_compare(const ExperimentSpec& fourier_spec,
                                            const std::vector<int>& sphere_ns, std::int64_t samples) {
  const auto report = [&](ExperimentSpec spec) {
    spec.samples = samples;
    ModelReport m;
    m.model = spec.model;
    m.census = run_census(spec);
    for (const auto& s : m.census.samples)
      if (!s.failed) m.profiles.push_back(coefficient_profile(s.alexander, s.index));
    return m;
  };
  UniversalityResult u;
  u.fourier = report(fourier_spec);
  for (std::size_t i = 0; i < sphere_ns.size(); ++i) {
    ExperimentSpec s = fourier_spec;
    s.model = ModelSpec::sphere(sphere_ns[i]);
    s.seed = fourier_spec.seed + 1 + i;
    u.spheres.push_back(report(s));
  }
  return u;
}

}  // namespace rfk
