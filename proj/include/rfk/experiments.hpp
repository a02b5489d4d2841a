#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rfk/curve_geometry.hpp"
#include "rfk/knot_algebra.hpp"
#include "rfk/roots.hpp"
#include "rfk/trig_series.hpp"

namespace rfk {

enum class ModelKind { fourier, sphere };

/// Random knot model: Fourier knots under a coefficient law, or sphere polygons with N vertices.
struct ModelSpec {
  ModelKind kind = ModelKind::fourier;
  CoefficientLaw law = CoefficientLaw::power_decay(2.0, 100);
  int sphere_n = 100;

  static ModelSpec fourier(const CoefficientLaw& law) { return {ModelKind::fourier, law, 0}; }
  static ModelSpec sphere(int n) { return {ModelKind::sphere, CoefficientLaw::no_decay(1), n}; }
};

struct ExperimentSpec {
  ModelSpec model;
  std::int64_t samples = 100;
  std::uint64_t seed = 0;
  Vec3 projection{0.0, 0.0, 1.0};
  int jobs = 1;
  bool simplify = true;
  DiagramOptions diagram;
};

void validate(const ExperimentSpec& spec);

/// Everything recorded about one sampled knot. Sample i always uses stream i.
struct KnotSample {
  std::int64_t index = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  ModelSpec model;
  int crossings_raw = 0;
  int crossings_simplified = 0;
  std::vector<GaussEntry> gauss;  // after simplification
  LaurentPolynomial alexander;
  KnotId knot;
  std::vector<std::complex<double>> roots;  // filled by root experiments
  bool roots_converged = true;
  int retries = 0;
  Vec3 direction;
  bool failed = false;
  std::string failure;
};

/// Samples, projects, simplifies and identifies knot `index` of the experiment. Degenerate
/// projections after all retries and invariant violations (Delta(1) != +-1, non-palindromic
/// normalized polynomial) are recorded as failures rather than thrown.
KnotSample sample_knot(const ExperimentSpec& spec, std::int64_t index, bool with_roots = false);

/// All samples of an experiment in index order, computed on spec.jobs workers.
std::vector<KnotSample> sample_knots(const ExperimentSpec& spec, bool with_roots = false);

struct CensusRow {
  std::string name;
  std::int64_t count = 0;
};

struct CensusResult {
  std::vector<KnotSample> samples;
  std::vector<CensusRow> rows;  // unknot, table order, then other; zero counts omitted
  std::int64_t failures = 0;

  std::int64_t count(const std::string& name) const;
  double fraction(const std::string& name) const;  // of successful samples
  std::int64_t successes() const;
};

CensusResult census_from(std::vector<KnotSample> samples);
CensusResult run_census(const ExperimentSpec& spec);

struct RootCloudResult {
  std::vector<KnotSample> samples;
  RootSummary summary;  // over successful samples
  std::int64_t failures = 0;
  std::int64_t unconverged = 0;
};

RootCloudResult run_root_cloud(const ExperimentSpec& spec);

struct CoefficientProfile {
  std::int64_t sample = 0;
  std::vector<std::pair<int, double>> points;  // (exponent, log|coefficient|); zeros absent
};

/// Natural log of |c| for every nonzero coefficient of a polynomial.
CoefficientProfile coefficient_profile(const LaurentPolynomial& p, std::int64_t sample = 0);

struct ProfileResult {
  std::vector<KnotSample> samples;
  std::vector<CoefficientProfile> profiles;  // successful samples only
  std::int64_t failures = 0;
};

ProfileResult run_coeff_profiles(const ExperimentSpec& spec);

struct ReciprocalResult {
  std::vector<LaurentPolynomial> polynomials;
  std::vector<RootResult> roots;
  std::vector<std::complex<double>> pooled_roots;
  double median_unit_distance = 0.0;
  double reciprocal_closure_error = 0.0;  // max over roots r of min over roots q of |q - 1/r|
};

/// Palindromic integer polynomial t^(-degree/2) sum c_k t^k with c_k = c_(degree-k) uniform in
/// [-bound, bound]; the outer coefficient is redrawn while zero.
LaurentPolynomial sample_reciprocal_polynomial(int degree, int bound, std::uint64_t seed,
                                               std::uint64_t stream);
ReciprocalResult run_reciprocal_baseline(int degree, int bound, std::int64_t samples,
                                         std::uint64_t seed, int jobs = 1);

/// Largest distance from 1/r to the nearest root, over the roots r of one set.
double reciprocal_closure_error(const std::vector<std::complex<double>>& roots);

struct TailRow {
  int threshold = 0;
  double p = 0.0;  // empirical P(crossings > threshold)
  double lo = 0.0, hi = 0.0;  // 95% Wilson interval
};

struct TailResult {
  std::vector<std::int64_t> crossings;  // per sample, pre-simplification
  std::vector<TailRow> rows;
  double mean = 0.0;
  std::int64_t failures = 0;
};

struct WilsonInterval {
  double lo, hi;
};
WilsonInterval wilson_interval(std::int64_t successes, std::int64_t trials, double z = 1.959963984540054);

TailResult run_tail_estimate(const CoefficientLaw& law, std::int64_t samples,
                             const std::vector<int>& thresholds, std::uint64_t seed, int jobs = 1);

struct ModelReport {
  ModelSpec model;
  CensusResult census;
  std::vector<CoefficientProfile> profiles;
};

struct UniversalityResult {
  ModelReport fourier;
  std::vector<ModelReport> spheres;
};

/// Census and coefficient profiles of the Fourier model and of sphere polygons for each N,
/// side by side. Sphere runs use seed + 1 + i for the i-th N.
UniversalityResult run_universality_compare(const ExperimentSpec& fourier_spec,
                                            const std::vector<int>& sphere_ns, std::int64_t samples);

std::string to_string(ModelKind k);

}  // namespace rfk
