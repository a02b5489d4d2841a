#include "doctest.h"

#include <cmath>

#include "rfk/error.hpp"
#include "rfk/experiments.hpp"

using namespace rfk;

namespace {

ExperimentSpec fourier_spec(double alpha, int degree, std::int64_t samples, std::uint64_t seed) {
  ExperimentSpec s;
  s.model = ModelSpec::fourier(CoefficientLaw::power_decay(alpha, degree));
  s.samples = samples;
  s.seed = seed;
  return s;
}

// Wilson score interval written out directly.
std::pair<double, double> wilson_reference(double k, double n) {
  const double z = 1.959963984540054, p = k / n;
  const double centre = (p + z * z / (2 * n)) / (1 + z * z / n);
  const double half = z / (1 + z * z / n) * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n));
  return {centre - half, centre + half};
}

}  // namespace

TEST_CASE("validation") {
  ExperimentSpec s = fourier_spec(1.0, 10, 0, 1);
  CHECK_THROWS_AS(validate(s), ValidationError);
  s.samples = 1;
  s.jobs = 0;
  CHECK_THROWS_AS(validate(s), ValidationError);
  s.jobs = 1;
  s.projection = {0, 0, 0};
  CHECK_THROWS_AS(validate(s), ValidationError);
  ExperimentSpec sp;
  sp.model = ModelSpec::sphere(2);
  CHECK_THROWS_AS(validate(sp), ValidationError);
}

TEST_CASE("census is deterministic and consistent") {
  ExperimentSpec s = fourier_spec(1.0, 20, 40, 5);
  const CensusResult a = run_census(s);
  s.jobs = 4;
  const CensusResult b = run_census(s);
  REQUIRE(a.samples.size() == 40);
  std::int64_t total = 0;
  for (const auto& r : a.rows) {
    CHECK(r.count > 0);
    total += r.count;
  }
  CHECK(total == a.successes());
  CHECK(a.successes() + a.failures == 40);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].name == b.rows[i].name);
    CHECK(a.rows[i].count == b.rows[i].count);
  }
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].index == static_cast<std::int64_t>(i));
    CHECK(a.samples[i].stream == i);
    CHECK(a.samples[i].alexander == b.samples[i].alexander);
    CHECK(a.samples[i].crossings_raw == b.samples[i].crossings_raw);
    if (!a.samples[i].failed) CHECK(a.samples[i].crossings_simplified <= a.samples[i].crossings_raw);
  }
  const auto single = sample_knot(s, 7);
  CHECK(single.alexander == a.samples[7].alexander);
  if (!a.rows.empty() && a.rows.front().name == "unknot")
    CHECK(a.fraction("unknot") == doctest::Approx(static_cast<double>(a.count("unknot")) / a.successes()));
  CHECK(a.count("no_such_knot") == 0);
}

TEST_CASE("sphere polygons") {
  ExperimentSpec tri;
  tri.model = ModelSpec::sphere(3);
  tri.samples = 30;
  tri.seed = 2;
  const CensusResult t = run_census(tri);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0].name == "unknot");
  CHECK(t.rows[0].count == 30);

  ExperimentSpec big = tri;
  big.model = ModelSpec::sphere(100);
  big.samples = 20;
  const CensusResult b = run_census(big);
  CHECK(b.successes() > 0);
  CHECK(b.count("unknot") < b.successes());
}

TEST_CASE("coefficient profiles") {
  const auto tre = coefficient_profile(LaurentPolynomial(-1, {1, -1, 1}), 3);
  CHECK(tre.sample == 3);
  REQUIRE(tre.points.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(tre.points[i].first == i - 1);
    CHECK(tre.points[i].second == 0.0);
  }
  const auto gap = coefficient_profile(LaurentPolynomial(-2, {2, 0, -3, 0, 2}));
  CHECK(gap.points.size() == 3);
  CHECK(gap.points[1].second == doctest::Approx(std::log(3.0)));
  const BigInt big = BigInt(1) << 80;
  const auto huge = coefficient_profile(LaurentPolynomial(0, std::vector<BigInt>{big * 3}));
  CHECK(huge.points[0].second == doctest::Approx(80 * std::log(2.0) + std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("reciprocal baseline") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const LaurentPolynomial p = sample_reciprocal_polynomial(12, 20, 4, s);
    CHECK(p.is_palindromic());
    CHECK(p.span() == 12);
    CHECK(p.min_exp() == -6);
    for (const auto& c : p.coeffs()) CHECK(abs(c) <= 20);
  }
  CHECK_THROWS_AS(sample_reciprocal_polynomial(5, 20, 1, 0), ValidationError);
  CHECK_THROWS_AS(sample_reciprocal_polynomial(4, 0, 1, 0), ValidationError);
  const auto r1 = run_reciprocal_baseline(8, 10, 30, 9, 1);
  const auto r4 = run_reciprocal_baseline(8, 10, 30, 9, 4);
  CHECK(r1.polynomials == r4.polynomials);
  CHECK(r1.median_unit_distance == r4.median_unit_distance);
  CHECK(r1.reciprocal_closure_error < 1e-8);
  CHECK(reciprocal_closure_error({{2, 0}, {0.5, 0}}) == 0.0);
  CHECK(reciprocal_closure_error({{2, 0}}) == doctest::Approx(1.5));
}

TEST_CASE("Wilson interval") {
  for (auto [k, n] : {std::pair{0, 10}, {5, 10}, {37, 400}, {400, 400}}) {
    const auto w = wilson_interval(k, n);
    const auto ref = wilson_reference(k, n);
    CHECK(w.lo == doctest::Approx(ref.first).epsilon(1e-12).scale(1.0));
    CHECK(w.hi == doctest::Approx(ref.second).epsilon(1e-12).scale(1.0));
    CHECK(w.lo <= static_cast<double>(k) / n);
    CHECK(w.hi >= static_cast<double>(k) / n);
  }
  CHECK(wilson_interval(5, 10).lo == doctest::Approx(0.2366).epsilon(1e-3));
}

TEST_CASE("crossing tails") {
  const std::vector<int> thresholds{0, 1, 3, 5, 10, 20};
  const auto light = run_tail_estimate(CoefficientLaw::power_decay(1.25, 3), 300, thresholds, 6, 2);
  const auto heavy = run_tail_estimate(CoefficientLaw::power_decay(2.0, 3), 300, thresholds, 6, 2);
  REQUIRE(light.rows.size() == thresholds.size());
  for (std::size_t i = 0; i < light.rows.size(); ++i) {
    const auto& r = light.rows[i];
    if (i > 0) CHECK(r.p <= light.rows[i - 1].p);
    CHECK(r.lo <= r.p);
    CHECK(r.p <= r.hi);
    // Markov: P(c > N) <= E[c] / (N + 1).
    CHECK(r.p <= light.mean / (r.threshold + 1) + 1e-12);
  }
  CHECK(heavy.rows[2].p <= light.rows[2].p);
  CHECK(heavy.mean < light.mean);
  CHECK_THROWS_AS(run_tail_estimate(CoefficientLaw::power_decay(2.0, 3), 10, {3, 1}, 1), ValidationError);
}

TEST_CASE("root cloud and universality") {
  const auto cloud = run_root_cloud(fourier_spec(1.0, 20, 30, 3));
  CHECK(cloud.summary.polynomials + cloud.failures == 30);
  for (const auto& s : cloud.samples)
    if (!s.failed && s.roots_converged)
      CHECK(s.roots.size() <= static_cast<std::size_t>(std::max(0, s.alexander.span())));

  ExperimentSpec f = fourier_spec(1.0, 20, 10, 3);
  const auto u = run_universality_compare(f, {3, 30}, 10);
  CHECK(u.fourier.census.samples.size() == 10);
  REQUIRE(u.spheres.size() == 2);
  CHECK(u.spheres[0].model.sphere_n == 3);
  CHECK(u.spheres[0].census.count("unknot") == 10);
  CHECK(u.spheres[1].census.samples.front().seed == 5);
}
