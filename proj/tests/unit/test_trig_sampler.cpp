#include "doctest.h"

#include <cmath>
#include <numbers>

#include "rfk/error.hpp"
#include "rfk/rng.hpp"
#include "rfk/trig_series.hpp"

using namespace rfk;
using std::numbers::pi;

namespace {

TrigSeries unit(int degree, int k, bool sine) {
  TrigSeries s(std::vector<double>(degree, 0.0), std::vector<double>(degree, 0.0));
  (sine ? s.b : s.a)[k - 1] = 1.0;
  return s;
}

}  // namespace

TEST_CASE("coefficient law validation and variance profile") {
  CHECK_THROWS_AS(CoefficientLaw::power_decay(-1.0, 10), ValidationError);
  CHECK_THROWS_AS(CoefficientLaw::power_decay(0.0, 10), ValidationError);
  CHECK_THROWS_AS(CoefficientLaw::power_decay(2.0, 0), ValidationError);
  CHECK_THROWS_AS(CoefficientLaw::no_decay(0), ValidationError);

  const auto law = CoefficientLaw::power_decay(2.0, 4);
  CHECK(law.std_dev(4) == doctest::Approx(1.0 / 16.0));
  CHECK(law.variance_at(3) == doctest::Approx(1.0 / 81.0));
  CHECK(law.variance_at(5) == 0.0);
  CHECK(CoefficientLaw::no_decay(7).variance_at(7) == 1.0);
  CHECK(std::isinf(CoefficientLaw::no_decay(7).truncation_tail_bound()));
  CHECK(std::isinf(CoefficientLaw::power_decay(1.0, 7).truncation_tail_bound()));

  // The tail bound dominates the actual tail sum.
  const auto l2 = CoefficientLaw::power_decay(2.0, 50);
  double tail = 0.0;
  for (int k = 51; k < 2000000; ++k) tail += 2.0 * std::pow(k, -2.0);
  CHECK(l2.truncation_tail_bound() >= tail);
}

TEST_CASE("evaluation and derivatives of single harmonics") {
  CHECK(unit(1, 1, false)(0.0) == doctest::Approx(1.0));
  CHECK(unit(2, 2, true)(pi / 4) == doctest::Approx(1.0));
  CHECK(unit(1, 1, false).derivative(0.0, 1) == doctest::Approx(0.0));
  CHECK(unit(3, 3, true).derivative(0.0, 1) == doctest::Approx(3.0));
  CHECK(unit(3, 3, true).derivative(0.3, 2) == doctest::Approx(-9.0 * std::sin(0.9)));
  CHECK_THROWS_AS(evaluate_derivative(unit(1, 1, false), 0.0, 3), ValidationError);
}

TEST_CASE("periodicity and finite differences on random series") {
  const auto law = CoefficientLaw::power_decay(1.5, 30);
  for (std::uint64_t stream = 0; stream < 100; ++stream) {
    const TrigSeries f = sample_series(law, 11, stream);
    const CounterRng rng(5, stream);
    const double t = 2.0 * pi * rng.uniform(0, 0);
    CHECK(std::abs(f(t) - f(t + 2.0 * pi)) <= 1e-12);
    const double h = 1e-5;
    const double fd1 = (f(t + h) - f(t - h)) / (2 * h);
    const double fd2 = (f.derivative(t + h, 1) - f.derivative(t - h, 1)) / (2 * h);
    const double d1 = f.derivative(t, 1), d2 = f.derivative(t, 2);
    CHECK(std::abs(fd1 - d1) <= 1e-6 * std::max(1.0, std::abs(d1)));
    CHECK(std::abs(fd2 - d2) <= 1e-6 * std::max(1.0, std::abs(d2)));
    const auto jet = f.jet(t);
    CHECK(jet.f == doctest::Approx(f(t)).epsilon(1e-12));
    CHECK(jet.df == doctest::Approx(d1).epsilon(1e-12));
  }
}

TEST_CASE("sampling is deterministic and follows the variance law") {
  const auto law = CoefficientLaw::power_decay(1.5, 100);
  CHECK(sample_series(law, 3, 9) == sample_series(law, 3, 9));
  CHECK_FALSE(sample_series(law, 3, 9) == sample_series(law, 3, 10));
  CHECK_FALSE(sample_series(law, 3, 9, 0) == sample_series(law, 3, 9, 1));

  constexpr int kDraws = 100000;
  double s_a1 = 0, s_a3 = 0, s_ab = 0, s_b3 = 0;
  const auto nd = CoefficientLaw::no_decay(1);
  const auto small = CoefficientLaw::power_decay(1.5, 3);
  for (int i = 0; i < kDraws; ++i) {
    const auto f = sample_series(nd, 21, static_cast<std::uint64_t>(i));
    s_a1 += f.a[0] * f.a[0];
    const auto g = sample_series(small, 22, static_cast<std::uint64_t>(i));
    s_a3 += g.a[2] * g.a[2];
    s_b3 += g.b[2] * g.b[2];
    s_ab += g.a[2] * g.b[2];
  }
  const double var_a1 = s_a1 / kDraws;
  CHECK(var_a1 >= 0.95);
  CHECK(var_a1 <= 1.05);
  CHECK(s_a3 / kDraws == doctest::Approx(1.0 / 27.0).epsilon(0.05));
  CHECK(s_b3 / kDraws == doctest::Approx(1.0 / 27.0).epsilon(0.05));
  CHECK(std::abs(s_ab / std::sqrt(s_a3 * s_b3)) < 0.02);
}

TEST_CASE("grids") {
  const PlaneCurve circle{unit(1, 1, false), unit(1, 1, true)};
  const auto g = sample_grid(circle, 4);
  REQUIRE(g.points.size() == 4);
  const Vec2 expect[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int i = 0; i < 4; ++i) {
    CHECK(g.points[i].x == doctest::Approx(expect[i].x).epsilon(1e-12));
    CHECK(g.points[i].y == doctest::Approx(expect[i].y).epsilon(1e-12));
    CHECK(g.params[i] == doctest::Approx(pi * i / 2));
  }
  CHECK_THROWS_AS(sample_grid(circle, 2), ValidationError);

  const auto law = CoefficientLaw::power_decay(1.0, 20);
  const PlaneCurve c = sample_plane_curve(law, 4, 0);
  const auto g1 = sample_grid(c, 160), g2 = sample_grid(c, 320);
  for (int i = 0; i < 160; ++i) CHECK(g1.points[i] == g2.points[2 * i]);

  // Chords are bounded by max |gamma'| * 2 pi / M.
  double speed = 0;
  for (int i = 0; i < 20000; ++i) speed = std::max(speed, norm(c.tangent(2 * pi * i / 20000.0)));
  double chord = 0;
  for (int i = 0; i < 160; ++i) chord = std::max(chord, norm(g1.points[(i + 1) % 160] - g1.points[i]));
  CHECK(chord <= speed * 2 * pi / 160 * (1 + 1e-6));
  CHECK(default_grid(20) == 256);
  CHECK(default_grid(100) == 800);
}
