#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "oracles.hpp"
#include "rfk/curve_geometry.hpp"
#include "rfk/error.hpp"
#include "rfk/rng.hpp"
#include "rfk/segments.hpp"

using namespace rfk;
using std::numbers::pi;

namespace {

TrigSeries series(int degree, std::vector<std::pair<int, double>> cos_terms,
                  std::vector<std::pair<int, double>> sin_terms) {
  TrigSeries s(std::vector<double>(degree, 0.0), std::vector<double>(degree, 0.0));
  for (auto [k, v] : cos_terms) s.a[k - 1] = v;
  for (auto [k, v] : sin_terms) s.b[k - 1] = v;
  return s;
}

SpaceCurve trefoil() {
  return {series(3, {}, {{1, 1.0}, {2, 2.0}}), series(3, {{1, 1.0}, {2, -2.0}}, {}), series(3, {}, {{3, -1.0}})};
}

// Same curve traversed from theta + c.
TrigSeries rotated(const TrigSeries& f, double c) {
  TrigSeries g = f;
  for (int k = 1; k <= f.degree(); ++k) {
    const double ck = std::cos(k * c), sk = std::sin(k * c);
    g.a[k - 1] = f.a[k - 1] * ck + f.b[k - 1] * sk;
    g.b[k - 1] = f.b[k - 1] * ck - f.a[k - 1] * sk;
  }
  return g;
}

std::vector<Vec2> points_of(const std::vector<SelfIntersection>& xs) {
  std::vector<Vec2> p;
  for (const auto& x : xs) p.push_back(x.point);
  std::sort(p.begin(), p.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  return p;
}

}  // namespace

TEST_CASE("segment scan basics") {
  const std::vector<Vec2> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(segment_intersections(square).hits.empty());

  const std::vector<Vec2> bowtie{{0, 0}, {1, 1}, {1, 0}, {0, 1}};
  const auto scan = segment_intersections(bowtie);
  REQUIRE(scan.hits.size() == 1);
  CHECK(scan.hits[0].point.x == doctest::Approx(0.5));
  CHECK(scan.hits[0].point.y == doctest::Approx(0.5));

  const std::vector<Vec2> overlap{{0, 0}, {4, 0}, {4, 1}, {3, 0}, {1, 0}, {0, -1}};
  const auto deg = segment_intersections(overlap);
  REQUIRE_FALSE(deg.degenerate.empty());
  CHECK(std::any_of(deg.degenerate.begin(), deg.degenerate.end(),
                    [](const SegmentContact& c) { return c.i == 0 && c.j == 3 && c.collinear_overlap; }));

  CHECK(orient2d({0, 0}, {1, 0}, {0, 1}) == 1);
  CHECK(orient2d({0, 0}, {1, 0}, {0, -1}) == -1);
  CHECK(orient2d({0, 0}, {1, 1}, {3, 3}) == 0);
  // Nearly collinear: the filter alone cannot decide, the exact fallback must.
  CHECK(orient2d({0.5, 0.5}, {12, 12}, {24, 24}) == 0);
}

TEST_CASE("sweep agrees with the quadratic reference on random polylines") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const CounterRng rng(77, s);
    const int n = 4 + static_cast<int>(rng.uniform_int(0, 1, 0, 60));
    std::vector<Vec2> pts;
    for (int i = 0; i < n; ++i) pts.push_back({rng.uniform(i, 2), rng.uniform(i, 3)});
    const auto sweep = segment_intersections(pts, ScanMode::sweep);
    const auto brute = segment_intersections(pts, ScanMode::brute_force);
    CHECK(sweep.hits == brute.hits);
    std::vector<std::pair<std::size_t, std::size_t>> got;
    for (const auto& h : sweep.hits) got.emplace_back(h.i, h.j);
    CHECK(got == oracle::crossing_pairs(pts));
  }
}

TEST_CASE("self-intersections of known curves") {
  const PlaneCurve circle{series(1, {{1, 1.0}}, {}), series(1, {}, {{1, 1.0}})};
  CHECK(find_self_intersections(circle).empty());

  const PlaneCurve eight{series(2, {{1, 1.0}}, {}), series(2, {}, {{2, 1.0}})};
  const auto xs = find_self_intersections(eight);
  REQUIRE(xs.size() == 1);
  CHECK(xs[0].s == doctest::Approx(pi / 2));
  CHECK(xs[0].t == doctest::Approx(3 * pi / 2));
  CHECK(std::abs(xs[0].point.x) < 1e-10);
  CHECK(std::abs(xs[0].point.y) < 1e-10);
  CHECK(xs[0].refined);

  const SpaceCurve k = trefoil();
  const PlaneCurve shadow{k.x, k.y};
  const auto tri = find_self_intersections(shadow);
  CHECK(tri.size() == 3);
  // Dense-grid reference at M = 10^4.
  CHECK(oracle::crossing_pairs(sample_grid(shadow, 10000).points).size() == 3);
  for (const auto& x : tri) {
    CHECK(x.s < x.t);
    CHECK(norm(shadow.point(x.s) - shadow.point(x.t)) < 1e-9);
  }
}

TEST_CASE("random curves: grid stability, reparametrization and the dense reference") {
  const auto law = CoefficientLaw::power_decay(1.0, 12);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const PlaneCurve c = sample_plane_curve(law, 3, s);
    IntersectionOptions o1, o2;
    o1.grid = 256;
    o2.grid = 512;
    const auto a = points_of(find_self_intersections(c, o1));
    const auto b = points_of(find_self_intersections(c, o2));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(norm(a[i] - b[i]) < 1e-8);

    const PlaneCurve r{rotated(c.x, 0.7), rotated(c.y, 0.7)};
    const auto rr = points_of(find_self_intersections(r));
    REQUIRE(rr.size() == a.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(norm(a[i] - rr[i]) < 1e-8);

    CHECK(oracle::crossing_pairs(sample_grid(c, 6000).points).size() == a.size());
  }
}

TEST_CASE("crossing diagrams") {
  const CrossingDiagram d = build_crossing_diagram(trefoil(), {0, 0, 1});
  REQUIRE(d.size() == 3);
  CHECK(d.gauss.size() == 6);
  const int s0 = d.crossings[0].sign;
  for (const auto& c : d.crossings) CHECK(c.sign == s0);
  // Alternating: over and under passages interleave.
  for (std::size_t i = 0; i < 6; ++i) CHECK(d.gauss[i].over != d.gauss[(i + 1) % 6].over);

  const CrossingDiagram flipped = build_crossing_diagram(trefoil(), {0, 0, -1});
  REQUIRE(flipped.size() == 3);
  for (std::size_t i = 0; i < 6; ++i) CHECK(flipped.gauss[i].over != d.gauss[i].over);

  const SpaceCurve planar{series(1, {{1, 1.0}}, {}), series(1, {}, {{1, 1.0}}), series(1, {}, {})};
  CHECK(build_crossing_diagram(planar, normalized(Vec3{0.2, 0.1, 1.0})).empty());

  const auto law = CoefficientLaw::power_decay(1.0, 20);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const SpaceCurve c = sample_space_curve(law, 8, s);
    const CrossingDiagram cd = build_generic_diagram(c, {0, 0, 1}, 1).diagram;
    validate(cd);
    const auto shadow_count = find_self_intersections(PlaneCurve{c.x, c.y}).size();
    CHECK(static_cast<std::size_t>(cd.size()) == shadow_count);
    for (std::size_t i = 1; i < cd.params.size(); ++i) CHECK(cd.params[i - 1] < cd.params[i]);
  }
}

TEST_CASE("perturbation policy is deterministic and small") {
  const Vec3 d{0, 0, 1};
  const Vec3 p1 = perturb_direction(d, 1e-3, 5, 1);
  CHECK(p1 == perturb_direction(d, 1e-3, 5, 1));
  CHECK(norm(p1) == doctest::Approx(1.0));
  CHECK(std::acos(std::clamp(dot(p1, d), -1.0, 1.0)) == doctest::Approx(1e-3).epsilon(1e-6));
}

TEST_CASE("Monte Carlo counting is reproducible") {
  const auto law = CoefficientLaw::power_decay(2.0, 64);
  const auto a = count_self_intersections_mc(law, 1, 42);
  const auto b = count_self_intersections_mc(law, 1, 42);
  CHECK(a.counts == b.counts);
  const auto c = count_self_intersections_mc(law, 40, 42, {}, 1);
  const auto e = count_self_intersections_mc(law, 40, 42, {}, 4);
  CHECK(c.counts == e.counts);
  CHECK(c.mean == e.mean);
  CHECK(c.samples == 40);
  CHECK_THROWS_AS(count_self_intersections_mc(law, 0, 1), ValidationError);
}
