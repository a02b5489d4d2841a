#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "rfk/error.hpp"
#include "rfk/knot_algebra.hpp"
#include "rfk/sphere_model.hpp"

using namespace rfk;

namespace {

Vec3 rotate(Vec3 v, double a, double b) {
  const Vec3 r1{std::cos(a) * v.x - std::sin(a) * v.y, std::sin(a) * v.x + std::cos(a) * v.y, v.z};
  return {r1.x, std::cos(b) * r1.y - std::sin(b) * r1.z, std::sin(b) * r1.y + std::cos(b) * r1.z};
}

}  // namespace

TEST_CASE("uniform points on the sphere") {
  constexpr int kPoints = 100000;
  const SpherePolygon p = sample_sphere_polygon(kPoints, 3, 0);
  REQUIRE(p.vertices.size() == kPoints);
  double mx = 0, my = 0, mz = 0, zz = 0;
  std::vector<double> z;
  for (const auto& v : p.vertices) {
    CHECK(std::abs(norm(v) - 1) < 1e-12);
    mx += v.x;
    my += v.y;
    mz += v.z;
    zz += v.z * v.z;
    z.push_back(v.z);
  }
  CHECK(std::abs(mx / kPoints) < 0.01);
  CHECK(std::abs(my / kPoints) < 0.01);
  CHECK(std::abs(mz / kPoints) < 0.01);
  CHECK(std::abs(zz / kPoints - 1.0 / 3) < 0.01);
  // Archimedes: z is uniform on [-1, 1]. Kolmogorov-Smirnov at the 1% level.
  std::sort(z.begin(), z.end());
  double ks = 0;
  for (int i = 0; i < kPoints; ++i) {
    const double cdf = (z[i] + 1) / 2;
    ks = std::max({ks, std::abs(cdf - static_cast<double>(i) / kPoints), std::abs(cdf - (i + 1.0) / kPoints)});
  }
  CHECK(ks < 1.63 / std::sqrt(static_cast<double>(kPoints)));

  const SpherePolygon a = sample_sphere_polygon(10, 3, 4);
  const SpherePolygon b = sample_sphere_polygon(10, 3, 4);
  for (int i = 0; i < 10; ++i) CHECK(a.vertices[i] == b.vertices[i]);
  CHECK_FALSE(a.vertices[0] == sample_sphere_polygon(10, 3, 5).vertices[0]);
}

TEST_CASE("validation and trivial polygons") {
  CHECK_THROWS_AS(validate(SpherePolygon{{{1, 0, 0}, {0, 1, 0}}}), ValidationError);
  CHECK_THROWS_AS(validate(SpherePolygon{{{1, 0, 0}, {0, 1, 0}, {0, 0, 2}}}), ValidationError);
  CHECK_THROWS_AS(sample_sphere_polygon(2, 1, 0), ValidationError);

  const SpherePolygon tri = sample_sphere_polygon(3, 8, 0);
  CHECK(polygon_diagram(tri, {0, 0, 1}).empty());
  const SpherePolygon square{{{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}}};
  CHECK(polygon_diagram(square, {0, 0, 1}).empty());
  const SpherePolygon bow{{{1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {-1, 0, 0}}};
  CHECK_THROWS_AS(polygon_diagram(bow, {0, 0, 1}), NonGeneric);
}

TEST_CASE("knot type is independent of the projection") {
  int nontrivial = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const SpherePolygon p = sample_sphere_polygon(20, 11, s);
    const auto base = polygon_generic_diagram(p, {0, 0, 1}, s).diagram;
    validate(base);
    const LaurentPolynomial ref = alexander_polynomial(base);
    if (ref.span() > 0) ++nontrivial;
    for (const Vec3 d : {Vec3{1, 0, 0}, normalized(Vec3{0.3, -0.7, 0.2})})
      CHECK(alexander_polynomial(polygon_generic_diagram(p, d, s).diagram) == ref);

    SpherePolygon r = p;
    for (auto& v : r.vertices) v = rotate(v, 0.4, 1.1);
    const auto rd = polygon_generic_diagram(r, rotate({0, 0, 1}, 0.4, 1.1), s).diagram;
    CHECK(rd.size() == base.size());
    CHECK(alexander_polynomial(rd) == ref);
  }
  CHECK(nontrivial > 0);
}
