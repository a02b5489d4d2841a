#include "rfk/sphere_model.hpp"

#include <algorithm>
#include <cmath>

#include "rfk/curve_geometry.hpp"
#include "rfk/error.hpp"
#include "rfk/rng.hpp"
#include "rfk/segments.hpp"

namespace rfk {

SpherePolygon sample_sphere_polygon(int n, std::uint64_t seed, std::uint64_t stream) {
  if (n < 3) throw ValidationError("a sphere polygon needs at least 3 vertices");
  const CounterRng rng(seed, stream);
  SpherePolygon poly;
  poly.vertices.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto index = static_cast<std::uint64_t>(i);
    for (std::uint32_t attempt = 0;; ++attempt) {
      const std::uint32_t slot = slots::kSphere + 4 * attempt;
      const Vec3 g{rng.gaussian(index, slot), rng.gaussian(index, slot + 1),
                   rng.gaussian(index, slot + 2)};
      const double len = norm(g);
      if (len > 1e-12) {
        poly.vertices.push_back((1.0 / len) * g);
        break;
      }
    }
  }
  return poly;
}

void validate(const SpherePolygon& poly) {
  if (poly.vertices.size() < 3) throw ValidationError("a sphere polygon needs at least 3 vertices");
  for (const Vec3& v : poly.vertices)
    if (!(std::abs(norm(v) - 1.0) <= 1e-12)) throw ValidationError("polygon vertex off the unit sphere");
}

CrossingDiagram polygon_diagram(const SpherePolygon& poly, Vec3 projection,
                                const PolygonDiagramOptions& opts) {
  validate(poly);
  const double len = norm(projection);
  if (!(len > 0.0) || !std::isfinite(len)) throw ValidationError("projection direction must be nonzero");
  const ProjectionFrame frame = ProjectionFrame::from_direction(projection);
  const std::size_t n = poly.vertices.size();
  std::vector<Vec2> plane(n);
  for (std::size_t i = 0; i < n; ++i) plane[i] = frame.project(poly.vertices[i]);
  const SegmentScan scan = segment_intersections(plane);
  if (!scan.degenerate.empty()) throw NonGeneric("projected polygon edges touch or overlap");

  const auto edge_point = [&](std::size_t i, double u) {
    const Vec3 a = poly.vertices[i], b = poly.vertices[(i + 1) % n];
    return a + u * (b - a);
  };
  const auto edge_dir = [&](std::size_t i) { return plane[(i + 1) % n] - plane[i]; };

  CrossingDiagram d;
  struct Event {
    double param;
    int crossing;
    bool over;
  };
  std::vector<Event> events;
  for (const SegmentHit& hit : scan.hits) {
    const double s = static_cast<double>(hit.i) + hit.u, t = static_cast<double>(hit.j) + hit.v;
    const double hs = frame.height(edge_point(hit.i, hit.u)), ht = frame.height(edge_point(hit.j, hit.v));
    if (std::abs(hs - ht) < opts.height_tol) throw NonGeneric("polygon edges cross at nearly equal height");
    const bool first_over = hs > ht;
    const Vec2 ts = edge_dir(hit.i), tt = edge_dir(hit.j);
    const double orientation = first_over ? cross(ts, tt) : cross(tt, ts);
    const int c = d.size();
    d.crossings.push_back({s, t, orientation > 0.0 ? 1 : -1, first_over});
    events.push_back({s, c, first_over});
    events.push_back({t, c, !first_over});
  }
  std::sort(events.begin(), events.end(), [](const Event& l, const Event& r) {
    return l.param < r.param || (l.param == r.param && l.crossing < r.crossing);
  });
  for (const Event& e : events) {
    d.gauss.push_back({e.crossing, e.over});
    d.params.push_back(e.param);
  }
  return d;
}

PolygonDiagramAttempt polygon_generic_diagram(const SpherePolygon& poly, Vec3 projection,
                                              std::uint64_t seed, const PolygonDiagramOptions& opts,
                                              int max_retries) {
  for (int r = 0;; ++r) {
    const Vec3 dir = r == 0 ? normalized(projection) : perturb_direction(projection, 1e-3 * r, seed, r);
    try {
      return {polygon_diagram(poly, dir, opts), dir, r};
    } catch (const NonGeneric&) {
      if (r >= max_retries) throw;
    }
  }
}

}  // namespace rfk
