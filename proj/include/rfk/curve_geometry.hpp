#pragma once

#include <cstdint>
#include <vector>

#include "rfk/diagram.hpp"
#include "rfk/trig_series.hpp"
#include "rfk/vec.hpp"

namespace rfk {

/// Double point gamma(s) = gamma(t) with 0 <= s < t < 2 pi.
struct SelfIntersection {
  double s = 0.0;
  double t = 0.0;
  Vec2 point;
  bool refined = false;
};

struct IntersectionOptions {
  int grid = 0;              // 0 selects default_grid(degree)
  double tol = 1e-11;        // Newton residual target
  int max_newton = 50;
  int grid_doublings = 2;    // extra resolution attempts before reporting NonGeneric
  /// |sin(angle)| between the two tangents below which a crossing counts as tangential.
  double tangency = 1e-9;
};

/// Self-intersections of a plane curve: exact segment tests on the M-point polyline,
/// each candidate refined by Newton on F(s,t) = gamma(s) - gamma(t) with the analytic
/// Jacobian. Throws NonGeneric for tangential crossings.
std::vector<SelfIntersection> find_self_intersections(const PlaneCurve& curve,
                                                      const IntersectionOptions& opts = {});

struct MonteCarloCount {
  double mean = 0.0;
  double standard_error = 0.0;
  std::int64_t samples = 0;
  std::int64_t retries = 0;          // NonGeneric draws replaced by a fresh stream
  std::vector<std::int64_t> counts;  // per sample, unordered pairs
};

/// Mean number of unordered self-intersections over independent plane curves.
/// Sample i uses stream i; a non-generic draw is replaced using stream i + k * 2^32.
MonteCarloCount count_self_intersections_mc(const CoefficientLaw& law, std::int64_t samples,
                                            std::uint64_t seed, const IntersectionOptions& opts = {},
                                            int jobs = 1);

struct DiagramOptions {
  IntersectionOptions intersections;
  double height_tol = 1e-9;  // minimum |height difference| at a crossing
};

/// Crossing diagram of the projection onto the plane orthogonal to `direction`.
/// Over strand = larger height along `direction`; sign from the projected tangents.
CrossingDiagram build_crossing_diagram(const SpaceCurve& curve, Vec3 direction,
                                       const DiagramOptions& opts = {});

/// Result of building a diagram under the perturbation policy.
struct DiagramAttempt {
  CrossingDiagram diagram;
  Vec3 direction;
  int retries = 0;
};

/// Tries `direction`, then up to `max_retries` deterministic perturbations of angle
/// 1e-3 * retry. Rethrows the last NonGeneric if all fail.
DiagramAttempt build_generic_diagram(const SpaceCurve& curve, Vec3 direction, std::uint64_t seed,
                                     const DiagramOptions& opts = {}, int max_retries = 8);

/// Deterministic small rotation of a unit vector used by the perturbation policy.
Vec3 perturb_direction(Vec3 direction, double angle, std::uint64_t seed, int retry);

}  // namespace rfk
