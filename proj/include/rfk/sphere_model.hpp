#pragma once

#include <cstdint>
#include <vector>

#include "rfk/diagram.hpp"
#include "rfk/vec.hpp"

namespace rfk {

/// Closed polygon p_1 -> p_2 -> ... -> p_N -> p_1 through points of the unit sphere.
struct SpherePolygon {
  std::vector<Vec3> vertices;
};

/// N independent uniform points on the unit sphere (normalized standard Gaussians), in draw
/// order. A draw with norm below 1e-12 is redrawn from the next attempt slot.
SpherePolygon sample_sphere_polygon(int n, std::uint64_t seed, std::uint64_t stream);

/// Throws ValidationError unless N >= 3 and every vertex has unit norm to 1e-12.
void validate(const SpherePolygon& poly);

struct PolygonDiagramOptions {
  double height_tol = 1e-12;  // minimum height difference at a crossing
};

/// Crossing diagram of the projection along `projection`. Edge crossings come from the exact
/// segment test; heights are read off the 3D edges at the crossing parameters. Passage
/// parameters are edge index + local parameter. NonGeneric on touching or collinear edges and
/// near-equal heights.
CrossingDiagram polygon_diagram(const SpherePolygon& poly, Vec3 projection,
                                const PolygonDiagramOptions& opts = {});

struct PolygonDiagramAttempt {
  CrossingDiagram diagram;
  Vec3 direction;
  int retries = 0;
};

/// polygon_diagram with the perturbation policy of build_generic_diagram.
PolygonDiagramAttempt polygon_generic_diagram(const SpherePolygon& poly, Vec3 projection,
                                              std::uint64_t seed,
                                              const PolygonDiagramOptions& opts = {},
                                              int max_retries = 8);

}  // namespace rfk
