#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rfk/vec.hpp"

namespace rfk {

/// Exact sign of the orientation determinant of (a, b, c): +1 counterclockwise,
/// -1 clockwise, 0 collinear. Uses a floating-point filter with an exact
/// expansion-arithmetic fallback.
int orient2d(Vec2 a, Vec2 b, Vec2 c) noexcept;

/// Transversal crossing of segments i and j (i < j) of a closed polyline.
/// Segment i runs from point i to point (i+1) mod n; u, v are the local parameters in (0,1).
struct SegmentHit {
  std::size_t i = 0;
  std::size_t j = 0;
  double u = 0.0;
  double v = 0.0;
  Vec2 point;

  friend bool operator==(const SegmentHit& l, const SegmentHit& r) { return l.i == r.i && l.j == r.j; }
};

/// Non-transversal contact between non-adjacent segments (touching or collinear overlap).
struct SegmentContact {
  std::size_t i = 0;
  std::size_t j = 0;
  bool collinear_overlap = false;
};

struct SegmentScan {
  std::vector<SegmentHit> hits;          // sorted by (i, j)
  std::vector<SegmentContact> degenerate;
};

enum class ScanMode { sweep, brute_force };

/// All transversal intersections between non-adjacent segments of the closed polyline.
/// The sweep orders segments by their x-interval and only tests overlapping pairs;
/// brute_force tests every pair and serves as the reference.
SegmentScan segment_intersections(std::span<const Vec2> closed_polyline,
                                  ScanMode mode = ScanMode::sweep);

}  // namespace rfk
