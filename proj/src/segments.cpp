#include "rfk/segments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

namespace rfk {

namespace {

struct TwoTerm {
  double hi, lo;
};

inline TwoTerm two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline TwoTerm two_product(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

// Adds b to a nonoverlapping expansion (increasing magnitude), dropping zeros.
template <std::size_t Cap>
struct Expansion {
  std::array<double, Cap> c{};
  std::size_t n = 0;

  void add(double b) {
    std::array<double, Cap> out{};
    std::size_t m = 0;
    double q = b;
    for (std::size_t i = 0; i < n; ++i) {
      const TwoTerm t = two_sum(q, c[i]);
      q = t.hi;
      if (t.lo != 0.0) out[m++] = t.lo;
    }
    if (q != 0.0 || m == 0) out[m++] = q;
    c = out;
    n = m;
  }

  int sign() const {
    for (std::size_t i = n; i-- > 0;) {
      if (c[i] > 0.0) return 1;
      if (c[i] < 0.0) return -1;
    }
    return 0;
  }
};

int orient2d_exact(Vec2 a, Vec2 b, Vec2 c) {
  // bx*cy - by*cx - ax*cy + ax*by + ay*cx - ay*bx, every product split exactly.
  const std::array<TwoTerm, 6> terms = {
      two_product(b.x, c.y),  two_product(-b.y, c.x), two_product(-a.x, c.y),
      two_product(a.x, b.y),  two_product(a.y, c.x),  two_product(-a.y, b.x),
  };
  Expansion<16> e;
  for (const TwoTerm& t : terms) {
    e.add(t.lo);
    e.add(t.hi);
  }
  return e.sign();
}

constexpr double kEps = std::numeric_limits<double>::epsilon() * 0.5;
constexpr double kOrientBound = (3.0 + 16.0 * kEps) * kEps;

bool on_segment_box(Vec2 p, Vec2 q, Vec2 r) {
  return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
         r.y <= std::max(p.y, q.y);
}

struct PairTester {
  std::span<const Vec2> pts;
  SegmentScan& out;

  void test(std::size_t i, std::size_t j) {
    const std::size_t n = pts.size();
    if (i > j) std::swap(i, j);
    if (j == i + 1 || (i == 0 && j == n - 1) || i == j) return;
    const Vec2 p1 = pts[i], p2 = pts[(i + 1) % n];
    const Vec2 q1 = pts[j], q2 = pts[(j + 1) % n];
    const int o1 = orient2d(p1, p2, q1);
    const int o2 = orient2d(p1, p2, q2);
    const int o3 = orient2d(q1, q2, p1);
    const int o4 = orient2d(q1, q2, p2);
    if (o1 * o2 < 0 && o3 * o4 < 0) {
      const Vec2 r = p2 - p1, s = q2 - q1, w = q1 - p1;
      const double denom = cross(r, s);
      SegmentHit h;
      h.i = i;
      h.j = j;
      h.u = std::clamp(cross(w, s) / denom, 0.0, 1.0);
      h.v = std::clamp(cross(w, r) / denom, 0.0, 1.0);
      h.point = p1 + h.u * r;
      out.hits.push_back(h);
      return;
    }
    if (o1 == 0 && o2 == 0) {
      // Collinear: overlapping if the bounding boxes share more than nothing.
      if (on_segment_box(p1, p2, q1) || on_segment_box(p1, p2, q2) || on_segment_box(q1, q2, p1) ||
          on_segment_box(q1, q2, p2))
        out.degenerate.push_back({i, j, true});
      return;
    }
    if ((o1 == 0 && on_segment_box(p1, p2, q1)) || (o2 == 0 && on_segment_box(p1, p2, q2)) ||
        (o3 == 0 && on_segment_box(q1, q2, p1)) || (o4 == 0 && on_segment_box(q1, q2, p2)))
      out.degenerate.push_back({i, j, false});
  }
};

}  // namespace

int orient2d(Vec2 a, Vec2 b, Vec2 c) noexcept {
  const double left = (b.x - a.x) * (c.y - a.y);
  const double right = (b.y - a.y) * (c.x - a.x);
  const double det = left - right;
  const double bound = kOrientBound * (std::abs(left) + std::abs(right));
  if (det > bound) return 1;
  if (-det > bound) return -1;
  return orient2d_exact(a, b, c);
}

SegmentScan segment_intersections(std::span<const Vec2> pts, ScanMode mode) {
  SegmentScan out;
  const std::size_t n = pts.size();
  if (n < 4) return out;
  PairTester tester{pts, out};

  if (mode == ScanMode::brute_force) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 2; j < n; ++j) tester.test(i, j);
  } else {
    struct Box {
      double xmin, xmax, ymin, ymax;
    };
    std::vector<Box> boxes(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 p = pts[i], q = pts[(i + 1) % n];
      boxes[i] = {std::min(p.x, q.x), std::max(p.x, q.x), std::min(p.y, q.y), std::max(p.y, q.y)};
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
      return boxes[l].xmin < boxes[r].xmin || (boxes[l].xmin == boxes[r].xmin && l < r);
    });
    std::vector<std::size_t> active;
    for (const std::size_t s : order) {
      const Box& bs = boxes[s];
      std::erase_if(active, [&](std::size_t r) { return boxes[r].xmax < bs.xmin; });
      for (const std::size_t r : active) {
        const Box& br = boxes[r];
        if (br.ymax < bs.ymin || bs.ymax < br.ymin) continue;
        tester.test(r, s);
      }
      active.push_back(s);
    }
  }

  const auto by_pair = [](const auto& l, const auto& r) {
    return l.i < r.i || (l.i == r.i && l.j < r.j);
  };
  std::sort(out.hits.begin(), out.hits.end(), by_pair);
  std::sort(out.degenerate.begin(), out.degenerate.end(), by_pair);
  return out;
}

}  // namespace rfk
