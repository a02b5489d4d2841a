#include "rfk/curve_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>

#include "rfk/error.hpp"
#include "rfk/parallel.hpp"
#include "rfk/rng.hpp"
#include "rfk/segments.hpp"

namespace rfk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double coefficient_scale(const PlaneCurve& c) {
  double s = 0.0;
  for (int k = 0; k < c.degree(); ++k)
    s += std::abs(c.x.a[k]) + std::abs(c.x.b[k]) + std::abs(c.y.a[k]) + std::abs(c.y.b[k]);
  return std::max(s, 1e-300);
}

double periodic_distance(double a, double b) {
  const double d = std::abs(reduce_angle(a) - reduce_angle(b));
  return std::min(d, kTwoPi - d);
}

struct CurveJet {
  Vec2 p, dp;
};

CurveJet curve_jet(const PlaneCurve& c, double theta) {
  const auto jx = c.x.jet(theta);
  const auto jy = c.y.jet(theta);
  return {{jx.f, jy.f}, {jx.df, jy.df}};
}

bool segments_cross(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2, double& u, double& v) {
  const int o1 = orient2d(p1, p2, q1), o2 = orient2d(p1, p2, q2);
  const int o3 = orient2d(q1, q2, p1), o4 = orient2d(q1, q2, p2);
  if (o1 * o2 > 0 || o3 * o4 > 0) return false;
  const Vec2 r = p2 - p1, s = q2 - q1, w = q1 - p1;
  const double den = cross(r, s);
  if (den == 0.0) return false;
  u = std::clamp(cross(w, s) / den, 0.0, 1.0);
  v = std::clamp(cross(w, r) / den, 0.0, 1.0);
  return true;
}

// Newton iteration on F(s,t) = gamma(s) - gamma(t). Fails if it wanders more than
// `radius` from the start or does not reach the residual target.
std::optional<std::pair<double, double>> newton(const PlaneCurve& c, double s, double t,
                                                double target, double radius, int max_iter) {
  const double s0 = s, t0 = t;
  for (int it = 0; it <= max_iter; ++it) {
    const CurveJet a = curve_jet(c, s), b = curve_jet(c, t);
    const Vec2 f = a.p - b.p;
    if (std::max(std::abs(f.x), std::abs(f.y)) < target) return std::make_pair(s, t);
    if (it == max_iter) break;
    // J = [gamma'(s), -gamma'(t)]
    const double j11 = a.dp.x, j12 = -b.dp.x, j21 = a.dp.y, j22 = -b.dp.y;
    const double det = j11 * j22 - j12 * j21;
    if (det == 0.0 || !std::isfinite(det)) return std::nullopt;
    const double ds = (-f.x * j22 + f.y * j12) / det;
    const double dt = (-j11 * f.y + j21 * f.x) / det;
    s += ds;
    t += dt;
    if (!std::isfinite(s) || !std::isfinite(t) || std::abs(s - s0) > radius ||
        std::abs(t - t0) > radius)
      return std::nullopt;
  }
  return std::nullopt;
}

// Repeated halving of the two parameter intervals, keeping the chord pair that crosses.
std::optional<std::pair<double, double>> chord_bisection(const PlaneCurve& c, double s_lo,
                                                         double s_hi, double t_lo, double t_hi) {
  for (int level = 0; level < 60; ++level) {
    const double sm = 0.5 * (s_lo + s_hi), tm = 0.5 * (t_lo + t_hi);
    const double ss[3] = {s_lo, sm, s_hi}, ts[3] = {t_lo, tm, t_hi};
    Vec2 ps[3], pt[3];
    for (int k = 0; k < 3; ++k) {
      ps[k] = c.point(ss[k]);
      pt[k] = c.point(ts[k]);
    }
    bool found = false;
    for (int a = 0; a < 2 && !found; ++a)
      for (int b = 0; b < 2 && !found; ++b) {
        double u, v;
        if (segments_cross(ps[a], ps[a + 1], pt[b], pt[b + 1], u, v)) {
          s_lo = ss[a];
          s_hi = ss[a + 1];
          t_lo = ts[b];
          t_hi = ts[b + 1];
          found = true;
        }
      }
    if (!found) return std::nullopt;
  }
  return std::make_pair(0.5 * (s_lo + s_hi), 0.5 * (t_lo + t_hi));
}

struct RefineOutcome {
  bool ok = false;
  std::vector<SelfIntersection> points;
};

// Parameters of a closed polyline that follows the curve closely: starting from m uniform
// points, an interval is halved while h * |gamma''| is not small against |gamma'| at its
// ends and midpoint. Small loops near cusps are thereby resolved.
std::vector<double> adaptive_params(const PlaneCurve& curve, int m, double turn) {
  struct Sample {
    double speed, accel;
  };
  const auto sample = [&](double theta) {
    const auto jx = curve.x.jet(theta), jy = curve.y.jet(theta);
    return Sample{std::hypot(jx.df, jy.df), std::hypot(jx.d2f, jy.d2f)};
  };
  constexpr int kMaxDepth = 16;
  std::vector<double> out;
  const double h0 = kTwoPi / m;
  std::function<void(double, double, Sample, Sample, int)> split = [&](double a, double b, Sample sa,
                                                                       Sample sb, int depth) {
    const double mid = 0.5 * (a + b);
    const Sample sm = sample(mid);
    const double accel = std::max({sa.accel, sm.accel, sb.accel});
    const double speed = std::min({sa.speed, sm.speed, sb.speed});
    if (depth >= kMaxDepth || (b - a) * accel <= turn * speed) {
      out.push_back(a);
      return;
    }
    split(a, mid, sa, sm, depth + 1);
    split(mid, b, sm, sb, depth + 1);
  };
  Sample first = sample(0.0), prev = first;
  for (int i = 0; i < m; ++i) {
    const Sample next = i + 1 < m ? sample((i + 1) * h0) : first;
    split(i * h0, (i + 1) * h0, prev, next, 0);
    prev = next;
  }
  return out;
}

// Gauss's parity condition for planar curves: between the two passages of any double point
// lie an even number of passages. A missed or spurious crossing almost always breaks it.
bool gauss_parity_ok(const std::vector<SelfIntersection>& points) {
  struct Event {
    double param;
    std::size_t id;
  };
  std::vector<Event> events;
  for (std::size_t c = 0; c < points.size(); ++c) {
    events.push_back({points[c].s, c});
    events.push_back({points[c].t, c});
  }
  std::sort(events.begin(), events.end(),
            [](const Event& l, const Event& r) { return l.param < r.param; });
  std::vector<std::size_t> first(points.size(), events.size());
  for (std::size_t p = 0; p < events.size(); ++p) {
    std::size_t& f = first[events[p].id];
    if (f == events.size()) {
      f = p;
    } else if ((p - f - 1) % 2 != 0) {
      return false;
    }
  }
  return true;
}

bool near_interval(double x, double lo, double hi) {
  const double slack = 0.25 * (hi - lo);
  const double mid = 0.5 * (lo + hi);
  return periodic_distance(x, mid) <= 0.5 * (hi - lo) + slack;
}

// Scans the adaptive polyline and refines every chord crossing by Newton. Segments whose
// crossings fail to refine (typically near-tangent strands, where the chords mislead) are
// halved, and the scan repeated, up to kLocalRounds times.
RefineOutcome refine_grid(const PlaneCurve& curve, int m, double turn,
                          const IntersectionOptions& opts) {
  constexpr int kLocalRounds = 24;
  RefineOutcome out;
  std::vector<double> params = adaptive_params(curve, m, turn);
  const double target = opts.tol * coefficient_scale(curve);
  for (int round = 0;; ++round) {
    std::vector<Vec2> points;
    points.reserve(params.size());
    for (double theta : params) points.push_back(curve.point(theta));
    const SegmentScan scan = segment_intersections(points);
    const std::size_t count = params.size();
    const auto upper = [&](std::size_t i) { return i + 1 < count ? params[i + 1] : kTwoPi; };
    std::vector<char> split(count, 0);
    const auto mark = [&](std::size_t i) {
      split[(i + count - 1) % count] = split[i] = split[(i + 1) % count] = 1;
    };
    for (const SegmentContact& c : scan.degenerate) {
      mark(c.i);
      mark(c.j);
    }
    out.points.clear();
    for (const SegmentHit& hit : scan.hits) {
      const double hs = upper(hit.i) - params[hit.i], ht = upper(hit.j) - params[hit.j];
      const double h = std::max(hs, ht);
      auto st = newton(curve, params[hit.i] + hit.u * hs, params[hit.j] + hit.v * ht, target,
                       2.0 * h, opts.max_newton);
      if (!st) {
        auto bis = chord_bisection(curve, params[hit.i], upper(hit.i), params[hit.j], upper(hit.j));
        if (bis) st = newton(curve, bis->first, bis->second, target, 2.0 * h, opts.max_newton);
      }
      // Newton may slide to a neighbouring crossing; only accept roots on the hit's own segments.
      if (!st || !near_interval(st->first, params[hit.i], upper(hit.i)) ||
          !near_interval(st->second, params[hit.j], upper(hit.j))) {
        mark(hit.i);
        mark(hit.j);
        continue;
      }
      double s = reduce_angle(st->first), t = reduce_angle(st->second);
      if (s > t) std::swap(s, t);
      if (periodic_distance(s, t) < h * 1e-3) {  // collapsed onto the diagonal
        mark(hit.i);
        mark(hit.j);
        continue;
      }
      const Vec2 ts = curve.tangent(s), tt = curve.tangent(t);
      const double sine = std::abs(cross(ts, tt)) / (norm(ts) * norm(tt));
      if (!(sine > opts.tangency))
        throw NonGeneric("tangential self-intersection near s=" + std::to_string(s) +
                         ", t=" + std::to_string(t));
      out.points.push_back({s, t, curve.point(s), true});
    }
    if (std::find(split.begin(), split.end(), 1) == split.end()) break;
    if (round == kLocalRounds) return out;
    std::vector<double> next;
    next.reserve(count * 2);
    for (std::size_t i = 0; i < count; ++i) {
      next.push_back(params[i]);
      if (split[i]) next.push_back(0.5 * (params[i] + upper(i)));
    }
    params = std::move(next);
  }
  std::sort(out.points.begin(), out.points.end(),
            [](const SelfIntersection& l, const SelfIntersection& r) {
              return l.s < r.s || (l.s == r.s && l.t < r.t);
            });
  // Merge duplicates produced by neighbouring segment pairs.
  const double merge = std::max(10.0 * opts.tol, 1e-12);
  std::vector<SelfIntersection> unique;
  for (const SelfIntersection& p : out.points) {
    const bool dup = std::any_of(unique.begin(), unique.end(), [&](const SelfIntersection& q) {
      return periodic_distance(p.s, q.s) < merge && periodic_distance(p.t, q.t) < merge;
    });
    if (!dup) unique.push_back(p);
  }
  out.points = std::move(unique);
  out.ok = gauss_parity_ok(out.points);
  return out;
}

}  // namespace

std::vector<SelfIntersection> find_self_intersections(const PlaneCurve& curve,
                                                      const IntersectionOptions& opts) {
  if (!(opts.tol > 0.0)) throw ValidationError("intersection tolerance must be positive");
  if (curve.x.degree() != curve.y.degree()) throw ValidationError("coordinate degrees differ");
  int m = opts.grid > 0 ? opts.grid : default_grid(curve.degree());
  if (m < 4) throw ValidationError("grid must have at least 4 points");
  double turn = 0.05;
  for (int attempt = 0; attempt <= opts.grid_doublings; ++attempt, m *= 2, turn *= 0.5) {
    RefineOutcome r = refine_grid(curve, m, turn, opts);
    if (r.ok) return std::move(r.points);
  }
  throw NonGeneric("self-intersection refinement failed at every grid resolution");
}

MonteCarloCount count_self_intersections_mc(const CoefficientLaw& law, std::int64_t samples,
                                            std::uint64_t seed, const IntersectionOptions& opts,
                                            int jobs) {
  if (samples < 1) throw ValidationError("samples must be at least 1");
  constexpr int kMaxRetries = 16;
  MonteCarloCount out;
  out.samples = samples;
  out.counts.assign(static_cast<std::size_t>(samples), 0);
  std::vector<int> retries(static_cast<std::size_t>(samples), 0);
  parallel_for(samples, jobs, [&](std::int64_t i) {
    for (int r = 0;; ++r) {
      const std::uint64_t stream = static_cast<std::uint64_t>(i) + (static_cast<std::uint64_t>(r) << 32);
      try {
        const auto pts = find_self_intersections(sample_plane_curve(law, seed, stream), opts);
        out.counts[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(pts.size());
        retries[static_cast<std::size_t>(i)] = r;
        return;
      } catch (const NonGeneric&) {
        if (r >= kMaxRetries) throw;
      }
    }
  });
  double sum = 0.0, sum2 = 0.0;
  for (auto c : out.counts) {
    sum += static_cast<double>(c);
    sum2 += static_cast<double>(c) * static_cast<double>(c);
  }
  for (int r : retries) out.retries += r;
  const double n = static_cast<double>(samples);
  out.mean = sum / n;
  const double var = samples > 1 ? std::max(0.0, (sum2 - n * out.mean * out.mean) / (n - 1.0)) : 0.0;
  out.standard_error = std::sqrt(var / n);
  return out;
}

CrossingDiagram build_crossing_diagram(const SpaceCurve& curve, Vec3 direction,
                                       const DiagramOptions& opts) {
  const double len = norm(direction);
  if (!(len > 0.0) || !std::isfinite(len)) throw ValidationError("projection direction must be nonzero");
  const ProjectionFrame frame = ProjectionFrame::from_direction(direction);
  const Projection proj = project(curve, frame);
  const auto points = find_self_intersections(proj.plane, opts.intersections);

  double height_scale = 0.0;
  for (int k = 0; k < proj.height.degree(); ++k)
    height_scale += std::abs(proj.height.a[k]) + std::abs(proj.height.b[k]);
  height_scale = std::max(height_scale, 1.0);

  CrossingDiagram d;
  struct Event {
    double param;
    int crossing;
    bool over;
  };
  std::vector<Event> events;
  for (std::size_t c = 0; c < points.size(); ++c) {
    const SelfIntersection& p = points[c];
    const double hs = proj.height.value(p.s), ht = proj.height.value(p.t);
    if (std::abs(hs - ht) < opts.height_tol * height_scale)
      throw NonGeneric("crossing strands at nearly equal height");
    const bool first_over = hs > ht;
    const Vec2 ts = proj.plane.tangent(p.s), tt = proj.plane.tangent(p.t);
    const double orientation = first_over ? cross(ts, tt) : cross(tt, ts);
    const int sign = orientation > 0.0 ? 1 : -1;
    d.crossings.push_back({p.s, p.t, sign, first_over});
    events.push_back({p.s, static_cast<int>(c), first_over});
    events.push_back({p.t, static_cast<int>(c), !first_over});
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

Vec3 perturb_direction(Vec3 direction, double angle, std::uint64_t seed, int retry) {
  const Vec3 d = normalized(direction);
  const CounterRng rng(seed, static_cast<std::uint64_t>(retry));
  Vec3 axis;
  for (std::uint64_t k = 0;; ++k) {
    const Vec3 g{rng.gaussian(k, slots::kPerturb), rng.gaussian(k, slots::kPerturb + 1),
                 rng.gaussian(k, slots::kPerturb + 2)};
    axis = g - dot(g, d) * d;
    if (norm(axis) > 1e-6) break;
  }
  axis = normalized(axis);
  return normalized(std::cos(angle) * d + std::sin(angle) * axis);
}

DiagramAttempt build_generic_diagram(const SpaceCurve& curve, Vec3 direction, std::uint64_t seed,
                                     const DiagramOptions& opts, int max_retries) {
  for (int r = 0;; ++r) {
    const Vec3 dir = r == 0 ? normalized(direction) : perturb_direction(direction, 1e-3 * r, seed, r);
    try {
      return {build_crossing_diagram(curve, dir, opts), dir, r};
    } catch (const NonGeneric&) {
      if (r >= max_retries) throw;
    }
  }
}

}  // namespace rfk
