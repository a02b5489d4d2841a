#include "rfk/trig_series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rfk/error.hpp"
#include "rfk/rng.hpp"

namespace rfk {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

CoefficientLaw CoefficientLaw::power_decay(double alpha, int degree) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw ValidationError("decay exponent alpha must be positive, got " + std::to_string(alpha));
  if (degree < 1) throw ValidationError("degree must be at least 1");
  return CoefficientLaw(DecayKind::power_decay, alpha, degree);
}

CoefficientLaw CoefficientLaw::no_decay(int degree) {
  if (degree < 1) throw ValidationError("degree must be at least 1");
  return CoefficientLaw(DecayKind::no_decay, 0.0, degree);
}

double CoefficientLaw::variance_at(int k) const noexcept {
  if (k < 1 || k > degree_) return 0.0;
  if (kind_ == DecayKind::no_decay) return 1.0;
  return std::pow(static_cast<double>(k), -2.0 * alpha_);
}

double CoefficientLaw::std_dev(int k) const noexcept {
  if (k < 1 || k > degree_) return 0.0;
  if (kind_ == DecayKind::no_decay) return 1.0;
  return std::pow(static_cast<double>(k), -alpha_);
}

double CoefficientLaw::truncation_tail_bound() const noexcept {
  if (kind_ == DecayKind::no_decay || alpha_ <= 1.0) return std::numeric_limits<double>::infinity();
  // sum_{k>N} k^-a <= int_N^inf x^-a dx = N^{1-a}/(a-1)
  const double n = degree_;
  return 2.0 * std::pow(n, 1.0 - alpha_) / (alpha_ - 1.0);
}

TrigSeries::TrigSeries(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs)
    : a(std::move(cos_coeffs)), b(std::move(sin_coeffs)) {
  if (a.size() != b.size()) throw ValidationError("cosine and sine coefficient counts differ");
}

double reduce_angle(double theta) noexcept {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

TrigSeries::Jet TrigSeries::jet(double theta) const {
  const double t = reduce_angle(theta);
  const double c1 = std::cos(t), s1 = std::sin(t);
  double c = c1, s = s1;
  double f = 0.0, df = 0.0, d2f = 0.0;
  const int n = degree();
  for (int k = 1; k <= n; ++k) {
    const double ak = a[k - 1], bk = b[k - 1];
    const double kk = k;
    f += ak * c + bk * s;
    df += kk * (bk * c - ak * s);
    d2f -= kk * kk * (ak * c + bk * s);
    // Restart from libm every 64 terms to bound recurrence drift.
    if ((k & 63) == 0) {
      c = std::cos((k + 1) * t);
      s = std::sin((k + 1) * t);
    } else {
      const double cn = c * c1 - s * s1;
      s = s * c1 + c * s1;
      c = cn;
    }
  }
  return {f, df, d2f};
}

double TrigSeries::value(double theta) const { return jet(theta).f; }

double TrigSeries::derivative(double theta, int order) const {
  const Jet j = jet(theta);
  switch (order) {
    case 0: return j.f;
    case 1: return j.df;
    case 2: return j.d2f;
    default: throw ValidationError("derivative order must be 0, 1 or 2");
  }
}

double evaluate(const TrigSeries& f, double theta) { return f.value(theta); }

double evaluate_derivative(const TrigSeries& f, double theta, int order) {
  if (order != 1 && order != 2) throw ValidationError("derivative order must be 1 or 2");
  return f.derivative(theta, order);
}

TrigSeries combine(double w0, const TrigSeries& s0, double w1, const TrigSeries& s1) {
  if (s0.degree() != s1.degree()) throw ValidationError("series degrees differ");
  TrigSeries out = s0;
  for (int k = 0; k < s0.degree(); ++k) {
    out.a[k] = w0 * s0.a[k] + w1 * s1.a[k];
    out.b[k] = w0 * s0.b[k] + w1 * s1.b[k];
  }
  return out;
}

TrigSeries combine(double w0, const TrigSeries& s0, double w1, const TrigSeries& s1, double w2,
                   const TrigSeries& s2) {
  if (s0.degree() != s1.degree() || s0.degree() != s2.degree())
    throw ValidationError("series degrees differ");
  TrigSeries out = s0;
  for (int k = 0; k < s0.degree(); ++k) {
    out.a[k] = w0 * s0.a[k] + w1 * s1.a[k] + w2 * s2.a[k];
    out.b[k] = w0 * s0.b[k] + w1 * s1.b[k] + w2 * s2.b[k];
  }
  return out;
}

Projection project(const SpaceCurve& c, const ProjectionFrame& fr) {
  return {PlaneCurve{combine(fr.e1.x, c.x, fr.e1.y, c.y, fr.e1.z, c.z),
                     combine(fr.e2.x, c.x, fr.e2.y, c.y, fr.e2.z, c.z)},
          combine(fr.d.x, c.x, fr.d.y, c.y, fr.d.z, c.z)};
}

TrigSeries sample_series(const CoefficientLaw& law, std::uint64_t seed, std::uint64_t stream,
                         int coordinate) {
  const CounterRng rng(seed, stream);
  const int n = law.degree();
  std::vector<double> a(n), b(n);
  const auto slot_cos = slots::kCurve + 2u * static_cast<std::uint32_t>(coordinate);
  for (int k = 1; k <= n; ++k) {
    const double sd = law.std_dev(k);
    a[k - 1] = sd * rng.gaussian(static_cast<std::uint64_t>(k), slot_cos);
    b[k - 1] = sd * rng.gaussian(static_cast<std::uint64_t>(k), slot_cos + 1);
  }
  return TrigSeries(std::move(a), std::move(b));
}

PlaneCurve sample_plane_curve(const CoefficientLaw& law, std::uint64_t seed, std::uint64_t stream) {
  return {sample_series(law, seed, stream, 0), sample_series(law, seed, stream, 1)};
}

SpaceCurve sample_space_curve(const CoefficientLaw& law, std::uint64_t seed, std::uint64_t stream) {
  return {sample_series(law, seed, stream, 0), sample_series(law, seed, stream, 1),
          sample_series(law, seed, stream, 2)};
}

namespace {

// Values of f on the M-point grid using exact table lookup of cos(2 pi j / M).
std::vector<double> grid_values(const TrigSeries& f, const std::vector<double>& cos_table,
                                const std::vector<double>& sin_table) {
  const auto m = static_cast<std::int64_t>(cos_table.size());
  std::vector<double> out(static_cast<std::size_t>(m), 0.0);
  for (std::int64_t i = 0; i < m; ++i) {
    double acc = 0.0;
    std::int64_t j = 0;
    for (int k = 1; k <= f.degree(); ++k) {
      j += i;
      if (j >= m) j -= m;
      acc += f.a[k - 1] * cos_table[j] + f.b[k - 1] * sin_table[j];
    }
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

struct GridTables {
  std::vector<double> cos_t, sin_t, params;
  explicit GridTables(int m) : cos_t(m), sin_t(m), params(m) {
    for (int j = 0; j < m; ++j) {
      params[j] = kTwoPi * j / m;
      cos_t[j] = std::cos(params[j]);
      sin_t[j] = std::sin(params[j]);
    }
  }
};

}  // namespace

Polyline<Vec2> sample_grid(const PlaneCurve& curve, int samples) {
  if (samples < 3) throw ValidationError("grid needs at least 3 points");
  const GridTables t(samples);
  const auto xs = grid_values(curve.x, t.cos_t, t.sin_t);
  const auto ys = grid_values(curve.y, t.cos_t, t.sin_t);
  Polyline<Vec2> out;
  out.points.resize(samples);
  for (int i = 0; i < samples; ++i) out.points[i] = {xs[i], ys[i]};
  out.params = t.params;
  return out;
}

Polyline<Vec3> sample_grid(const SpaceCurve& curve, int samples) {
  if (samples < 3) throw ValidationError("grid needs at least 3 points");
  const GridTables t(samples);
  const auto xs = grid_values(curve.x, t.cos_t, t.sin_t);
  const auto ys = grid_values(curve.y, t.cos_t, t.sin_t);
  const auto zs = grid_values(curve.z, t.cos_t, t.sin_t);
  Polyline<Vec3> out;
  out.points.resize(samples);
  for (int i = 0; i < samples; ++i) out.points[i] = {xs[i], ys[i], zs[i]};
  out.params = t.params;
  return out;
}

int default_grid(int degree) noexcept { return std::max(8 * degree, 256); }

}  // namespace rfk
