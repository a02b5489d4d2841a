#pragma once

#include <cstdint>
#include <vector>

#include "rfk/vec.hpp"

namespace rfk {

enum class DecayKind { power_decay, no_decay };

/// Variance profile of the coefficients of a random trigonometric polynomial:
/// sd(a_k) = sd(b_k) = k^-alpha (power decay) or 1 (no decay), for 1 <= k <= degree.
class CoefficientLaw {
 public:
  static CoefficientLaw power_decay(double alpha, int degree);
  static CoefficientLaw no_decay(int degree);

  DecayKind kind() const noexcept { return kind_; }
  double alpha() const noexcept { return alpha_; }
  int degree() const noexcept { return degree_; }

  double variance_at(int k) const noexcept;
  double std_dev(int k) const noexcept;

  /// Bound on sup |f - f_N| for the untruncated series: sum_{k>N} 2 k^-alpha.
  /// Infinite when alpha <= 1 or for no decay.
  double truncation_tail_bound() const noexcept;

  friend bool operator==(const CoefficientLaw&, const CoefficientLaw&) = default;

 private:
  CoefficientLaw(DecayKind kind, double alpha, int degree)
      : kind_(kind), alpha_(alpha), degree_(degree) {}

  DecayKind kind_;
  double alpha_;
  int degree_;
};

/// f(theta) = sum_{k=1}^N a_k cos(k theta) + b_k sin(k theta); a[0] holds a_1.
struct TrigSeries {
  std::vector<double> a;
  std::vector<double> b;

  TrigSeries() = default;
  TrigSeries(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

  int degree() const noexcept { return static_cast<int>(a.size()); }

  double operator()(double theta) const { return value(theta); }
  double value(double theta) const;
  /// Termwise derivative of order 0, 1 or 2.
  double derivative(double theta, int order) const;

  /// Value, first and second derivative in one pass.
  struct Jet {
    double f, df, d2f;
  };
  Jet jet(double theta) const;

  friend bool operator==(const TrigSeries&, const TrigSeries&) = default;
};

/// Linear combination sum_i w_i * s_i of equal-degree series.
TrigSeries combine(double w0, const TrigSeries& s0, double w1, const TrigSeries& s1);
TrigSeries combine(double w0, const TrigSeries& s0, double w1, const TrigSeries& s1, double w2,
                   const TrigSeries& s2);

struct PlaneCurve {
  TrigSeries x;
  TrigSeries y;

  int degree() const noexcept { return x.degree(); }
  Vec2 point(double theta) const { return {x.value(theta), y.value(theta)}; }
  Vec2 tangent(double theta) const { return {x.derivative(theta, 1), y.derivative(theta, 1)}; }
};

struct SpaceCurve {
  TrigSeries x;
  TrigSeries y;
  TrigSeries z;

  int degree() const noexcept { return x.degree(); }
  Vec3 point(double theta) const { return {x.value(theta), y.value(theta), z.value(theta)}; }
  Vec3 tangent(double theta) const {
    return {x.derivative(theta, 1), y.derivative(theta, 1), z.derivative(theta, 1)};
  }
};

/// Plane curve seen from +d (coordinates along frame.e1, frame.e2) and the height series along d.
struct Projection {
  PlaneCurve plane;
  TrigSeries height;
};
Projection project(const SpaceCurve& curve, const ProjectionFrame& frame);

/// Reduces theta into [0, 2 pi).
double reduce_angle(double theta) noexcept;

double evaluate(const TrigSeries& f, double theta);
double evaluate_derivative(const TrigSeries& f, double theta, int order);

/// Gaussian coefficients under `law`. `coordinate` selects independent slots so that the
/// x, y, z series of one curve, drawn from the same (seed, stream), are independent.
TrigSeries sample_series(const CoefficientLaw& law, std::uint64_t seed, std::uint64_t stream,
                         int coordinate = 0);
PlaneCurve sample_plane_curve(const CoefficientLaw& law, std::uint64_t seed, std::uint64_t stream);
SpaceCurve sample_space_curve(const CoefficientLaw& law, std::uint64_t seed, std::uint64_t stream);

template <class Point>
struct Polyline {
  std::vector<Point> points;
  std::vector<double> params;
};

/// Closed polyline through theta_i = 2 pi i / M, i = 0..M-1.
Polyline<Vec2> sample_grid(const PlaneCurve& curve, int samples);
Polyline<Vec3> sample_grid(const SpaceCurve& curve, int samples);

/// Default grid resolution max(8 N, 256).
int default_grid(int degree) noexcept;

}  // namespace rfk
