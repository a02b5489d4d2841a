#pragma once

#include <array>
#include <functional>

namespace rfk {

/// Gauss-Legendre rule of order 16 on [-1, 1]; nodes found by Newton on P_16.
struct GaussLegendre16 {
  std::array<double, 16> nodes;
  std::array<double, 16> weights;
  static const GaussLegendre16& get();
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = true;  // false if some panel hit the depth limit
};

/// Single 16-point panel on [a, b].
double gauss_legendre(const std::function<double(double)>& f, double a, double b);

/// Adaptive bisection: a panel is accepted when its two halves agree with it to within
/// the panel's share of `tol` (absolute), which halves at every split.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double tol, int max_depth = 40);

}  // namespace rfk
