#include "rfk/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rfk {

const GaussLegendre16& GaussLegendre16::get() {
  static const GaussLegendre16 rule = [] {
    GaussLegendre16 r{};
    constexpr int n = 16;
    for (int i = 0; i < n; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      r.nodes[i] = x;
      r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
  }();
  return rule;
}

namespace {

struct Panel {
  double value, magnitude;  // integral of f and of |f|
};

Panel panel(const std::function<double(double)>& f, double a, double b) {
  const auto& r = GaussLegendre16::get();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0.0, m = 0.0;
  for (int i = 0; i < 16; ++i) {
    const double v = r.weights[i] * f(c + h * r.nodes[i]);
    s += v;
    m += std::abs(v);
  }
  return {s * h, m * std::abs(h)};
}

}  // namespace

double gauss_legendre(const std::function<double(double)>& f, double a, double b) {
  return panel(f, a, b).value;
}

namespace {

// Differences below this multiple of the panel's |f| integral are rounding noise.
constexpr double kNoiseFloor = 1e-12;

void adaptive(const std::function<double(double)>& f, double a, double b, double whole,
              double tol, int depth, int max_depth, QuadratureResult& out) {
  const double m = 0.5 * (a + b);
  const Panel l = panel(f, a, m), r = panel(f, m, b);
  const double left = l.value, right = r.value;
  out.evaluations += 32;
  const double diff = std::abs(left + right - whole);
  const double accept = std::max(tol, kNoiseFloor * (l.magnitude + r.magnitude));
  if (diff <= accept || depth >= max_depth || !(m > a && m < b)) {
    if (diff > accept) out.converged = false;
    out.value += left + right;
    out.error_estimate += diff;
    return;
  }
  adaptive(f, a, m, left, 0.5 * tol, depth + 1, max_depth, out);
  adaptive(f, m, b, right, 0.5 * tol, depth + 1, max_depth, out);
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double tol, int max_depth) {
  QuadratureResult out;
  if (a == b) return out;
  const double whole = gauss_legendre(f, a, b);
  out.evaluations = 16;
  adaptive(f, a, b, whole, tol, 0, max_depth, out);
  return out;
}

}  // namespace rfk
