#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace rfk {

/// g(x) = sin(x/2) or g(x) = x, dividing out the trivial zeros s = t.
enum class Regularizer { g_sin, g_linear };

/// How the correlation numerator K0 is evaluated.
///  series       direct summation of the k <= k_max terms (a truncated model)
///  closed_form  the untruncated series, summed analytically
///  quadratic    the degree-2 alpha = 2 polynomial used literally on the whole square,
///               without reducing the differences to [0, 2 pi]
enum class KernelMode { series, closed_form, quadratic };

enum class IntegrationMode { reduced_1d, tensor_2d };

/// Numerator of v(x,y)^T C v(z,w):
///   K0 = sum_k [cos k(x-z) + cos k(y-w) - cos k(y-z) - cos k(x-w)] / k^(2 alpha).
class CorrelationKernel {
 public:
  CorrelationKernel(double alpha, KernelMode mode, std::int64_t k_max = 0);

  double alpha() const noexcept { return alpha_; }
  KernelMode mode() const noexcept { return mode_; }
  std::int64_t k_max() const noexcept { return k_max_; }

  /// Stationary building blocks (series and closed_form modes), with w_k = k^(-2 alpha):
  ///   d0(u) = sum w_k (1 - cos ku), s1(u) = sum w_k k sin ku, s2(u) = sum w_k k^2 cos ku.
  /// Extended precision: the log-Hessian cancels terms of size 1/u^2 near the diagonal.
  struct Terms {
    long double d0, s1, s2;
  };
  Terms terms(double u) const;
  long double s2_at_zero() const noexcept { return s2_zero_; }

  /// K0 and the partial derivatives needed by the log-Hessian.
  struct Jet {
    long double k;                   // K0
    long double kx, ky, kz, kw;      // first partials
    long double kxz, kxw, kyz, kyw;  // mixed partials across the two argument pairs
  };
  Jet jet(double x, double y, double z, double w) const;

 private:
  double alpha_;
  KernelMode mode_;
  std::int64_t k_max_;
  long double s2_zero_ = 0.0L;
  std::shared_ptr<const std::vector<long double>> weights_;  // series mode
  struct Expansion;                                    // closed_form mode
  std::shared_ptr<const Expansion> d0_, s1_, s2_;
};

double kernel_K0(double x, double y, double z, double w, const CorrelationKernel& kernel);

/// K0 / (g(x-y) g(z-w)).
double correlation(double x, double y, double z, double w, const CorrelationKernel& kernel,
                   Regularizer g);

/// sum_{k>=1} cos(kx)/k^4 via the quartic; DomainError outside [0, 2 pi].
double closed_form_cos4(double x);

/// The alpha = 2 correlation with g(x) = x as a quadratic polynomial, valid when the four
/// differences x-z, y-w, y-z, x-w all lie in [0, 2 pi] (DomainError otherwise).
/// Equals K0 / ((x-y)(z-w)).
double closed_form_correlation_alpha2(double x, double y, double z, double w);

/// The same quadratic applied on the whole square without reducing the differences. It is
/// not a correlation anywhere off the validity region; the quadratic kernel mode uses it.
double literal_quadratic_alpha2(double x, double y, double z, double w);

/// Mixed partials M_ij = d^2/(dx_i dz_j) log v(x)^T C v(z) at (t1, t2, t1, t2),
/// rows (x, y), columns (z, w). DiagonalSingularity when |t1 - t2| mod 2 pi < delta.
using Hessian2 = std::array<std::array<long double, 2>, 2>;

Hessian2 log_kernel_hessian(double t1, double t2, const CorrelationKernel& kernel,
                            double delta = 0.0);

struct KacRiceProblem {
  double alpha = 2.0;
  Regularizer regularizer = Regularizer::g_linear;
  KernelMode kernel = KernelMode::closed_form;
  std::int64_t k_max = 0;  // 0: chosen from the tail bound
  double delta = 1e-3;
  double tol = 1e-4;
  double quad_tol = 1e-9;
  int max_depth = 40;
  IntegrationMode mode = IntegrationMode::reduced_1d;
};

/// Smallest k_max with sum_{k>k_max} k^(2-2 alpha) <= tol/100 (integral estimate).
std::int64_t tail_bound_k_max(double alpha, double tol);

/// Validates the problem and builds its kernel. Series mode with automatic k_max is
/// rejected once the tail bound asks for more than 1e7 terms.
CorrelationKernel make_kernel(const KacRiceProblem& problem);
void validate(const KacRiceProblem& problem);

struct KacRiceReport {
  double alpha = 0.0;
  double value = 0.0;             // ordered pairs, at delta
  double delta = 0.0;
  double delta_half_value = 0.0;  // same integral at delta / 2
  std::int64_t k_max = 0;
  IntegrationMode mode = IntegrationMode::reduced_1d;
  KernelMode kernel = KernelMode::closed_form;
  bool converged = false;  // |value - delta_half_value| <= tol
  long evaluations = 0;
};

/// 1/(2 pi) * integral of sqrt(det M) over [0, 2 pi]^2 minus the periodic diagonal strip
/// of half-width delta. Counts ordered parameter pairs.
double kac_rice_integral(const KacRiceProblem& problem, const CorrelationKernel& kernel,
                         double delta, long* evaluations = nullptr);

/// Evaluates at delta and delta/2 without judging convergence.
KacRiceReport evaluate(const KacRiceProblem& problem);

/// As evaluate, but throws NonConvergent when delta-halving moves the value by more than tol.
double expected_zero_count(const KacRiceProblem& problem);

/// 2 sqrt(3) (1 - ln(1 + sqrt 2)) / pi.
double alpha2_reference_value();

std::string to_string(KernelMode m);
std::string to_string(IntegrationMode m);
std::string to_string(Regularizer g);

}  // namespace rfk
