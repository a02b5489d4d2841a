#include "rfk/kac_rice.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "rfk/error.hpp"
#include "rfk/quadrature.hpp"

namespace rfk {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr std::int64_t kMaxAutoTerms = 10'000'000;
constexpr std::int64_t kMaxWeightTable = std::int64_t{1} << 22;
constexpr int kExpansionTerms = 64;

bool is_integer(double s) { return std::abs(s - std::round(s)) < 1e-12; }

double periodic_separation(double a, double b) {
  double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

}  // namespace

// Li_s(e^{iu}) = sum_{k>=1} e^{iku} / k^s for 0 < u <= pi, expanded around u = 0:
//   non-integer s: Gamma(1-s) (-iu)^(s-1) + sum_j zeta(s-j) (iu)^j / j!
//   integer s = n: the j = n-1 term becomes (iu)^(n-1)/(n-1)! (H_{n-1} - log(-iu)).
struct CorrelationKernel::Expansion {
  using real = long double;
  using complex = std::complex<long double>;
  long double s = 0.0L;
  bool integer = false;
  int n = 0;                     // s, integer case
  real singular = 0.0L;          // Gamma(1-s), non-integer case
  real harmonic = 0.0L;          // H_{n-1}, integer case
  std::vector<real> coeffs;      // zeta(s-j)/j!, zero at the pole j = n-1

  explicit Expansion(double s_) : s(s_), integer(is_integer(s_)) {
    coeffs.resize(kExpansionTerms);
    n = integer ? static_cast<int>(std::lround(s_)) : 0;
    const int pole = integer ? n - 1 : -1;
    real fact = 1.0L;
    for (int j = 0; j < kExpansionTerms; ++j) {
      if (j > 0) fact *= j;
      const real arg = s - j;
      // zeta vanishes at the negative even integers
      const bool trivial_zero = integer && n - j < 0 && (j - n) % 2 == 0;
      coeffs[j] = (j == pole || trivial_zero) ? 0.0L : std::riemann_zetal(arg) / fact;
    }
    if (integer) {
      for (int k = 1; k <= pole; ++k) harmonic += 1.0L / k;
    } else {
      singular = std::tgamma(1.0L - s);
    }
  }

  // Li_s(e^{iu}) - zeta(s), for 0 < u <= pi.
  complex shifted(double u_) const {
    const real u = u_;
    const complex iu(0.0L, u);
    complex sum = 0.0L, power = 1.0L;
    for (int j = 1; j < kExpansionTerms; ++j) {
      power *= iu;
      sum += coeffs[j] * power;
    }
    if (integer) {
      complex p = 1.0L;
      real fact = 1.0L;
      for (int k = 1; k <= n - 1; ++k) {
        p *= iu;
        fact *= k;
      }
      const complex log_term(std::log(u), -std::numbers::pi_v<real> / 2);  // log(-iu)
      sum += p / fact * (harmonic - log_term);
    } else {
      sum += singular * std::pow(complex(0.0L, -u), s - 1.0L);
    }
    return sum;
  }
};

namespace {

// Reduces u to [0, pi] using C(2pi - u) = C(u), S(2pi - u) = -S(u).
double fold(double u, double& odd_sign) {
  u = std::fmod(u, kTwoPi);
  if (u < 0) u += kTwoPi;
  odd_sign = 1.0;
  if (u > kPi) {
    u = kTwoPi - u;
    odd_sign = -1.0;
  }
  return u;
}

}  // namespace

CorrelationKernel::CorrelationKernel(double alpha, KernelMode mode, std::int64_t k_max)
    : alpha_(alpha), mode_(mode), k_max_(k_max) {
  if (!(alpha > 1.5) || !std::isfinite(alpha)) throw DomainError("alpha must exceed 3/2");
  switch (mode) {
    case KernelMode::series: {
      if (k_max < 1) throw ValidationError("series kernel needs k_max >= 1");
      if (k_max <= kMaxWeightTable) {
        auto w = std::make_shared<std::vector<long double>>(static_cast<std::size_t>(k_max));
        for (std::int64_t k = 1; k <= k_max; ++k)
          (*w)[static_cast<std::size_t>(k - 1)] = std::pow(static_cast<long double>(k), -2.0L * alpha);
        weights_ = std::move(w);
      }
      long double s2 = 0.0L;
      for (std::int64_t k = k_max; k >= 1; --k) s2 += std::pow(static_cast<long double>(k), 2.0L - 2.0L * alpha);
      s2_zero_ = s2;
      break;
    }
    case KernelMode::closed_form:
      if (k_max != 0) throw ValidationError("closed_form kernel is untruncated; k_max must be 0");
      d0_ = std::make_shared<Expansion>(2.0 * alpha);
      s1_ = std::make_shared<Expansion>(2.0 * alpha - 1.0);
      s2_ = std::make_shared<Expansion>(2.0 * alpha - 2.0);
      s2_zero_ = std::riemann_zetal(2.0L * alpha - 2.0L);
      break;
    case KernelMode::quadratic:
      if (alpha != 2.0) throw ValidationError("quadratic kernel exists only for alpha = 2");
      if (k_max != 0) throw ValidationError("quadratic kernel takes no k_max");
      break;
  }
}

CorrelationKernel::Terms CorrelationKernel::terms(double u) const {
  if (mode_ == KernelMode::quadratic) throw ValidationError("quadratic kernel is not stationary");
  double sign = 1.0;
  const double v = fold(u, sign);
  if (v == 0.0) return {0.0, 0.0, s2_zero_};
  if (mode_ == KernelMode::closed_form) {
    return {-d0_->shifted(v).real(), sign * s1_->shifted(v).imag(),
            s2_zero_ + s2_->shifted(v).real()};
  }
  // Half-angle recurrence: 1 - cos(kv) = 2 sin^2(kv/2) stays accurate for small kv.
  const long double h = 0.5L * v;
  const long double ch = std::cos(h), sh = std::sin(h);
  long double c = 1.0L, s = 0.0L;  // cos(k h), sin(k h) for the current k
  long double d0 = 0.0L, s1 = 0.0L, s2 = 0.0L;
  for (std::int64_t k = 1; k <= k_max_; ++k) {
    if ((k & 63) == 1) {
      c = std::cos(static_cast<long double>(k) * h);
      s = std::sin(static_cast<long double>(k) * h);
    } else {
      const long double cn = c * ch - s * sh;
      s = s * ch + c * sh;
      c = cn;
    }
    const long double kd = static_cast<long double>(k);
    const long double w = weights_ ? (*weights_)[static_cast<std::size_t>(k - 1)]
                                   : std::pow(kd, -2.0L * alpha_);
    const long double sin2 = s * s;
    d0 += w * 2.0L * sin2;
    s1 += w * kd * 2.0L * s * c;
    s2 += w * kd * kd * (1.0L - 2.0L * sin2);
  }
  return {d0, sign * s1, s2};
}

double literal_quadratic_alpha2(double x, double y, double z, double w) {
  const double p = kPi;
  return (-2 * w * w + 3 * w * x + 3 * w * y - 2 * w * z - 6 * p * w - 2 * x * x - 2 * x * y +
          3 * x * z + 6 * p * x - 2 * y * y + 3 * y * z + 6 * p * y - 2 * z * z - 6 * p * z -
          4 * p * p) /
         24.0;
}

CorrelationKernel::Jet CorrelationKernel::jet(double x, double y, double z, double w) const {
  if (mode_ == KernelMode::quadratic) {
    // Derivatives of the literal quadratic; its log-Hessian is what the mode integrates.
    Jet j{};
    j.k = literal_quadratic_alpha2(x, y, z, w);
    j.kx = (3 * w - 4 * x - 2 * y + 3 * z + 6 * kPi) / 24.0;
    j.ky = (3 * w - 2 * x - 4 * y + 3 * z + 6 * kPi) / 24.0;
    j.kz = (-2 * w + 3 * x + 3 * y - 4 * z - 6 * kPi) / 24.0;
    j.kw = (-4 * w + 3 * x + 3 * y - 2 * z - 6 * kPi) / 24.0;
    j.kxz = j.kxw = j.kyz = j.kyw = 3.0 / 24.0;
    return j;
  }
  const Terms xz = terms(x - z), yw = terms(y - w), yz = terms(y - z), xw = terms(x - w);
  Jet j{};
  // K0 = [S0(0) - S0(y-z)] + [S0(0) - S0(x-w)] - [S0(0) - S0(x-z)] - [S0(0) - S0(y-w)]
  j.k = yz.d0 + xw.d0 - xz.d0 - yw.d0;
  j.kx = -xz.s1 + xw.s1;
  j.ky = -yw.s1 + yz.s1;
  j.kz = xz.s1 - yz.s1;
  j.kw = yw.s1 - xw.s1;
  j.kxz = xz.s2;
  j.kxw = -xw.s2;
  j.kyz = -yz.s2;
  j.kyw = yw.s2;
  return j;
}

double kernel_K0(double x, double y, double z, double w, const CorrelationKernel& kernel) {
  if (kernel.mode() == KernelMode::quadratic)
    return literal_quadratic_alpha2(x, y, z, w) * (x - y) * (z - w);
  return static_cast<double>(kernel.jet(x, y, z, w).k);
}

double correlation(double x, double y, double z, double w, const CorrelationKernel& kernel,
                   Regularizer g) {
  const auto reg = [g](double d) { return g == Regularizer::g_sin ? std::sin(0.5 * d) : d; };
  return kernel_K0(x, y, z, w, kernel) / (reg(x - y) * reg(z - w));
}

double closed_form_cos4(double x) {
  if (!(x >= 0.0 && x <= kTwoPi)) throw DomainError("closed_form_cos4 needs 0 <= x <= 2 pi");
  const double p = kPi;
  return -x * x * x * x / 48.0 + p * x * x * x / 12.0 - p * p * x * x / 12.0 + p * p * p * p / 90.0;
}

double closed_form_correlation_alpha2(double x, double y, double z, double w) {
  constexpr double slack = 1e-12;
  for (double d : {x - z, y - w, y - z, x - w})
    if (!(d >= -slack && d <= kTwoPi + slack))
      throw DomainError("closed_form_correlation_alpha2: differences must lie in [0, 2 pi]");
  return -literal_quadratic_alpha2(x, y, z, w);
}

Hessian2 log_kernel_hessian(double t1, double t2, const CorrelationKernel& kernel, double delta) {
  const double sep = periodic_separation(t1, t2);
  if (sep < delta || (sep == 0.0 && kernel.mode() != KernelMode::quadratic))
    throw DiagonalSingularity("log-kernel Hessian requested on the diagonal strip");
  const auto j = kernel.jet(t1, t2, t1, t2);
  // The regularizer adds -log g(x-y) - log g(z-w); its mixed partials across the two
  // argument pairs vanish, so only K0 contributes.
  const long double k = j.k, k2 = k * k;
  return {{{j.kxz / k - j.kx * j.kz / k2, j.kxw / k - j.kx * j.kw / k2},
           {j.kyz / k - j.ky * j.kz / k2, j.kyw / k - j.ky * j.kw / k2}}};
}

std::int64_t tail_bound_k_max(double alpha, double tol) {
  if (!(alpha > 1.5)) throw DomainError("alpha must exceed 3/2");
  if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");
  // sum_{k>K} k^(2-2a) <= K^(3-2a)/(2a-3)
  const double k = std::pow((tol / 100.0) * (2.0 * alpha - 3.0), 1.0 / (3.0 - 2.0 * alpha));
  if (!(k < 9e18)) return std::numeric_limits<std::int64_t>::max();
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(k)));
}

void validate(const KacRiceProblem& p) {
  if (!std::isfinite(p.alpha) || !(p.alpha > 1.5))
    throw DomainError("alpha must exceed 3/2 for the correlation series to converge");
  if (!(p.delta > 0.0) || !(p.delta < kPi)) throw ValidationError("delta must lie in (0, pi)");
  if (!(p.tol > 0.0)) throw ValidationError("tol must be positive");
  if (!(p.quad_tol > 0.0)) throw ValidationError("quad_tol must be positive");
  if (p.k_max < 0) throw ValidationError("k_max must be non-negative");
  if (p.max_depth < 1 || p.max_depth > 60) throw ValidationError("max_depth must lie in [1, 60]");
}

CorrelationKernel make_kernel(const KacRiceProblem& p) {
  validate(p);
  if (p.kernel == KernelMode::series) {
    std::int64_t k = p.k_max;
    if (k == 0) {
      k = tail_bound_k_max(p.alpha, p.tol);
      if (k > kMaxAutoTerms)
        throw ValidationError("tail bound needs " + std::to_string(k) +
                              " series terms; use the closed_form kernel or an explicit k_max");
    }
    return CorrelationKernel(p.alpha, p.kernel, k);
  }
  return CorrelationKernel(p.alpha, p.kernel, p.k_max);
}

namespace {

double sqrt_det(const CorrelationKernel& kernel, double t1, double t2) {
  const auto m = log_kernel_hessian(t1, t2, kernel);
  const double det = static_cast<double>(m[0][0] * m[1][1] - m[0][1] * m[1][0]);
  if (!std::isfinite(det)) throw NumericalError("non-finite Hessian determinant");
  const long double scale = m[0][0] * m[0][0] + m[0][1] * m[0][1] + m[1][0] * m[1][0] + m[1][1] * m[1][1];
  if (det < -1e-9 * std::max(1.0L, scale))
    throw NegativeDeterminant("det M = " + std::to_string(det) + " at t = (" + std::to_string(t1) +
                              ", " + std::to_string(t2) + ")");
  return std::sqrt(std::max(det, 0.0));
}

}  // namespace

double kac_rice_integral(const KacRiceProblem& p, const CorrelationKernel& kernel, double delta,
                         long* evaluations) {
  constexpr double prefactor = 1.0 / kTwoPi;  // pi^(-3/2) Gamma(3/2)
  long evals = 0;
  double total = 0.0;
  bool converged = true;
  if (p.mode == IntegrationMode::reduced_1d) {
    // The integrand depends on u = t1 - t2 only; the square minus the strip folds to
    // delta < |u| < 2 pi - delta with weight (2 pi - |u|).
    const auto f = [&](double u) {
      return (kTwoPi - u) * (sqrt_det(kernel, u, 0.0) + sqrt_det(kernel, -u, 0.0));
    };
    const auto r = integrate_adaptive(f, delta, kTwoPi - delta, p.quad_tol / prefactor, p.max_depth);
    total = r.value;
    evals = r.evaluations;
    converged = r.converged;
  } else {
    // The outer integrand inherits the inner quadrature error; keep that error well below
    // what the outer bisection tries to resolve.
    const double outer_tol = p.quad_tol / prefactor;
    const double inner_tol = outer_tol / (100.0 * kTwoPi);
    const auto inner = [&](double t1) {
      const auto g = [&](double t2) { return sqrt_det(kernel, t1, t2); };
      double lo = t1 + delta, hi = t1 - delta + kTwoPi;
      if (t1 - delta >= 0.0 && t1 + delta <= kTwoPi) {
        const auto a = integrate_adaptive(g, 0.0, t1 - delta, inner_tol, p.max_depth);
        const auto b = integrate_adaptive(g, t1 + delta, kTwoPi, inner_tol, p.max_depth);
        evals += a.evaluations + b.evaluations;
        converged = converged && a.converged && b.converged;
        return a.value + b.value;
      }
      if (t1 + delta > kTwoPi) {
        lo = t1 + delta - kTwoPi;
        hi = t1 - delta;
      }
      const auto a = integrate_adaptive(g, lo, hi, inner_tol, p.max_depth);
      evals += a.evaluations;
      converged = converged && a.converged;
      return a.value;
    };
    // Panel breaks where the inner domain changes shape.
    const double breaks[] = {0.0, delta, kTwoPi - delta, kTwoPi};
    for (int i = 0; i < 3; ++i) {
      const auto r = integrate_adaptive(inner, breaks[i], breaks[i + 1], outer_tol / 3.0, p.max_depth);
      total += r.value;
      converged = converged && r.converged;
    }
  }
  if (!converged) throw NumericalError("quadrature hit its depth limit");
  if (evaluations) *evaluations += evals;
  return prefactor * total;
}

KacRiceReport evaluate(const KacRiceProblem& p) {
  const CorrelationKernel kernel = make_kernel(p);
  KacRiceReport r;
  r.alpha = p.alpha;
  r.delta = p.delta;
  r.k_max = kernel.k_max();
  r.mode = p.mode;
  r.kernel = p.kernel;
  r.value = kac_rice_integral(p, kernel, p.delta, &r.evaluations);
  r.delta_half_value = kac_rice_integral(p, kernel, 0.5 * p.delta, &r.evaluations);
  r.converged = std::abs(r.value - r.delta_half_value) <= p.tol;
  return r;
}

double expected_zero_count(const KacRiceProblem& p) {
  const KacRiceReport r = evaluate(p);
  if (!r.converged)
    throw NonConvergent("delta-refinement moved the value from " + std::to_string(r.value) +
                        " (delta=" + std::to_string(r.delta) + ") to " +
                        std::to_string(r.delta_half_value) + " (delta/2)");
  return r.value;
}

double alpha2_reference_value() {
  return 2.0 * std::sqrt(3.0) * (1.0 - std::log(1.0 + std::numbers::sqrt2)) / kPi;
}

std::string to_string(KernelMode m) {
  switch (m) {
    case KernelMode::series: return "series";
    case KernelMode::closed_form: return "closed_form";
    case KernelMode::quadratic: return "quadratic";
  }
  return "?";
}

std::string to_string(IntegrationMode m) { return m == IntegrationMode::reduced_1d ? "1d" : "2d"; }

std::string to_string(Regularizer g) { return g == Regularizer::g_sin ? "g_sin" : "g_linear"; }

}  // namespace rfk
