#include "rfk/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/multiprecision/cpp_complex.hpp>

#include "rfk/error.hpp"
#include "rfk/modular.hpp"

namespace rfk {

namespace {

using Poly = std::vector<BigInt>;
using cld = std::complex<long double>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

Poly primitive(Poly p) {
  trim(p);
  if (p.empty()) return p;
  BigInt g = 0;
  for (const auto& c : p)
    if (c != 0) g = boost::multiprecision::gcd(g, c);
  if (p.back() < 0) g = -g;
  for (auto& c : p) c /= g;
  return p;
}

// lc(b)^(deg a - deg b + 1) * a mod b.
Poly pseudo_remainder(Poly a, const Poly& b) {
  const BigInt& lb = b.back();
  const int db = degree(b);
  while (!a.empty() && degree(a) >= db) {
    const BigInt la = a.back();
    const int shift = degree(a) - db;
    for (auto& c : a) c *= lb;
    for (int i = 0; i <= db; ++i) a[static_cast<std::size_t>(i + shift)] -= la * b[static_cast<std::size_t>(i)];
    trim(a);
  }
  return a;
}

Poly integer_gcd(Poly a, Poly b) {
  a = primitive(std::move(a));
  b = primitive(std::move(b));
  while (!b.empty()) {
    Poly r = pseudo_remainder(a, b);
    a = std::move(b);
    b = primitive(std::move(r));
  }
  return primitive(std::move(a));
}

// Exact quotient a / b over the integers (b divides a).
Poly exact_divide(Poly a, const Poly& b) {
  const int db = degree(b);
  Poly q(static_cast<std::size_t>(std::max(0, degree(a) - db + 1)), 0);
  while (!a.empty() && degree(a) >= db) {
    const int shift = degree(a) - db;
    const BigInt c = a.back() / b.back();
    q[static_cast<std::size_t>(shift)] = c;
    for (int i = 0; i <= db; ++i) a[static_cast<std::size_t>(i + shift)] -= c * b[static_cast<std::size_t>(i)];
    trim(a);
  }
  return q;
}

// Degree of gcd(p, p') modulo a prime not dividing the leading coefficient; an upper bound
// for the degree of the integer gcd.
int modular_gcd_degree(const Poly& p) {
  for (std::size_t i = 0;; ++i) {
    const std::uint64_t m = word_prime(i);
    if (residue(p.back(), m) == 0) continue;
    std::vector<std::uint64_t> a, b;
    for (const auto& c : p) a.push_back(residue(c, m));
    for (std::size_t k = 1; k < p.size(); ++k)
      b.push_back(mul_mod(residue(p[k], m), k % m, m));
    const auto strip = [](std::vector<std::uint64_t>& v) {
      while (!v.empty() && v.back() == 0) v.pop_back();
    };
    strip(a);
    strip(b);
    while (!b.empty()) {
      const std::uint64_t inv = inv_mod(b.back(), m);
      while (a.size() >= b.size()) {
        const std::uint64_t f = mul_mod(a.back(), inv, m);
        const std::size_t shift = a.size() - b.size();
        for (std::size_t k = 0; k < b.size(); ++k)
          a[k + shift] = sub_mod(a[k + shift], mul_mod(f, b[k], m), m);
        strip(a);
        if (a.empty()) break;
      }
      std::swap(a, b);
    }
    return static_cast<int>(a.size()) - 1;
  }
}

double to_double(const BigInt& v) { return v.convert_to<double>(); }

long double to_long_double(const BigInt& v) { return v.convert_to<long double>(); }

struct Horner {
  cld value, slope;
};

Horner horner(const std::vector<long double>& c, cld z) {
  cld v = c.back(), d = 0.0L;
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    d = d * z + v;
    v = v * z + c[i];
  }
  return {v, d};
}

double relative_residual(const std::vector<long double>& c, cld z) {
  cld v = c.back();
  long double scale = std::abs(c.back());
  const long double r = std::abs(z);
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    v = v * z + c[i];
    scale = scale * r + std::abs(c[i]);
  }
  return scale > 0.0L ? static_cast<double>(std::abs(v) / scale) : 0.0;
}

// Bini's starting points: one circle per edge of the upper convex hull of (i, log|c_i|).
std::vector<cld> initial_guesses(const std::vector<long double>& c) {
  const int d = static_cast<int>(c.size()) - 1;
  std::vector<int> hull;
  for (int i = 0; i <= d; ++i) {
    if (c[static_cast<std::size_t>(i)] == 0.0L) continue;
    const auto y = [&](int k) { return std::log(std::abs(c[static_cast<std::size_t>(k)])); };
    while (hull.size() >= 2) {
      const int a = hull[hull.size() - 2], b = hull.back();
      // Drop b if it lies on or below the segment a -> i.
      if ((y(b) - y(a)) * (i - a) <= (y(i) - y(a)) * (b - a)) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }
  std::vector<cld> z;
  constexpr long double kOffset = 0.7L;
  for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
    const int i = hull[e], j = hull[e + 1];
    const long double u = std::exp((std::log(std::abs(c[static_cast<std::size_t>(i)])) -
                                    std::log(std::abs(c[static_cast<std::size_t>(j)]))) /
                                   (j - i));
    for (int m = 0; m < j - i; ++m) {
      const long double angle = 2.0L * std::numbers::pi_v<long double> * m / (j - i) +
                                2.0L * std::numbers::pi_v<long double> * i / d + kOffset;
      z.push_back(std::polar(u, angle));
    }
  }
  return z;
}

// Aberth steps in 100-digit arithmetic from the long double estimates. High-degree Alexander
// polynomials have tightly clustered roots whose forward error in extended precision can
// reach 1e-2 although the residual is at rounding level.
using mp_complex = boost::multiprecision::cpp_complex_100;
using mp_real = boost::multiprecision::cpp_bin_float_100;

void polish(const Poly& poly, std::vector<cld>& roots) {
  const std::size_t d = roots.size();
  std::vector<mp_real> c;
  for (const auto& v : poly) c.emplace_back(v);
  std::vector<mp_complex> z;
  for (const cld& r : roots) z.emplace_back(mp_real(r.real()), mp_real(r.imag()));
  const mp_real tiny("1e-80");
  constexpr int kMaxSteps = 60;
  std::vector<char> done(d, 0);
  for (int step = 0; step < kMaxSteps; ++step) {
    bool all = true;
    for (std::size_t k = 0; k < d; ++k) {
      if (done[k]) continue;
      mp_complex v = c.back(), dv = 0;
      for (std::size_t i = c.size() - 1; i-- > 0;) {
        dv = dv * z[k] + v;
        v = v * z[k] + c[i];
      }
      if (v == mp_complex(0)) {
        done[k] = 1;
        continue;
      }
      const mp_complex ratio = v / dv;
      mp_complex repulsion = 0;
      for (std::size_t j = 0; j < d; ++j)
        if (j != k) repulsion += mp_complex(1) / (z[k] - z[j]);
      const mp_complex w = ratio / (mp_complex(1) - ratio * repulsion);
      z[k] -= w;
      if (abs(w) <= tiny * (1 + abs(z[k]))) {
        done[k] = 1;
      } else {
        all = false;
      }
    }
    if (all) break;
  }
  for (std::size_t k = 0; k < d; ++k)
    roots[k] = cld(z[k].real().convert_to<long double>(), z[k].imag().convert_to<long double>());
}

constexpr int kPolishDegree = 16;

}  // namespace

std::vector<BigInt> square_free_part(const std::vector<BigInt>& poly) {
  Poly p = primitive(poly);
  if (degree(p) <= 1) return p;
  if (modular_gcd_degree(p) == 0) return p;
  const Poly g = integer_gcd(p, derivative(p));
  if (degree(g) == 0) return p;
  return primitive(exact_divide(p, g));
}

RootResult laurent_roots(const LaurentPolynomial& p, const RootOptions& opts) {
  if (p.is_zero()) throw ValidationError("roots of the zero polynomial");
  RootResult out;
  const Poly sf = square_free_part(p.coeffs());
  const int d = degree(sf);
  if (d <= 0) {
    out.converged = true;
    return out;
  }
  long double scale = 0.0L;
  for (const auto& c : sf) scale = std::max(scale, std::abs(to_long_double(c)));
  std::vector<long double> c;
  for (const auto& v : sf) c.push_back(to_long_double(v) / scale);
  std::vector<long double> original;
  long double oscale = 0.0L;
  for (const auto& v : p.coeffs()) oscale = std::max(oscale, std::abs(to_long_double(v)));
  for (const auto& v : p.coeffs()) original.push_back(to_long_double(v) / oscale);

  std::vector<cld> z = initial_guesses(c);
  std::vector<char> done(static_cast<std::size_t>(d), 0);
  constexpr long double kStep = 64.0L * std::numeric_limits<long double>::epsilon();
  for (out.iterations = 0; out.iterations < opts.max_iterations; ++out.iterations) {
    bool all = true;
    for (int k = 0; k < d; ++k) {
      if (done[static_cast<std::size_t>(k)]) continue;
      const Horner h = horner(c, z[static_cast<std::size_t>(k)]);
      if (h.value == 0.0L || relative_residual(c, z[static_cast<std::size_t>(k)]) < kStep) {
        done[static_cast<std::size_t>(k)] = 1;
        continue;
      }
      const cld ratio = h.value / h.slope;
      cld repulsion = 0.0L;
      for (int j = 0; j < d; ++j)
        if (j != k) repulsion += 1.0L / (z[static_cast<std::size_t>(k)] - z[static_cast<std::size_t>(j)]);
      const cld w = ratio / (1.0L - ratio * repulsion);
      z[static_cast<std::size_t>(k)] -= w;
      if (std::abs(w) <= kStep * std::max(1.0L, std::abs(z[static_cast<std::size_t>(k)]))) {
        done[static_cast<std::size_t>(k)] = 1;
      } else {
        all = false;
      }
    }
    if (all) break;
  }
  if (d > kPolishDegree) polish(sf, z);
  out.converged = true;
  for (const cld& r : z) {
    const double res = relative_residual(original, r);
    out.max_residual = std::max(out.max_residual, res);
    if (!(res < opts.residual_tol)) out.converged = false;
    out.roots.emplace_back(static_cast<double>(r.real()), static_cast<double>(r.imag()));
  }
  std::sort(out.roots.begin(), out.roots.end(), [](const auto& a, const auto& b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  std::vector<std::complex<double>> distinct;
  for (const auto& r : out.roots) {
    const bool dup = std::any_of(distinct.begin(), distinct.end(),
                                 [&](const auto& q) { return std::abs(q - r) < opts.merge_tol; });
    if (!dup) distinct.push_back(r);
  }
  out.roots = std::move(distinct);
  if (!out.converged && !opts.allow_partial)
    throw NoConvergence("root iteration did not converge (max residual " +
                        std::to_string(out.max_residual) + ")");
  return out;
}

PolynomialRootStats polynomial_root_stats(const LaurentPolynomial& p, const RootResult& roots) {
  PolynomialRootStats s;
  s.span = p.span();
  s.distinct_roots = roots.roots.size();
  if (p.span() >= 1) {
    const auto& c = p.coeffs();
    s.root_sum = -to_double(c[c.size() - 2]) / to_double(c.back());
  }
  for (const auto& r : roots.roots) {
    if (std::abs(r.imag()) > kRealTol * std::max(1.0, std::abs(r))) continue;
    ++s.real_roots;
    if (r.real() <= 0.0) {
      s.real_roots_positive = false;
    } else if (!s.min_positive_real || r.real() < *s.min_positive_real) {
      s.min_positive_real = r.real();
    }
  }
  return s;
}

std::vector<std::complex<double>> pool_roots(const std::vector<std::vector<std::complex<double>>>& sets,
                                             double tol) {
  std::vector<std::complex<double>> all;
  for (const auto& s : sets) all.insert(all.end(), s.begin(), s.end());
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  std::vector<std::complex<double>> out;
  std::size_t window = 0;  // first pooled root with real part >= current - tol
  for (const auto& r : all) {
    while (window < out.size() && out[window].real() < r.real() - tol) ++window;
    bool dup = false;
    for (std::size_t k = window; k < out.size() && !dup; ++k) dup = std::abs(out[k] - r) < tol;
    if (!dup) out.push_back(r);
  }
  return out;
}

double median_unit_distance(const std::vector<std::complex<double>>& roots) {
  if (roots.empty()) return 0.0;
  std::vector<double> d;
  d.reserve(roots.size());
  for (const auto& r : roots) {
    const double dist = std::abs(std::abs(r) - 1.0);
    d.push_back(dist <= kUnitTol ? 0.0 : dist);
  }
  std::sort(d.begin(), d.end());
  const std::size_t n = d.size();
  return n % 2 == 1 ? d[n / 2] : 0.5 * (d[n / 2 - 1] + d[n / 2]);
}

RootSummary summarize_roots(const std::vector<LaurentPolynomial>& ps,
                            const std::vector<RootResult>& roots) {
  if (ps.size() != roots.size()) throw ValidationError("one root result per polynomial required");
  RootSummary s;
  s.polynomials = ps.size();
  std::vector<std::vector<std::complex<double>>> sets;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const PolynomialRootStats st = polynomial_root_stats(ps[i], roots[i]);
    if (st.span >= 1) {
      ++s.nontrivial;
      if (st.root_sum > 0.0) ++s.positive_root_sum;
    }
    s.real_roots += st.real_roots;
    for (const auto& r : roots[i].roots)
      if (std::abs(r.imag()) <= kRealTol * std::max(1.0, std::abs(r))) {
        if (r.real() <= 0.0) ++s.negative_real_roots;
        if (!s.min_real_root || r.real() < *s.min_real_root) s.min_real_root = r.real();
      }
    if (!st.real_roots_positive) s.all_real_roots_positive = false;
    s.max_span = std::max(s.max_span, st.span);
    s.per_polynomial.push_back(st);
    sets.push_back(roots[i].roots);
  }
  s.max_half_span = s.max_span / 2;
  s.positive_root_sum_fraction =
      s.nontrivial > 0 ? static_cast<double>(s.positive_root_sum) / static_cast<double>(s.nontrivial) : 0.0;
  s.pooled_roots = pool_roots(sets);
  s.median_unit_distance = median_unit_distance(s.pooled_roots);
  s.unit_distance_edges = {0.0, 0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0};
  s.unit_distance_histogram.assign(s.unit_distance_edges.size(), 0);
  for (const auto& r : s.pooled_roots) {
    const double dist = std::abs(std::abs(r) - 1.0);
    std::size_t bin = 0;
    while (bin + 1 < s.unit_distance_edges.size() && dist >= s.unit_distance_edges[bin + 1]) ++bin;
    ++s.unit_distance_histogram[bin];
  }
  return s;
}

RootSummary root_statistics(const std::vector<LaurentPolynomial>& ps, const RootOptions& opts) {
  std::vector<RootResult> roots;
  roots.reserve(ps.size());
  for (const auto& p : ps) roots.push_back(laurent_roots(p, opts));
  return summarize_roots(ps, roots);
}

}  // namespace rfk
