#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "rfk/laurent.hpp"

namespace rfk {

struct RootOptions {
  int max_iterations = 2000;
  double residual_tol = 1e-10;  // |p(r)| / sum |c_k| |r|^k
  double merge_tol = 1e-8;      // roots closer than this are one root
  bool allow_partial = false;   // return unconverged results instead of throwing
};

struct RootResult {
  std::vector<std::complex<double>> roots;  // distinct nonzero roots
  bool converged = false;
  int iterations = 0;
  double max_residual = 0.0;
};

/// Distinct nonzero roots of t^(-min_exp) p(t). Multiple roots are removed first by taking
/// the square-free part over the integers, then all roots are found at once by Aberth-Ehrlich
/// iteration started from Newton-polygon circles. NoConvergence at the iteration cap unless
/// allow_partial is set.
RootResult laurent_roots(const LaurentPolynomial& p, const RootOptions& opts = {});

/// Square-free part of an integer polynomial (ascending coefficients), made primitive with a
/// positive leading coefficient.
std::vector<BigInt> square_free_part(const std::vector<BigInt>& poly);

/// A root counts as real when |Im r| <= kRealTol * max(1, |r|).
inline constexpr double kRealTol = 1e-9;

struct PolynomialRootStats {
  int span = 0;
  std::size_t distinct_roots = 0;
  double root_sum = 0.0;  // -c_{d-1}/c_d, i.e. with multiplicity
  std::size_t real_roots = 0;
  bool real_roots_positive = true;
  std::optional<double> min_positive_real;
};

struct RootSummary {
  std::size_t polynomials = 0;
  std::size_t nontrivial = 0;  // span >= 1; only these enter the fractions below
  std::size_t positive_root_sum = 0;
  double positive_root_sum_fraction = 0.0;
  std::size_t real_roots = 0;
  std::size_t negative_real_roots = 0;
  bool all_real_roots_positive = true;
  std::optional<double> min_real_root;
  int max_span = 0;
  int max_half_span = 0;
  double median_unit_distance = 0.0;  // over the pooled (distinct) roots: median of ||r| - 1|
  std::vector<double> unit_distance_edges;             // histogram bin edges of ||r| - 1|
  std::vector<std::size_t> unit_distance_histogram;    // pooled roots per bin
  std::vector<PolynomialRootStats> per_polynomial;
  std::vector<std::complex<double>> pooled_roots;      // distinct across all polynomials
};

PolynomialRootStats polynomial_root_stats(const LaurentPolynomial& p, const RootResult& roots);

/// Roots and aggregate statistics of a list of polynomials.
RootSummary root_statistics(const std::vector<LaurentPolynomial>& ps, const RootOptions& opts = {});

/// Same, reusing roots that were already computed (roots[i] belongs to ps[i]).
RootSummary summarize_roots(const std::vector<LaurentPolynomial>& ps,
                            const std::vector<RootResult>& roots);

/// Union of root sets without multiplicity (points within tol merged), in a canonical order.
std::vector<std::complex<double>> pool_roots(const std::vector<std::vector<std::complex<double>>>& sets,
                                             double tol = 1e-8);

/// Roots within this distance of the unit circle count as on it (distance 0); the root
/// finder resolves unimodular roots to about 1e-15, so smaller gaps are rounding.
inline constexpr double kUnitTol = 1e-9;

/// Median of ||r| - 1| over a root set; 0 for an empty set.
double median_unit_distance(const std::vector<std::complex<double>>& roots);

}  // namespace rfk
