#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rfk {

using BigInt = boost::multiprecision::cpp_int;

/// Integer Laurent polynomial sum_i coeffs[i] t^(min_exp + i), kept trimmed so that the
/// first and last stored coefficients are nonzero. The zero polynomial has no coefficients
/// and min_exp 0.
class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;
  LaurentPolynomial(int min_exp, std::vector<BigInt> coeffs);
  LaurentPolynomial(int min_exp, std::initializer_list<long long> coeffs);

  static LaurentPolynomial constant(const BigInt& c) { return monomial(c, 0); }
  static LaurentPolynomial monomial(const BigInt& c, int exponent);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  int min_exp() const noexcept { return min_exp_; }
  int max_exp() const noexcept { return min_exp_ + static_cast<int>(coeffs_.size()) - 1; }
  /// max_exp - min_exp; 0 for constants and for zero.
  int span() const noexcept { return coeffs_.empty() ? 0 : static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
  BigInt coeff(int exponent) const;

  BigInt at_one() const;
  std::complex<long double> evaluate(std::complex<long double> t) const;
  /// Value at t modulo p; t must be nonzero mod p.
  std::uint64_t evaluate_mod(std::uint64_t t, std::uint64_t p) const;

  /// Multiplication by t^k.
  LaurentPolynomial shifted(int k) const;
  bool is_palindromic() const;

  LaurentPolynomial operator-() const;
  friend LaurentPolynomial operator+(const LaurentPolynomial& a, const LaurentPolynomial& b);
  friend LaurentPolynomial operator-(const LaurentPolynomial& a, const LaurentPolynomial& b);
  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);
  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) = default;

  /// Human-readable form, e.g. "t - 1 + t^-1" (descending exponents).
  std::string to_string() const;

 private:
  void trim();
  int min_exp_ = 0;
  std::vector<BigInt> coeffs_;
};

/// Canonical Alexander form: Delta(1) > 0 (leading sign positive when Delta(1) = 0) and
/// min_exp = -floor(span / 2), so reciprocal polynomials become symmetric.
LaurentPolynomial normalize_alexander(const LaurentPolynomial& p);

/// Coefficient as a signed 64-bit value if it fits.
bool fits_int64(const BigInt& v);

}  // namespace rfk
