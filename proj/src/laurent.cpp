#include "rfk/laurent.hpp"

#include <algorithm>
#include <limits>

#include "rfk/modular.hpp"

namespace rfk {

LaurentPolynomial::LaurentPolynomial(int min_exp, std::vector<BigInt> coeffs)
    : min_exp_(min_exp), coeffs_(std::move(coeffs)) {
  trim();
}

LaurentPolynomial::LaurentPolynomial(int min_exp, std::initializer_list<long long> coeffs)
    : min_exp_(min_exp) {
  for (long long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

LaurentPolynomial LaurentPolynomial::monomial(const BigInt& c, int exponent) {
  return LaurentPolynomial(exponent, std::vector<BigInt>{c});
}

void LaurentPolynomial::trim() {
  std::size_t lo = 0;
  while (lo < coeffs_.size() && coeffs_[lo] == 0) ++lo;
  if (lo == coeffs_.size()) {
    coeffs_.clear();
    min_exp_ = 0;
    return;
  }
  std::size_t hi = coeffs_.size();
  while (coeffs_[hi - 1] == 0) --hi;
  coeffs_.erase(coeffs_.begin() + static_cast<std::ptrdiff_t>(hi), coeffs_.end());
  coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lo));
  min_exp_ += static_cast<int>(lo);
}

BigInt LaurentPolynomial::coeff(int e) const {
  if (coeffs_.empty() || e < min_exp_ || e > max_exp()) return 0;
  return coeffs_[static_cast<std::size_t>(e - min_exp_)];
}

BigInt LaurentPolynomial::at_one() const {
  BigInt s = 0;
  for (const auto& c : coeffs_) s += c;
  return s;
}

std::complex<long double> LaurentPolynomial::evaluate(std::complex<long double> t) const {
  std::complex<long double> s = 0.0L;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    s = s * t + static_cast<long double>(*it);
  return s * std::pow(t, min_exp_);
}

std::uint64_t LaurentPolynomial::evaluate_mod(std::uint64_t t, std::uint64_t p) const {
  std::uint64_t s = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    s = add_mod(mul_mod(s, t, p), residue(*it, p), p);
  const std::uint64_t base = min_exp_ >= 0 ? t : inv_mod(t, p);
  return mul_mod(s, pow_mod(base, static_cast<std::uint64_t>(min_exp_ >= 0 ? min_exp_ : -min_exp_), p), p);
}

LaurentPolynomial LaurentPolynomial::shifted(int k) const {
  LaurentPolynomial r = *this;
  if (!r.is_zero()) r.min_exp_ += k;
  return r;
}

bool LaurentPolynomial::is_palindromic() const {
  return std::equal(coeffs_.begin(), coeffs_.end(), coeffs_.rbegin());
}

LaurentPolynomial LaurentPolynomial::operator-() const {
  LaurentPolynomial r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

LaurentPolynomial operator+(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const int lo = std::min(a.min_exp(), b.min_exp());
  const int hi = std::max(a.max_exp(), b.max_exp());
  std::vector<BigInt> c(static_cast<std::size_t>(hi - lo + 1));
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) c[static_cast<std::size_t>(a.min_exp() - lo) + i] += a.coeffs()[i];
  for (std::size_t i = 0; i < b.coeffs().size(); ++i) c[static_cast<std::size_t>(b.min_exp() - lo) + i] += b.coeffs()[i];
  return LaurentPolynomial(lo, std::move(c));
}

LaurentPolynomial operator-(const LaurentPolynomial& a, const LaurentPolynomial& b) { return a + (-b); }

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> c(a.coeffs().size() + b.coeffs().size() - 1);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) c[i + j] += a.coeffs()[i] * b.coeffs()[j];
  return LaurentPolynomial(a.min_exp() + b.min_exp(), std::move(c));
}

std::string LaurentPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (int e = max_exp(); e >= min_exp_; --e) {
    BigInt c = coeff(e);
    if (c == 0) continue;
    const bool neg = c < 0;
    if (neg) c = -c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    const bool unit = c == 1;
    if (!unit || e == 0) out += c.str();
    if (e != 0) {
      out += "t";
      if (e != 1) out += "^" + std::to_string(e);
    }
  }
  return out;
}

LaurentPolynomial normalize_alexander(const LaurentPolynomial& p) {
  if (p.is_zero()) return p;
  const BigInt one = p.at_one();
  const bool flip = one != 0 ? one < 0 : p.coeffs().back() < 0;
  const LaurentPolynomial q = flip ? -p : p;
  return LaurentPolynomial(-(q.span() / 2), q.coeffs());
}

bool fits_int64(const BigInt& v) {
  return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace rfk
