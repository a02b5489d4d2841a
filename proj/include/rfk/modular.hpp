#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rfk {

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) noexcept {
  const std::uint64_t s = a + b;  // p < 2^62, no wraparound
  return s >= p ? s - p : s;
}
inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) noexcept {
  return a >= b ? a - b : a + p - b;
}
inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) noexcept {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) noexcept;
/// Inverse of a nonzero residue modulo a prime.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) noexcept;

/// Reduction of an arbitrary integer into [0, p).
std::uint64_t residue(const boost::multiprecision::cpp_int& v, std::uint64_t p);
std::uint64_t residue(std::int64_t v, std::uint64_t p) noexcept;

/// Deterministic Miller-Rabin for 64-bit integers.
bool is_prime(std::uint64_t n) noexcept;

/// The i-th prime below 2^61, in descending order (cached).
std::uint64_t word_prime(std::size_t i);

/// Determinant of a dense n x n matrix (row-major) modulo p by Gaussian elimination;
/// the matrix is overwritten.
std::uint64_t det_mod(std::vector<std::uint64_t>& m, std::size_t n, std::uint64_t p);

struct SparseEntry {
  std::uint32_t column;
  std::uint64_t value;
};
/// Determinant of a sparse n x n matrix modulo p (rows with sorted, distinct columns and
/// nonzero values), by elimination with Markowitz-style pivoting to limit fill.
std::uint64_t sparse_det_mod(std::vector<std::vector<SparseEntry>> rows, std::size_t n,
                             std::uint64_t p);

/// Incremental Chinese remaindering with symmetric (signed) representatives.
class CrtAccumulator {
 public:
  /// Folds in values[i] mod p; returns true if no representative changed.
  bool add(const std::vector<std::uint64_t>& values, std::uint64_t p);
  const std::vector<boost::multiprecision::cpp_int>& values() const noexcept { return values_; }
  const boost::multiprecision::cpp_int& modulus() const noexcept { return modulus_; }
  std::size_t primes() const noexcept { return primes_; }

 private:
  std::vector<boost::multiprecision::cpp_int> values_;
  boost::multiprecision::cpp_int modulus_ = 1;
  std::size_t primes_ = 0;
};

}  // namespace rfk
