#include "rfk/modular.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace rfk {

using boost::multiprecision::cpp_int;

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) noexcept {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) noexcept { return pow_mod(a, p - 2, p); }

std::uint64_t residue(const cpp_int& v, std::uint64_t p) {
  cpp_int r = v % p;
  if (r < 0) r += p;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t residue(std::int64_t v, std::uint64_t p) noexcept {
  const std::int64_t r = v % static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t word_prime(std::size_t i) {
  static std::mutex mutex;
  static std::vector<std::uint64_t> primes;
  const std::lock_guard lock(mutex);
  std::uint64_t candidate = primes.empty() ? (std::uint64_t{1} << 61) - 1 : primes.back() - 2;
  while (primes.size() <= i) {
    while (!is_prime(candidate)) candidate -= 2;
    primes.push_back(candidate);
    candidate -= 2;
  }
  return primes[i];
}

std::uint64_t det_mod(std::vector<std::uint64_t>& m, std::size_t n, std::uint64_t p) {
  std::uint64_t det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && m[pivot * n + c] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != c) {
      for (std::size_t k = c; k < n; ++k) std::swap(m[c * n + k], m[pivot * n + k]);
      det = det == 0 ? 0 : p - det;
    }
    const std::uint64_t pv = m[c * n + c];
    det = mul_mod(det, pv, p);
    const std::uint64_t inv = inv_mod(pv, p);
    for (std::size_t r = c + 1; r < n; ++r) {
      const std::uint64_t f = mul_mod(m[r * n + c], inv, p);
      if (f == 0) continue;
      std::uint64_t* row = &m[r * n];
      const std::uint64_t* top = &m[c * n];
      for (std::size_t k = c + 1; k < n; ++k) {
        if (top[k] != 0) row[k] = sub_mod(row[k], mul_mod(f, top[k], p), p);
      }
      row[c] = 0;
    }
  }
  return det;
}

std::uint64_t sparse_det_mod(std::vector<std::vector<SparseEntry>> rows, std::size_t n,
                             std::uint64_t p) {
  if (rows.size() != n) throw std::invalid_argument("sparse_det_mod: row count mismatch");
  if (n == 0) return 1;
  std::vector<std::vector<std::uint32_t>> cols(n);
  for (std::uint32_t r = 0; r < n; ++r)
    for (const SparseEntry& e : rows[r]) cols[e.column].push_back(r);
  const auto drop = [&](std::uint32_t col, std::uint32_t row) {
    auto& v = cols[col];
    auto it = std::find(v.begin(), v.end(), row);
    *it = v.back();
    v.pop_back();
  };
  std::vector<char> col_done(n, 0);
  std::vector<std::uint32_t> pivot_row(n), pivot_col(n);
  std::vector<SparseEntry> merged;
  std::uint64_t det = 1;
  for (std::size_t step = 0; step < n; ++step) {
    // Sparsest open column, then its shortest row.
    std::size_t best = n, best_count = SIZE_MAX;
    for (std::size_t c = 0; c < n; ++c)
      if (!col_done[c] && cols[c].size() < best_count) {
        best = c;
        best_count = cols[c].size();
        if (best_count <= 1) break;
      }
    if (best_count == 0) return 0;
    const auto col = static_cast<std::uint32_t>(best);
    std::uint32_t prow = cols[col][0];
    for (std::uint32_t r : cols[col])
      if (rows[r].size() < rows[prow].size()) prow = r;
    pivot_row[step] = prow;
    pivot_col[step] = col;
    col_done[col] = 1;
    const std::vector<SparseEntry> top = std::move(rows[prow]);
    rows[prow].clear();
    for (const SparseEntry& e : top) drop(e.column, prow);
    std::uint64_t pv = 0;
    for (const SparseEntry& e : top)
      if (e.column == col) pv = e.value;
    det = mul_mod(det, pv, p);
    const std::uint64_t inv = inv_mod(pv, p);
    const std::vector<std::uint32_t> targets = cols[col];
    for (std::uint32_t r : targets) {
      auto& row = rows[r];
      std::uint64_t f = 0;
      for (const SparseEntry& e : row)
        if (e.column == col) f = mul_mod(e.value, inv, p);
      // row -= f * top, merging sorted column lists.
      merged.clear();
      std::size_t a = 0, b = 0;
      while (a < row.size() || b < top.size()) {
        if (b == top.size() || (a < row.size() && row[a].column < top[b].column)) {
          merged.push_back(row[a++]);
        } else if (a == row.size() || top[b].column < row[a].column) {
          const std::uint64_t v = sub_mod(0, mul_mod(f, top[b].value, p), p);
          if (v != 0) {
            merged.push_back({top[b].column, v});
            cols[top[b].column].push_back(r);
          }
          ++b;
        } else {
          const std::uint64_t v = sub_mod(row[a].value, mul_mod(f, top[b].value, p), p);
          if (v != 0) merged.push_back({row[a].column, v});
          else drop(row[a].column, r);
          ++a;
          ++b;
        }
      }
      row.swap(merged);
    }
  }
  // Sign of the permutation step -> (row, column).
  const auto parity = [n](const std::vector<std::uint32_t>& perm) {
    std::vector<char> seen(n, 0);
    std::size_t swaps = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (seen[i]) continue;
      std::size_t len = 0;
      for (std::size_t j = i; !seen[j]; j = perm[j]) {
        seen[j] = 1;
        ++len;
      }
      swaps += len - 1;
    }
    return swaps % 2;
  };
  if ((parity(pivot_row) + parity(pivot_col)) % 2 == 1) det = det == 0 ? 0 : p - det;
  return det;
}

bool CrtAccumulator::add(const std::vector<std::uint64_t>& v, std::uint64_t p) {
  if (primes_ == 0) {
    values_.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::uint64_t r = v[i];
      values_[i] = r > p / 2 ? cpp_int(r) - p : cpp_int(r);
    }
    modulus_ = p;
    primes_ = 1;
    return false;
  }
  if (v.size() != values_.size()) throw std::invalid_argument("CRT: length mismatch");
  const std::uint64_t m_mod_p = residue(modulus_, p);
  const std::uint64_t m_inv = inv_mod(m_mod_p, p);
  const cpp_int new_modulus = modulus_ * p;
  const cpp_int half = new_modulus / 2;
  bool stable = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    // x = values + modulus * ((v - values) / modulus mod p)
    const std::uint64_t cur = residue(values_[i], p);
    const std::uint64_t k = mul_mod(sub_mod(v[i], cur, p), m_inv, p);
    if (k == 0) continue;
    cpp_int x = values_[i] + modulus_ * k;
    if (x > half) x -= new_modulus;
    if (x < -half) x += new_modulus;
    if (x != values_[i]) stable = false;
    values_[i] = std::move(x);
  }
  modulus_ = new_modulus;
  ++primes_;
  return stable;
}

}  // namespace rfk
