#pragma once

// Reference implementations used only by the tests. They share no code with the library
// beyond its plain data types, and favour obviousness over speed.

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "rfk/diagram.hpp"
#include "rfk/laurent.hpp"
#include "rfk/vec.hpp"

namespace oracle {

/// Sparse Laurent polynomial with 64-bit coefficients: exponent -> coefficient.
using Poly = std::map<int, long long>;

inline Poly trimmed(Poly p) {
  for (auto it = p.begin(); it != p.end();) it = it->second == 0 ? p.erase(it) : std::next(it);
  return p;
}

inline Poly mul(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) r[ea + eb] += ca * cb;
  return trimmed(r);
}

inline Poly add(const Poly& a, const Poly& b, long long sb = 1) {
  Poly r = a;
  for (const auto& [e, c] : b) r[e] += sb * c;
  return trimmed(r);
}

/// Laplace expansion along the first row.
inline Poly det(const std::vector<std::vector<Poly>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return {{0, 1}};
  if (n == 1) return m[0][0];
  Poly total;
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col].empty()) continue;
    std::vector<std::vector<Poly>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Poly> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != col) row.push_back(m[r][c]);
      minor.push_back(row);
    }
    total = add(total, mul(m[0][col], det(minor)), col % 2 == 0 ? 1 : -1);
  }
  return total;
}

/// Shift to exponents -floor(span/2).. and sign so that the value at 1 is positive.
inline Poly normalized(const Poly& p) {
  if (p.empty()) return p;
  const int lo = p.begin()->first, hi = p.rbegin()->first;
  const int shift = -(hi - lo) / 2 - lo;
  long long at1 = 0;
  for (const auto& [e, c] : p) at1 += c;
  const long long s = at1 < 0 || (at1 == 0 && p.rbegin()->second < 0) ? -1 : 1;
  Poly r;
  for (const auto& [e, c] : p) r[e + shift] = s * c;
  return r;
}

/// Alexander polynomial from a signed Gauss code (1-based labels): Wirtinger relations
/// x_out = x_over^e x_in x_over^-e, Fox derivatives abelianized, last row and column dropped.
inline Poly alexander(const std::vector<rfk::GaussEntry>& code) {
  const int len = static_cast<int>(code.size());
  if (len == 0) return {{0, 1}};
  int n = 0;
  for (const auto& e : code) n = std::max(n, e.label);
  // Arc a runs from the a-th under passage (exclusive) to the next one.
  std::vector<int> unders;
  for (int i = 0; i < len; ++i)
    if (!code[i].over) unders.push_back(i);
  const int arcs = static_cast<int>(unders.size());
  const auto arc_after = [&](int pos) {  // arc containing the passage just after position pos
    int a = arcs - 1;
    for (int k = 0; k < arcs; ++k)
      if (unders[k] <= pos) a = k;
    return a;
  };
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
  for (int k = 0; k < arcs; ++k) {
    const int pos = unders[k];
    const int label = code[pos].label - 1;
    const int sign = code[pos].sign;
    int over_pos = 0;
    for (int i = 0; i < len; ++i)
      if (code[i].label == code[pos].label && code[i].over) over_pos = i;
    const int over = arc_after(over_pos);
    const int in = (k + arcs - 1) % arcs;
    const int out = k;
    // Relation for sign +1: x_over x_in x_over^-1 x_out^-1; for -1 the conjugation is inverted.
    auto& row = m[label];
    if (sign > 0) {
      row[over] = add(row[over], {{0, 1}, {1, -1}});
      row[in] = add(row[in], {{1, 1}});
      row[out] = add(row[out], {{0, -1}});
    } else {
      row[over] = add(row[over], {{0, 1}, {1, -1}});
      row[in] = add(row[in], {{0, -1}});
      row[out] = add(row[out], {{1, 1}});
    }
  }
  std::vector<std::vector<Poly>> minor(n - 1, std::vector<Poly>(n - 1));
  for (int r = 0; r + 1 < n; ++r)
    for (int c = 0; c + 1 < n; ++c) minor[r][c] = m[r][c];
  return normalized(det(minor));
}

inline Poly from(const rfk::LaurentPolynomial& p) {
  Poly r;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i)
    r[p.min_exp() + static_cast<int>(i)] = p.coeffs()[i].convert_to<long long>();
  return trimmed(r);
}

/// Plain floating-point segment test on every non-adjacent pair of a closed polyline.
inline std::vector<std::pair<std::size_t, std::size_t>> crossing_pairs(const std::vector<rfk::Vec2>& pts) {
  const std::size_t n = pts.size();
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const auto side = [](rfk::Vec2 a, rfk::Vec2 b, rfk::Vec2 c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      const rfk::Vec2 a = pts[i], b = pts[(i + 1) % n], c = pts[j], d = pts[(j + 1) % n];
      const double d1 = side(a, b, c), d2 = side(a, b, d), d3 = side(c, d, a), d4 = side(c, d, b);
      if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        out.emplace_back(i, j);
    }
  return out;
}

/// sum_{k=1}^{terms} cos(kx)/k^p by direct summation, smallest terms first.
inline double cos_series(double x, double p, long terms) {
  long double s = 0.0L;
  for (long k = terms; k >= 1; --k) s += std::cos(static_cast<long double>(k) * x) / std::pow(static_cast<long double>(k), p);
  return static_cast<double>(s);
}

}  // namespace oracle
