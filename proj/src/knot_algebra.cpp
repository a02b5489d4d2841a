#include "rfk/knot_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "json.hpp"

#include "knot_table_data.hpp"
#include "rfk/error.hpp"
#include "rfk/modular.hpp"

namespace rfk {

namespace {

struct Code {
  std::vector<Passage> seq;
  std::vector<double> params;
};

// One sweep of simultaneous, disjoint R1/R2 removals. Returns the number of crossings removed.
int simplify_pass(Code& code, const std::vector<int>& sign, std::vector<char>& removed) {
  const std::size_t m = code.seq.size();
  if (m == 0) return 0;
  const int n = static_cast<int>(sign.size());
  std::vector<std::array<std::size_t, 2>> pos(n, {m, m});
  for (std::size_t p = 0; p < m; ++p) {
    auto& slot = pos[code.seq[p].crossing];
    slot[slot[0] == m ? 0 : 1] = p;
  }
  std::vector<char> taken(n, 0);
  int count = 0;
  const auto adjacent = [m](std::size_t a, std::size_t b) {
    return (a + 1) % m == b || (b + 1) % m == a;
  };
  for (std::size_t p = 0; p < m; ++p) {
    const std::size_t q = (p + 1) % m;
    const int a = code.seq[p].crossing, b = code.seq[q].crossing;
    if (taken[a] || taken[b]) continue;
    if (a == b) {
      taken[a] = 1;
      ++count;
        continue;
    }
    if (code.seq[p].over != code.seq[q].over || sign[a] == sign[b]) continue;
    const std::size_t pa = pos[a][0] == p ? pos[a][1] : pos[a][0];
    const std::size_t pb = pos[b][0] == q ? pos[b][1] : pos[b][0];
    if (!adjacent(pa, pb)) continue;
    taken[a] = taken[b] = 1;
    count += 2;
  }
  if (count == 0) return 0;
  Code next;
  for (std::size_t p = 0; p < m; ++p) {
    if (taken[code.seq[p].crossing]) continue;
    next.seq.push_back(code.seq[p]);
    if (!code.params.empty()) next.params.push_back(code.params[p]);
  }
  for (int c = 0; c < n; ++c)
    if (taken[c]) removed[c] = 1;
  code = std::move(next);
  return count;
}

// Minor entries of one crossing row as (column, kind): 0 = 1-t, 1 = t, 2 = -1.
struct RowEntry {
  int column;
  int kind;
};

std::vector<std::vector<RowEntry>> wirtinger_rows(const CrossingDiagram& d) {
  validate(d);
  const ArcStructure arcs = overarcs(d);
  std::vector<std::vector<RowEntry>> rows(d.size());
  for (int c = 0; c < d.size(); ++c) {
    const int k = arcs.over_arc[c], i = arcs.incoming_arc[c], j = arcs.outgoing_arc[c];
    if (k < 0 || i < 0 || j < 0) throw InvalidDiagram("arc structure incomplete");
    if (d.crossings[c].sign > 0) {
      rows[c] = {{k, 0}, {i, 1}, {j, 2}};
    } else {
      rows[c] = {{k, 0}, {i, 2}, {j, 1}};
    }
  }
  return rows;
}

LaurentPolynomial entry_polynomial(int kind) {
  switch (kind) {
    case 0: return LaurentPolynomial(0, {1, -1});
    case 1: return LaurentPolynomial(1, {1});
    default: return LaurentPolynomial(0, {-1});
  }
}

// Determinant of the (n-1) x (n-1) minor at t modulo p.
std::uint64_t minor_det_mod(const std::vector<std::vector<RowEntry>>& rows, std::uint64_t t,
                            std::uint64_t p) {
  const std::size_t n = rows.size() - 1;
  const std::uint64_t val[3] = {sub_mod(1, t, p), t, p - 1};
  std::vector<std::vector<SparseEntry>> m(n);
  for (std::size_t r = 0; r < n; ++r) {
    auto& row = m[r];
    for (const RowEntry& e : rows[r]) {
      if (static_cast<std::size_t>(e.column) >= n) continue;
      const auto col = static_cast<std::uint32_t>(e.column);
      auto it = std::find_if(row.begin(), row.end(), [col](const SparseEntry& x) { return x.column == col; });
      if (it == row.end()) {
        row.push_back({col, val[e.kind]});
      } else {
        it->value = add_mod(it->value, val[e.kind], p);
      }
    }
    std::erase_if(row, [](const SparseEntry& x) { return x.value == 0; });
    std::sort(row.begin(), row.end(),
              [](const SparseEntry& a, const SparseEntry& b) { return a.column < b.column; });
  }
  return sparse_det_mod(std::move(m), n, p);
}

// Deterministic, well-spread evaluation points.
std::uint64_t sample_point(std::uint64_t i, std::uint64_t p) {
  std::uint64_t x = (i + 1) * 0x9E3779B97F4A7C15ull;
  x ^= x >> 31;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 29;
  return 2 + x % (p - 3);
}

// Symmetric part of the minor determinant modulo p: coefficients of t^-D..t^D, plus the shift s.
struct ModularSymmetric {
  std::vector<std::uint64_t> coeffs;  // length 2*bound + 1
  int shift = 0;
};

ModularSymmetric symmetric_minor_mod(const std::vector<std::vector<RowEntry>>& rows, std::uint64_t p,
                                     int bound) {
  const int n = static_cast<int>(rows.size());
  std::uint64_t next_point = 0;
  // Shift s: f(t0) = t0^s f(1/t0), confirmed at a second point.
  int shift = -1;
  for (int attempt = 0; attempt < 8 && shift < 0; ++attempt) {
    std::array<std::uint64_t, 2> t{}, f{}, g{};
    bool degenerate = false;
    for (int k = 0; k < 2; ++k) {
      t[k] = sample_point(next_point++, p);
      f[k] = minor_det_mod(rows, t[k], p);
      g[k] = minor_det_mod(rows, inv_mod(t[k], p), p);
      if (f[k] == 0 || g[k] == 0) degenerate = true;
    }
    if (degenerate) continue;
    std::uint64_t power[2] = {1, 1};
    for (int s = 0; s <= 2 * (n - 1); ++s) {
      if (f[0] == mul_mod(power[0], g[0], p) && f[1] == mul_mod(power[1], g[1], p)) {
        shift = s;
        break;
      }
      power[0] = mul_mod(power[0], t[0], p);
      power[1] = mul_mod(power[1], t[1], p);
    }
    if (shift < 0) throw NumericalError("Alexander minor is not reciprocal; diagram inconsistent");
  }
  if (shift < 0) throw InvalidDiagram("Alexander minor determinant vanishes");
  if (shift % 2 != 0) throw InvalidDiagram("odd Alexander span; not a knot diagram");

  // Newton interpolation of P(q) = f(t) t^(-s/2), q = t + 1/t.
  std::vector<std::uint64_t> nodes, newton;
  int quiet = 0;
  const auto value_at = [&](std::uint64_t t) {
    const std::uint64_t f = minor_det_mod(rows, t, p);
    return mul_mod(f, inv_mod(pow_mod(t, static_cast<std::uint64_t>(shift / 2), p), p), p);
  };
  while (quiet < 2) {
    if (static_cast<int>(nodes.size()) > bound + 3)
      throw NumericalError("Alexander interpolation did not stabilise");
    const std::uint64_t t = sample_point(next_point++, p);
    const std::uint64_t q = add_mod(t, inv_mod(t, p), p);
    if (std::find(nodes.begin(), nodes.end(), q) != nodes.end()) continue;
    const std::uint64_t y = value_at(t);
    // Evaluate the current Newton form and the node product at q.
    std::uint64_t acc = 0, prod = 1;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      acc = add_mod(acc, mul_mod(newton[j], prod, p), p);
      prod = mul_mod(prod, sub_mod(q, nodes[j], p), p);
    }
    const std::uint64_t c = mul_mod(sub_mod(y, acc, p), inv_mod(prod, p), p);
    if (c == 0 && !nodes.empty()) {
      ++quiet;
      continue;
    }
    quiet = 0;
    nodes.push_back(q);
    newton.push_back(c);
  }
  // Newton form -> monomial coefficients in q.
  std::vector<std::uint64_t> mono(1, 0);
  for (std::size_t j = newton.size(); j-- > 0;) {
    // mono = mono * (q - nodes[j]) + newton[j]
    std::vector<std::uint64_t> next(mono.size() + 1, 0);
    for (std::size_t k = 0; k < mono.size(); ++k) {
      next[k + 1] = add_mod(next[k + 1], mono[k], p);
      next[k] = sub_mod(next[k], mul_mod(mono[k], nodes[j], p), p);
    }
    next[0] = add_mod(next[0], newton[j], p);
    mono = std::move(next);
  }
  while (mono.size() > 1 && mono.back() == 0) mono.pop_back();
  const int degree = static_cast<int>(mono.size()) - 1;
  if (degree > bound) throw NumericalError("Alexander degree exceeds the crossing bound");
  // q^m = sum_k C(m,k) t^(m-2k)
  ModularSymmetric out;
  out.shift = shift;
  out.coeffs.assign(static_cast<std::size_t>(2 * bound + 1), 0);
  std::vector<std::uint64_t> binom(1, 1);
  for (int m = 0; m <= degree; ++m) {
    if (m > 0) {
      std::vector<std::uint64_t> next(static_cast<std::size_t>(m + 1), 1);
      for (int k = 1; k < m; ++k) next[k] = add_mod(binom[k - 1], binom[k], p);
      binom = std::move(next);
    }
    if (mono[m] == 0) continue;
    for (int k = 0; k <= m; ++k) {
      const int e = m - 2 * k;
      std::uint64_t& slot = out.coeffs[static_cast<std::size_t>(e + bound)];
      slot = add_mod(slot, mul_mod(mono[m], binom[k], p), p);
    }
  }
  return out;
}

LaurentPolynomial fast_minor_determinant(const std::vector<std::vector<RowEntry>>& rows) {
  const int n = static_cast<int>(rows.size());
  const int bound = (n - 1) / 2;
  // |f| <= sqrt(6)^(n-1) on the unit circle bounds every coefficient.
  const double bound_bits = 0.5 * (n - 1) * std::log2(6.0) + 2.0;
  CrtAccumulator crt;
  int shift = -1;
  for (std::size_t i = 0;; ++i) {
    const std::uint64_t p = word_prime(i);
    const ModularSymmetric r = symmetric_minor_mod(rows, p, bound);
    if (shift >= 0 && r.shift != shift) throw NumericalError("inconsistent Alexander shift across primes");
    shift = r.shift;
    const bool stable = crt.add(r.coeffs, p);
    const double bits = static_cast<double>(boost::multiprecision::msb(crt.modulus()));
    if (stable || bits > bound_bits) break;
  }
  return LaurentPolynomial(shift / 2 - bound, crt.values());
}

LaurentMatrix minor_matrix(const CrossingDiagram& d) {
  const LaurentMatrix full = alexander_matrix(d);
  const std::size_t n = full.size() - 1;
  LaurentMatrix m(n, std::vector<LaurentPolynomial>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m[r][c] = full[r][c];
  return m;
}

}  // namespace

CrossingDiagram simplify_diagram(const CrossingDiagram& d) {
  validate(d);
  std::vector<int> sign(d.size());
  for (int c = 0; c < d.size(); ++c) sign[c] = d.crossings[c].sign;
  Code code{d.gauss, d.params};
  std::vector<char> removed(d.size(), 0);
  while (simplify_pass(code, sign, removed) > 0) {
  }
  std::vector<int> relabel(d.size(), -1);
  int next = 0;
  for (int c = 0; c < d.size(); ++c)
    if (!removed[c]) relabel[c] = next++;
  CrossingDiagram out;
  out.crossings.resize(next);
  for (int c = 0; c < d.size(); ++c)
    if (relabel[c] >= 0) out.crossings[relabel[c]] = d.crossings[c];
  for (Passage p : code.seq) {
    p.crossing = relabel[p.crossing];
    out.gauss.push_back(p);
  }
  out.params = code.params;
  // Passage records stay tied to the first occurrence in code order.
  std::vector<char> seen(next, 0);
  for (std::size_t i = 0; i < out.gauss.size(); ++i) {
    auto& c = out.crossings[out.gauss[i].crossing];
    if (!seen[out.gauss[i].crossing]) {
      seen[out.gauss[i].crossing] = 1;
      c.first_over = out.gauss[i].over;
      if (!out.params.empty()) c.s = out.params[i];
    } else if (!out.params.empty()) {
      c.t = out.params[i];
    }
  }
  return out;
}

LaurentMatrix alexander_matrix(const CrossingDiagram& d) {
  const auto rows = wirtinger_rows(d);
  const std::size_t n = rows.size();
  LaurentMatrix m(n, std::vector<LaurentPolynomial>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (const RowEntry& e : rows[r]) m[r][e.column] = m[r][e.column] + entry_polynomial(e.kind);
  return m;
}

LaurentPolynomial determinant_cofactor(const LaurentMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return LaurentPolynomial::constant(1);
  if (n == 1) return m[0][0];
  LaurentPolynomial sum;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    LaurentMatrix sub(n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) sub[r - 1].push_back(m[r][k]);
    const LaurentPolynomial term = m[0][c] * determinant_cofactor(sub);
    sum = (c % 2 == 0) ? sum + term : sum - term;
  }
  return sum;
}

LaurentPolynomial determinant_laurent(const LaurentMatrix& m, const DeterminantOptions& opts) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw ValidationError("determinant needs a square matrix");
  if (n == 0) return LaurentPolynomial::constant(1);
  // Shift each row to a polynomial; D = sum of row degrees bounds the determinant degree.
  int total_shift = 0, degree = 0;
  double log2_bound = 0.0;
  std::vector<int> shifts(n);
  for (std::size_t r = 0; r < n; ++r) {
    int lo = 0, hi = 0;
    bool any = false;
    double norm2 = 0.0;
    for (const auto& e : m[r]) {
      if (e.is_zero()) continue;
      lo = any ? std::min(lo, e.min_exp()) : e.min_exp();
      hi = any ? std::max(hi, e.max_exp()) : e.max_exp();
      any = true;
      double l1 = 0.0;
      for (const auto& c : e.coeffs()) l1 += std::abs(static_cast<double>(c));
      norm2 += l1 * l1;
    }
    if (!any) return {};
    shifts[r] = lo;
    total_shift += lo;
    degree += hi - lo;
    log2_bound += 0.5 * std::log2(norm2);
  }
  const std::size_t points = static_cast<std::size_t>(degree) + 1;
  CrtAccumulator crt;
  std::vector<std::uint64_t> scratch;
  for (std::size_t i = 0;; ++i) {
    if (i >= opts.max_primes)
      throw InsufficientPrimes("determinant needs more than " + std::to_string(opts.max_primes) + " primes");
    const std::uint64_t p = word_prime(i);
    std::vector<std::uint64_t> xs(points), ys(points);
    for (std::size_t k = 0; k < points; ++k) {
      const std::uint64_t t = k + 1;
      scratch.assign(n * n, 0);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
          if (!m[r][c].is_zero()) scratch[r * n + c] = m[r][c].shifted(-shifts[r]).evaluate_mod(t, p);
      xs[k] = t;
      ys[k] = det_mod(scratch, n, p);
    }
    // Newton divided differences, then expansion into monomials.
    std::vector<std::uint64_t> dd = ys;
    for (std::size_t lvl = 1; lvl < points; ++lvl)
      for (std::size_t k = points - 1; k >= lvl; --k)
        dd[k] = mul_mod(sub_mod(dd[k], dd[k - 1], p), inv_mod(sub_mod(xs[k], xs[k - lvl], p), p), p);
    std::vector<std::uint64_t> mono(1, 0);
    for (std::size_t j = points; j-- > 0;) {
      std::vector<std::uint64_t> next(mono.size() + 1, 0);
      for (std::size_t k = 0; k < mono.size(); ++k) {
        next[k + 1] = add_mod(next[k + 1], mono[k], p);
        next[k] = sub_mod(next[k], mul_mod(mono[k], xs[j], p), p);
      }
      next[0] = add_mod(next[0], dd[j], p);
      mono = std::move(next);
    }
    mono.resize(points);
    crt.add(mono, p);
    if (static_cast<double>(boost::multiprecision::msb(crt.modulus())) > log2_bound + 2.0) break;
  }
  return LaurentPolynomial(total_shift, crt.values());
}

LaurentPolynomial alexander_minor_determinant(const CrossingDiagram& d, AlexanderMethod method) {
  validate(d);
  if (d.empty()) return LaurentPolynomial::constant(1);
  if (method == AlexanderMethod::exact) return determinant_laurent(minor_matrix(d));
  if (d.size() == 1) return LaurentPolynomial::constant(1);
  return fast_minor_determinant(wirtinger_rows(d));
}

LaurentPolynomial alexander_polynomial(const CrossingDiagram& d, const AlexanderOptions& opts) {
  const CrossingDiagram work = opts.simplify ? simplify_diagram(d) : d;
  const LaurentPolynomial det = alexander_minor_determinant(work, opts.method);
  if (det.is_zero()) throw InvalidDiagram("Alexander minor determinant vanishes");
  return normalize_alexander(det);
}

const std::vector<KnotTableEntry>& knot_table() {
  static const std::vector<KnotTableEntry> table = [] {
    std::vector<KnotTableEntry> out;
    const auto doc = nlohmann::json::parse(embedded::kKnotTableJson);
    for (const auto& item : doc) {
      KnotTableEntry e;
      e.name = item.at("name").get<std::string>();
      for (const auto& g : item.at("gauss")) {
        const std::string ou = g.at(1).get<std::string>();
        e.gauss.push_back({g.at(0).get<int>(), ou == "O", g.at(2).get<int>()});
      }
      AlexanderOptions opts;
      opts.method = AlexanderMethod::exact;
      opts.simplify = false;
      e.alexander = alexander_polynomial(diagram_from_gauss(e.gauss), opts);
      out.push_back(std::move(e));
    }
    return out;
  }();
  return table;
}

KnotId identify_knot(const LaurentPolynomial& p) {
  KnotId id;
  id.polynomial = normalize_alexander(p);
  if (id.polynomial == LaurentPolynomial::constant(1)) {
    id.name = "unknot";
    id.ambiguous = true;
    id.matches = {"unknot"};
    return id;
  }
  for (const auto& e : knot_table())
    if (e.alexander == id.polynomial) id.matches.push_back(e.name);
  id.name = id.matches.empty() ? "other" : id.matches.front();
  id.ambiguous = id.matches.size() > 1;
  return id;
}

}  // namespace rfk
