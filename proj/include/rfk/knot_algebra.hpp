#pragma once

#include <string>
#include <vector>

#include "rfk/diagram.hpp"
#include "rfk/laurent.hpp"

namespace rfk {

using LaurentMatrix = std::vector<std::vector<LaurentPolynomial>>;

/// Removes Reidemeister I kinks (the two passages of a crossing are cyclically adjacent) and
/// Reidemeister II bigons (two crossings adjacent twice along the code, over at both
/// passages of one adjacency, under at both of the other, opposite signs) until none remain.
/// Surviving crossings keep their relative order and are relabelled 0..n'-1.
CrossingDiagram simplify_diagram(const CrossingDiagram& d);

/// n x n Alexander matrix of the Wirtinger presentation via Fox calculus. Row c belongs to
/// crossing c with overarc k, incoming underarc i and outgoing underarc j:
///   sign +1: (1-t) at k, t at i, -1 at j;  sign -1: (1-t) at k, -1 at i, t at j.
LaurentMatrix alexander_matrix(const CrossingDiagram& d);

struct DeterminantOptions {
  std::size_t max_primes = 256;
};

/// Exact determinant of a square Laurent matrix by evaluation and interpolation over word-size
/// prime fields, recombined by Chinese remaindering up to a Hadamard-type coefficient bound.
/// InsufficientPrimes if the bound needs more than max_primes primes.
LaurentPolynomial determinant_laurent(const LaurentMatrix& m, const DeterminantOptions& opts = {});

/// Naive cofactor expansion; reference implementation for small matrices.
LaurentPolynomial determinant_cofactor(const LaurentMatrix& m);

enum class AlexanderMethod {
  fast,   // modular evaluation of the minor exploiting Delta(t) = Delta(1/t) (see below)
  exact,  // determinant_laurent of the minor
};

struct AlexanderOptions {
  AlexanderMethod method = AlexanderMethod::fast;
  bool simplify = true;
};

/// Normalized Alexander polynomial (normalize_alexander) of the minor with the last row and
/// column deleted. Empty diagrams give 1.
///
/// The fast method writes the minor determinant as f(t) = +-t^a Delta(t), finds the shift
/// s = 2a + span from f(t0) = t0^s f(1/t0), and interpolates the symmetric part as a
/// polynomial in q = t + 1/t, adding points until two successive checks agree. Residues
/// from successive primes are combined until the result is stable for one extra prime or the
/// Hadamard bound is reached. Each step can fail with probability about n / 2^61.
LaurentPolynomial alexander_polynomial(const CrossingDiagram& d, const AlexanderOptions& opts = {});

/// Minor determinant before normalization (for the Delta(1) = +-1 check).
LaurentPolynomial alexander_minor_determinant(const CrossingDiagram& d,
                                              AlexanderMethod method = AlexanderMethod::fast);

struct KnotTableEntry {
  std::string name;
  std::vector<GaussEntry> gauss;
  LaurentPolynomial alexander;
};

/// Prime knots through 8 crossings, polynomials computed by this module from shipped Gauss codes.
const std::vector<KnotTableEntry>& knot_table();

struct KnotId {
  std::string name;                 // "unknot", a table name, or "other"
  bool ambiguous = false;           // several types share the polynomial
  std::vector<std::string> matches; // every table name with this polynomial
  LaurentPolynomial polynomial;
};

/// Lookup of a (normalized) Alexander polynomial. The unknot is always flagged ambiguous.
/// With several matches the name is the first in table order.
KnotId identify_knot(const LaurentPolynomial& p);

}  // namespace rfk
