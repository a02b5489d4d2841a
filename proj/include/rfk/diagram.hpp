#pragma once

#include <vector>

namespace rfk {

/// One passage through a crossing while traversing the knot.
struct Passage {
  int crossing = 0;  // 0-based label
  bool over = false;

  friend bool operator==(const Passage&, const Passage&) = default;
};

/// Signed Gauss code of a knot diagram.
///
/// `gauss` lists the 2n passages in parameter order. Each crossing label occurs
/// exactly twice, once over and once under. `params` (optional) holds the curve
/// parameter of each passage.
struct CrossingDiagram {
  struct Crossing {
    double s = 0.0;          // parameter of the first passage
    double t = 0.0;          // parameter of the second passage
    int sign = 1;            // right-handed crossings are +1
    bool first_over = true;  // the strand at s is the over strand

    friend bool operator==(const Crossing&, const Crossing&) = default;
  };

  std::vector<Crossing> crossings;
  std::vector<Passage> gauss;
  std::vector<double> params;

  int size() const noexcept { return static_cast<int>(crossings.size()); }
  bool empty() const noexcept { return crossings.empty(); }

  friend bool operator==(const CrossingDiagram&, const CrossingDiagram&) = default;
};

/// (label, over, sign) triple as used by the text and JSON encodings; labels are 1-based.
struct GaussEntry {
  int label = 0;
  bool over = false;
  int sign = 1;
};

/// Builds a diagram from a signed Gauss code. Throws InvalidDiagram when a label does not
/// appear exactly once over and once under, or when the two signs of a label disagree.
CrossingDiagram diagram_from_gauss(const std::vector<GaussEntry>& code);
std::vector<GaussEntry> gauss_entries(const CrossingDiagram& d);

/// Throws InvalidDiagram if the passages and crossing records are inconsistent.
void validate(const CrossingDiagram& d);

/// Mirror image: every over/under flag swapped and every sign negated.
CrossingDiagram mirror(const CrossingDiagram& d);

/// Overarc structure. Arc j starts just after the j-th under passage (in code order)
/// and ends at the next under passage.
struct ArcStructure {
  int arcs = 0;
  std::vector<int> over_arc;      // per crossing
  std::vector<int> incoming_arc;  // per crossing: arc ending at its under passage
  std::vector<int> outgoing_arc;  // per crossing: arc starting after its under passage
};
ArcStructure overarcs(const CrossingDiagram& d);

}  // namespace rfk
