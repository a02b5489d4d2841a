#include "rfk/diagram.hpp"

#include <string>

#include "rfk/error.hpp"

namespace rfk {

CrossingDiagram diagram_from_gauss(const std::vector<GaussEntry>& code) {
  if (code.size() % 2 != 0) throw InvalidDiagram("Gauss code has odd length");
  const int n = static_cast<int>(code.size() / 2);
  CrossingDiagram d;
  d.crossings.resize(n);
  std::vector<int> seen(n, 0), first_pos(n, -1), over_count(n, 0), sign(n, 0);
  for (std::size_t p = 0; p < code.size(); ++p) {
    const GaussEntry& e = code[p];
    if (e.label < 1 || e.label > n)
      throw InvalidDiagram("crossing label " + std::to_string(e.label) + " out of range");
    if (e.sign != 1 && e.sign != -1) throw InvalidDiagram("crossing sign must be +1 or -1");
    const int c = e.label - 1;
    if (seen[c] == 0) {
      first_pos[c] = static_cast<int>(p);
      sign[c] = e.sign;
      d.crossings[c].first_over = e.over;
    } else if (sign[c] != e.sign) {
      throw InvalidDiagram("inconsistent sign for crossing " + std::to_string(e.label));
    } else {
      d.crossings[c].t = static_cast<double>(p);
    }
    ++seen[c];
    over_count[c] += e.over ? 1 : 0;
    d.gauss.push_back({c, e.over});
  }
  for (int c = 0; c < n; ++c) {
    if (seen[c] != 2 || over_count[c] != 1)
      throw InvalidDiagram("crossing " + std::to_string(c + 1) +
                           " must appear once over and once under");
    d.crossings[c].s = first_pos[c];
    d.crossings[c].sign = sign[c];
  }
  for (std::size_t p = 0; p < code.size(); ++p) d.params.push_back(static_cast<double>(p));
  return d;
}

std::vector<GaussEntry> gauss_entries(const CrossingDiagram& d) {
  std::vector<GaussEntry> out;
  out.reserve(d.gauss.size());
  for (const Passage& p : d.gauss) out.push_back({p.crossing + 1, p.over, d.crossings[p.crossing].sign});
  return out;
}

void validate(const CrossingDiagram& d) {
  const int n = d.size();
  if (static_cast<int>(d.gauss.size()) != 2 * n)
    throw InvalidDiagram("Gauss code length must be twice the crossing count");
  if (!d.params.empty() && d.params.size() != d.gauss.size())
    throw InvalidDiagram("parameter list length does not match the Gauss code");
  std::vector<int> over(n, 0), under(n, 0), first(n, -1);
  for (std::size_t p = 0; p < d.gauss.size(); ++p) {
    const Passage& g = d.gauss[p];
    if (g.crossing < 0 || g.crossing >= n) throw InvalidDiagram("crossing label out of range");
    (g.over ? over : under)[g.crossing]++;
    if (first[g.crossing] < 0) {
      first[g.crossing] = static_cast<int>(p);
      if (g.over != d.crossings[g.crossing].first_over)
        throw InvalidDiagram("over flag disagrees with crossing record");
    }
  }
  for (int c = 0; c < n; ++c) {
    if (over[c] != 1 || under[c] != 1)
      throw InvalidDiagram("crossing " + std::to_string(c + 1) + " must be passed once over and once under");
    if (d.crossings[c].sign != 1 && d.crossings[c].sign != -1)
      throw InvalidDiagram("crossing sign must be +1 or -1");
  }
}

CrossingDiagram mirror(const CrossingDiagram& d) {
  CrossingDiagram m = d;
  for (auto& c : m.crossings) {
    c.sign = -c.sign;
    c.first_over = !c.first_over;
  }
  for (auto& p : m.gauss) p.over = !p.over;
  return m;
}

ArcStructure overarcs(const CrossingDiagram& d) {
  const int n = d.size();
  const int len = static_cast<int>(d.gauss.size());
  ArcStructure a;
  a.arcs = n;
  a.over_arc.assign(n, -1);
  a.incoming_arc.assign(n, -1);
  a.outgoing_arc.assign(n, -1);
  if (n == 0) return a;
  // Arc index at each position: number of under passages strictly before it, minus one (cyclic).
  int unders_seen = 0;
  std::vector<int> arc_at(len);
  for (int p = 0; p < len; ++p) {
    arc_at[p] = (unders_seen + n - 1) % n;
    if (!d.gauss[p].over) ++unders_seen;
  }
  for (int p = 0; p < len; ++p) {
    const Passage& g = d.gauss[p];
    if (g.over) {
      a.over_arc[g.crossing] = arc_at[p];
    } else {
      a.incoming_arc[g.crossing] = arc_at[p];
      a.outgoing_arc[g.crossing] = (arc_at[p] + 1) % n;
    }
  }
  return a;
}

}  // namespace rfk
