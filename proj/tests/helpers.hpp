// Shared helpers for the test binaries: sequence builders, brute-force
// reference enumerators, and the two-type classifier for plane sequences.
#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "fes/core.hpp"
#include "fes/structure.hpp"

namespace fes::test {

inline ExcSeq make_seq(std::vector<Point> pts) {
  ExcSeq s;
  s.rank = pts.empty() ? 0 : static_cast<int>(pts[0].size());
  s.points = std::move(pts);
  return s;
}

// Every exceptional ordering of the given point set, by trying all |pts|!
// permutations.  Only sensible for 8 points or fewer.
inline std::vector<ExcSeq> exceptional_orderings(std::vector<Point> pts, const DimVec& d) {
  std::sort(pts.begin(), pts.end());
  std::vector<int> idx(pts.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<ExcSeq> found;
  do {
    ExcSeq s;
    s.rank = pts.empty() ? 0 : static_cast<int>(pts[0].size());
    for (int i : idx) s.points.push_back(pts[i]);
    if (is_exceptional(s, d).exceptional) found.push_back(std::move(s));
  } while (std::next_permutation(idx.begin(), idx.end()));
  return found;
}

// All maximal exceptional sequences in the g x g plane grid (d = ones),
// by direct enumeration of every ordered 4-tuple of distinct cells.
// Returns the canonical representatives under translations plus the
// axis swap, as point lists.
inline std::set<std::vector<Point>> brute_canonical_plane(Coord g) {
  std::vector<Point> cells;
  for (Coord x = 0; x < g; ++x)
    for (Coord y = 0; y < g; ++y) cells.push_back({x, y});
  const DimVec d = DimVec::ones(2);
  const SymmetryGroup group = SymmetryGroup::translations_permutations(2);
  std::set<std::vector<Point>> canon;
  const int n = static_cast<int>(cells.size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (b == a || !admissible(cells[a], cells[b], d)) continue;
      for (int c = 0; c < n; ++c) {
        if (c == a || c == b || !admissible(cells[a], cells[c], d) ||
            !admissible(cells[b], cells[c], d))
          continue;
        for (int e = 0; e < n; ++e) {
          if (e == a || e == b || e == c || !admissible(cells[a], cells[e], d) ||
              !admissible(cells[b], cells[e], d) || !admissible(cells[c], cells[e], d))
            continue;
          ExcSeq s = make_seq({cells[a], cells[b], cells[c], cells[e]});
          canon.insert(canonical_form(s, group).points);
        }
      }
    }
  return canon;
}

// The two principal shapes of maximal plane sequences.  Type 1: some axis
// has exactly two adjacent layers of load 2.  Type 2: some axis has three
// consecutive layers with loads (1,2,1) and the two singletons differ by
// exactly 1 in the other coordinate.
inline bool plane_type1(const ExcSeq& seq) {
  for (int axis = 0; axis < 2; ++axis) {
    LayerProfile prof = layer_loads(seq, axis);
    if (prof.loads == std::vector<int>{2, 2}) return true;
  }
  return false;
}

inline bool plane_type2(const ExcSeq& seq) {
  for (int axis = 0; axis < 2; ++axis) {
    LayerProfile prof = layer_loads(seq, axis);
    if (prof.loads != std::vector<int>{1, 2, 1}) continue;
    Coord singles[2];
    int found = 0;
    for (const Point& p : seq.points)
      if (p[axis] == prof.lo || p[axis] == prof.lo + 2) singles[found++] = p[1 - axis];
    if (found == 2 && (singles[0] - singles[1] == 1 || singles[1] - singles[0] == 1))
      return true;
  }
  return false;
}

}  // namespace fes::test
