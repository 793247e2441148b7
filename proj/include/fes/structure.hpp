// Layer decompositions of exceptional sequences and the structural facts
// that maximal sequences provably satisfy.  Every fact is implemented as a
// named check with a concrete witness on failure, so that enumeration runs
// can assert all of them on every sequence found.
//
// All of this is the d = (1,...,1) theory; rank is written r.  Fixing an
// axis nu, layer L_c collects the sequence points with nu-coordinate c, and
// its load is |L_c|.  A maximal layer has 2^(r-1) points, the most an
// exceptional sequence allows in a single layer.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fes/core.hpp"

namespace fes {

struct LayerProfile {
  int axis = 0;
  Coord lo = 0;            // coordinate of loads[0]; loads front/back nonzero
  std::vector<int> loads;  // loads[k] = |L_(lo+k)|, empty inner layers as 0

  int load_at(Coord c) const;
  Coord hi() const { return lo + static_cast<Coord>(loads.size()) - 1; }
};

LayerProfile layer_loads(const ExcSeq& seq, int axis);

// A maximal run of consecutive nonempty layers, as inclusive coordinates.
struct Segment {
  Coord lo = 0, hi = 0;
};

std::vector<Segment> segments(const LayerProfile& prof);

// Projection dropping the given axis, restricted to the points whose
// axis-coordinate lies in `layers`; the order is inherited.  The layer set
// must be pairwise non-adjacent (no two coordinates at distance 1), which
// is what makes the projection injective on exceptional sequences.
ExcSeq project_layers(const ExcSeq& seq, int axis, const std::vector<Coord>& layers);

std::optional<std::pair<int, Coord>> find_maximal_layer(const ExcSeq& seq);
bool has_maximal_layer(const ExcSeq& seq);

// Distribution of the elements cl^1, ..., cl^(2^r-1) over the r layers
// directly above cl^0: the counts n_nu = |{i >= 1 : cl^i_nu = cl^0_nu + 1}|
// sorted descending, rendered like "(3,3,2)".  Sequences containing a
// maximal layer are bucketed as "maximal_layer" instead; for r = 3 every
// other sequence lands in one of (3,3,3), (3,3,2), (3,3,1), (3,2,2).
std::string distribution_tag(const ExcSeq& seq);

struct StructCheck {
  std::string name;
  bool pass = true;
  std::string witness;  // empty when passing
};

struct StructReport {
  bool all_pass = true;
  std::vector<StructCheck> checks;
  std::string distribution;
};

// Runs every applicable structural check on a maximal exceptional sequence
// (d = ones); throws std::invalid_argument on other inputs.
StructReport check_structural_invariants(const ExcSeq& seq);

// Fullness by structure alone, without running the closure: peel a maximal
// layer off, recurse on the layer and on the rest.  Requires a maximal
// layer at every level (always the case for r <= 3); throws
// std::logic_error when the recursion gets stuck.
bool thin_fullness(const ExcSeq& seq);

// Collapse every run of consecutive empty inner layers, on every axis, to
// a single empty layer.  Preserves exceptionality, maximality, fullness.
ExcSeq reduce_empty_layers(const ExcSeq& seq);

// Widen an empty layer: points with axis-coordinate below `at` move down
// by `count`.  Preserves exceptionality, maximality, fullness.
ExcSeq insert_empty_layers(const ExcSeq& seq, int axis, Coord at, Coord count);

// Shift the part below an empty layer upward by m >= 0, merging the two
// sides for large m.  Preserves exceptionality and maximality; fullness is
// bequeathed from the input to the result but not conversely.
ExcSeq merge_shift(const ExcSeq& seq, int axis, Coord at, Coord m);

// Edge length of the cube that contains every maximal exceptional sequence
// after reduce_empty_layers, up to translation: 3 * 2^(r-1) - 1.
Coord bounding_box_bound(int rank);

}  // namespace fes
