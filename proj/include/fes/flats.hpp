// Contamination closure over an exact representation of infinite point sets.
//
// The contamination step sends a set S in Z^r to
//   cont(S) = S  union  { p + Z*e_nu : p, p+e_nu, ..., p+d_nu*e_nu all in S }.
// Iterating either reaches all of Z^r, stabilizes short of that, or is cut
// off by a round cap.
//
// Infected sets are unions of axis-aligned affine flats: a base point plus
// a set of free axes.  Two adjacent parallel lines span a plane, two
// adjacent parallel planes span a hyperplane, and so on, which keeps the
// representation finite and exact at every round.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fes/core.hpp"

namespace fes {

inline constexpr int kDefaultRoundCap = 64;
inline constexpr int kMaxClosureRank = 16;

struct Flat {
  Point base;               // coordinates on free axes are stored as 0
  std::uint32_t free = 0;   // bit k set = axis k is free

  friend bool operator==(const Flat&, const Flat&) = default;
};

// True if p lies on f: agreement with the base on every non-free axis.
bool flat_member(const Point& p, const Flat& f);

// True if every point of f lies on g.
bool flat_subset(const Flat& f, const Flat& g);

// Intersection of two flats; empty when they pin some axis differently.
// The result (if any) has the common free axes and inherits pinned values.
std::optional<Flat> flat_intersect(const Flat& f, const Flat& g);

// Translate a flat by delta along one axis (no effect on a free axis).
Flat flat_shift(const Flat& f, int axis, Coord delta);

// Enlarge a flat by freeing one more axis.
Flat flat_span(const Flat& f, int axis);

// An antichain of flats under inclusion, representing their union.
struct FlatSet {
  int rank = 0;
  std::vector<Flat> flats;

  std::size_t size() const { return flats.size(); }
  bool contains_point(const Point& p) const;
  bool contains_full_space() const;

  friend bool operator==(const FlatSet&, const FlatSet&);  // as point sets
};

// Insert with absorption: drops f if some member contains it, otherwise
// removes members contained in f and appends.  Returns true if the
// represented point set grew.
bool insert_flat(FlatSet& u, const Flat& f);

FlatSet flats_from_points(int rank, const std::vector<Point>& points);

// One synchronous contamination round on the whole set.
FlatSet cont_step(const FlatSet& u, const DimVec& d);

enum class ClosureStatus { full, stable_not_full, round_cap_reached };

struct ClosureResult {
  ClosureStatus status = ClosureStatus::stable_not_full;
  // Rounds until full (status full) or until the last round that changed
  // the set (status stable_not_full); equals max_rounds when capped.
  int steps = 0;
  std::vector<FlatSet> history;  // cont^0, cont^1, ..., one entry per round
};

ClosureResult closure(int rank, const std::vector<Point>& seed, const DimVec& d,
                      int max_rounds = kDefaultRoundCap);

// Status and step count only, skipping the per-round snapshots.  This is
// the hot path of the grid searches.
struct ClosureSummary {
  ClosureStatus status;
  int steps;
};

ClosureSummary closure_summary(int rank, const std::vector<Point>& seed,
                               const DimVec& d, int max_rounds = kDefaultRoundCap);

struct RoundCapReached : std::runtime_error {
  explicit RoundCapReached(int cap)
      : std::runtime_error("contamination closure still changing after " +
                           std::to_string(cap) + " rounds") {}
};

// True if the sequence contaminates all of Z^r.  Uses the structural fast
// path for maximal (1,...,1)-exceptional sequences with a layer of size
// 2^(r-1), the closure otherwise.  Throws RoundCapReached instead of ever
// returning false on a capped run.
bool is_full(const ExcSeq& seq, const DimVec& d, int max_rounds = kDefaultRoundCap);

}  // namespace fes
