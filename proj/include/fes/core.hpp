// Core types and operations for exceptional sequences of lattice points.
//
// An ordered list cl^0, ..., cl^{m-1} of points in Z^r is d-exceptional
// (for a vector d of positive integers) if for every pair i < j there is
// an axis nu with (cl^j - cl^i)_nu in {1, ..., d_nu}.  Such a sequence has
// at most n(d) = prod_nu (d_nu + 1) elements; it is maximal when the bound
// is attained.  For d = (1,...,1) the bound is 2^r.
//
// Axes are 0-based throughout the code (the JSON layer uses 1-based axes).
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fes {

using Coord = std::int64_t;
using Point = std::vector<Coord>;

struct DimVec {
  std::vector<int> entries;  // one per axis, each >= 1

  int rank() const { return static_cast<int>(entries.size()); }
  static DimVec ones(int rank) { return DimVec{std::vector<int>(rank, 1)}; }
  bool is_ones() const;
  // n(d) = prod (d_nu + 1), the maximal length of a d-exceptional sequence.
  long long max_length() const;
};

struct ExcSeq {
  int rank = 0;
  std::vector<Point> points;  // the order is part of the data

  std::size_t size() const { return points.size(); }
};

// Throws std::invalid_argument unless every point has `rank` coordinates.
void validate(const ExcSeq& seq);
void validate(const ExcSeq& seq, const DimVec& d);

// True if q may follow p: some axis nu has (q - p)_nu in {1, ..., d_nu}.
bool admissible(const Point& p, const Point& q, const DimVec& d);

struct ExcVerdict {
  bool exceptional = false;
  bool maximal = false;
  // All pairs (i, j) with i < j admitting no witness axis; empty iff exceptional.
  std::vector<std::pair<int, int>> violations;
};

ExcVerdict is_exceptional(const ExcSeq& seq, const DimVec& d);

// Bounding box of the point set, as (per-axis min, per-axis max).
std::pair<Point, Point> bounding_box(const ExcSeq& seq);

// Number of lattice layers the sequence spans per axis: max - min + 1.
std::vector<Coord> widths(const ExcSeq& seq);

// Translation moving the bounding-box minimum to the origin.
ExcSeq translated_to_origin(const ExcSeq& seq);

// Labeling of a maximal (1,...,1)-exceptional sequence: the i-th label is
// cl^i reduced mod 2, packed as a bitmask (bit k = coordinate k mod 2).
// The map is a bijection onto {0,1}^r for every such sequence.
struct CubeLabeling {
  int rank = 0;
  std::vector<std::uint32_t> labels;  // one mask per sequence element
};

// Throws std::invalid_argument if seq is not maximal exceptional for d = ones.
CubeLabeling label(const ExcSeq& seq);

// XOR every label with the first one, so the first element is labeled 0.
CubeLabeling normalize_labeling(const CubeLabeling& lab);

// Canonical key of a normalized labeling under axis permutations (the bits
// of every label are permuted simultaneously; the lexicographically least
// relabeling wins).  Two labelings share a key iff they differ by an axis
// permutation composed with the normalizing reflections.
std::vector<std::uint32_t> labeling_orbit_key(const CubeLabeling& lab);

// Number of labeling classes under reflections and axis permutations:
// (2^r)! / (2^r * r!).  Supported for r <= 4 (overflows beyond).
unsigned long long labeling_class_count(int rank);

struct SymmetryOp {
  enum class Kind { translate, permute_axes, reverse_negate };
  Kind kind = Kind::translate;
  Point shift;            // translate: p -> p + shift
  std::vector<int> perm;  // permute_axes: result[k] = p[perm[k]]

  static SymmetryOp translation(Point shift);
  static SymmetryOp permutation(std::vector<int> perm);
  // Reverses the order and negates all coordinates; an involution that
  // preserves exceptionality, maximality, and fullness.
  static SymmetryOp reversal();
};

ExcSeq apply_symmetry(const ExcSeq& seq, const SymmetryOp& op);

// A finite set of sequence symmetries used for canonical forms: all
// combinations of the listed axis permutations with (optionally) the
// reverse-negate involution, composed with arbitrary translations.
struct SymmetryGroup {
  std::vector<std::vector<int>> perms;  // always contains the identity
  bool reversal = false;

  static SymmetryGroup translations(int rank);
  static SymmetryGroup translations_permutations(int rank);
  static SymmetryGroup translations_permutations_reversal(int rank);
  // Axis permutations preserving the given per-axis extents, e.g. for
  // extents (6,9,9) the identity and the swap of axes 1 and 2.
  static SymmetryGroup shape_preserving(const std::vector<Coord>& extents);
};

// Lexicographically least translated-to-origin image of seq under the group.
// Constant on orbits; idempotent.
ExcSeq canonical_form(const ExcSeq& seq, const SymmetryGroup& group);

// The 2^rank vertices of the unit cube ordered by coordinate sum, ties
// broken lexicographically; a maximal exceptional sequence for d = ones.
ExcSeq standard_sequence(int rank);

}  // namespace fes
