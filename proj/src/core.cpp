#include "fes/core.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

namespace fes {

bool DimVec::is_ones() const {
  return std::all_of(entries.begin(), entries.end(), [](int e) { return e == 1; });
}

long long DimVec::max_length() const {
  long long n = 1;
  for (int e : entries) {
    if (e < 1) throw std::invalid_argument("DimVec entries must be >= 1");
    n *= e + 1;
  }
  return n;
}

void validate(const ExcSeq& seq) {
  if (seq.rank < 1) throw std::invalid_argument("sequence rank must be >= 1");
  for (const Point& p : seq.points)
    if (static_cast<int>(p.size()) != seq.rank)
      throw std::invalid_argument("point arity does not match sequence rank");
}

void validate(const ExcSeq& seq, const DimVec& d) {
  validate(seq);
  if (d.rank() != seq.rank)
    throw std::invalid_argument("d arity does not match sequence rank");
  for (int e : d.entries)
    if (e < 1) throw std::invalid_argument("DimVec entries must be >= 1");
}

bool admissible(const Point& p, const Point& q, const DimVec& d) {
  for (std::size_t k = 0; k < p.size(); ++k) {
    Coord diff = q[k] - p[k];
    if (diff >= 1 && diff <= d.entries[k]) return true;
  }
  return false;
}

ExcVerdict is_exceptional(const ExcSeq& seq, const DimVec& d) {
  validate(seq, d);
  ExcVerdict v;
  for (std::size_t j = 0; j < seq.points.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (!admissible(seq.points[i], seq.points[j], d))
        v.violations.emplace_back(static_cast<int>(i), static_cast<int>(j));
  v.exceptional = v.violations.empty();
  v.maximal = v.exceptional &&
              static_cast<long long>(seq.points.size()) == d.max_length();
  return v;
}

std::pair<Point, Point> bounding_box(const ExcSeq& seq) {
  validate(seq);
  if (seq.points.empty()) throw std::invalid_argument("empty sequence has no bounding box");
  Point lo = seq.points.front(), hi = seq.points.front();
  for (const Point& p : seq.points)
    for (int k = 0; k < seq.rank; ++k) {
      lo[k] = std::min(lo[k], p[k]);
      hi[k] = std::max(hi[k], p[k]);
    }
  return {lo, hi};
}

std::vector<Coord> widths(const ExcSeq& seq) {
  auto [lo, hi] = bounding_box(seq);
  std::vector<Coord> w(seq.rank);
  for (int k = 0; k < seq.rank; ++k) w[k] = hi[k] - lo[k] + 1;
  return w;
}

ExcSeq translated_to_origin(const ExcSeq& seq) {
  auto [lo, hi] = bounding_box(seq);
  (void)hi;
  ExcSeq out{seq.rank, seq.points};
  for (Point& p : out.points)
    for (int k = 0; k < seq.rank; ++k) p[k] -= lo[k];
  return out;
}

CubeLabeling label(const ExcSeq& seq) {
  DimVec d = DimVec::ones(seq.rank);
  ExcVerdict v = is_exceptional(seq, d);
  if (!v.maximal)
    throw std::invalid_argument(
        "labeling requires a maximal exceptional sequence for d = (1,...,1)");
  CubeLabeling lab{seq.rank, {}};
  lab.labels.reserve(seq.points.size());
  for (const Point& p : seq.points) {
    std::uint32_t mask = 0;
    for (int k = 0; k < seq.rank; ++k)
      if (p[k] & 1) mask |= 1u << k;
    lab.labels.push_back(mask);
  }
  // Injectivity mod 2 holds for every exceptional sequence; with 2^r
  // elements the labeling is onto {0,1}^r.
  std::set<std::uint32_t> distinct(lab.labels.begin(), lab.labels.end());
  if (distinct.size() != lab.labels.size())
    throw std::logic_error("labeling of a maximal exceptional sequence collided");
  return lab;
}

CubeLabeling normalize_labeling(const CubeLabeling& lab) {
  if (lab.labels.empty()) return lab;
  CubeLabeling out = lab;
  std::uint32_t first = lab.labels.front();
  for (std::uint32_t& m : out.labels) m ^= first;
  return out;
}

namespace {

std::vector<std::vector<int>> all_permutations(int rank) {
  std::vector<int> idx(rank);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(idx);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

std::uint32_t permute_bits(std::uint32_t mask, const std::vector<int>& perm) {
  std::uint32_t out = 0;
  for (std::size_t k = 0; k < perm.size(); ++k)
    if (mask >> perm[k] & 1) out |= 1u << k;
  return out;
}

}  // namespace

std::vector<std::uint32_t> labeling_orbit_key(const CubeLabeling& lab) {
  CubeLabeling norm = normalize_labeling(lab);
  std::vector<std::uint32_t> best;
  for (const auto& perm : all_permutations(lab.rank)) {
    std::vector<std::uint32_t> img;
    img.reserve(norm.labels.size());
    for (std::uint32_t m : norm.labels) img.push_back(permute_bits(m, perm));
    if (best.empty() || img < best) best = std::move(img);
  }
  return best;
}

unsigned long long labeling_class_count(int rank) {
  if (rank < 1 || rank > 4)
    throw std::invalid_argument("labeling_class_count supports 1 <= r <= 4");
  unsigned long long n = 1ull << rank;
  unsigned long long fact = 1;
  for (unsigned long long k = 2; k <= n; ++k) fact *= k;
  unsigned long long rfact = 1;
  for (int k = 2; k <= rank; ++k) rfact *= k;
  return fact / n / rfact;
}

SymmetryOp SymmetryOp::translation(Point shift) {
  SymmetryOp op;
  op.kind = Kind::translate;
  op.shift = std::move(shift);
  return op;
}

SymmetryOp SymmetryOp::permutation(std::vector<int> perm) {
  SymmetryOp op;
  op.kind = Kind::permute_axes;
  op.perm = std::move(perm);
  return op;
}

SymmetryOp SymmetryOp::reversal() {
  SymmetryOp op;
  op.kind = Kind::reverse_negate;
  return op;
}

namespace {

void validate_perm(const std::vector<int>& perm, int rank) {
  if (static_cast<int>(perm.size()) != rank)
    throw std::invalid_argument("permutation arity does not match rank");
  std::vector<bool> seen(rank, false);
  for (int v : perm) {
    if (v < 0 || v >= rank || seen[v])
      throw std::invalid_argument("not a permutation of 0..rank-1");
    seen[v] = true;
  }
}

}  // namespace

ExcSeq apply_symmetry(const ExcSeq& seq, const SymmetryOp& op) {
  validate(seq);
  ExcSeq out{seq.rank, {}};
  out.points.reserve(seq.points.size());
  switch (op.kind) {
    case SymmetryOp::Kind::translate: {
      if (static_cast<int>(op.shift.size()) != seq.rank)
        throw std::invalid_argument("shift arity does not match rank");
      for (const Point& p : seq.points) {
        Point q = p;
        for (int k = 0; k < seq.rank; ++k) q[k] += op.shift[k];
        out.points.push_back(std::move(q));
      }
      break;
    }
    case SymmetryOp::Kind::permute_axes: {
      validate_perm(op.perm, seq.rank);
      for (const Point& p : seq.points) {
        Point q(seq.rank);
        for (int k = 0; k < seq.rank; ++k) q[k] = p[op.perm[k]];
        out.points.push_back(std::move(q));
      }
      break;
    }
    case SymmetryOp::Kind::reverse_negate: {
      for (auto it = seq.points.rbegin(); it != seq.points.rend(); ++it) {
        Point q = *it;
        for (Coord& c : q) c = -c;
        out.points.push_back(std::move(q));
      }
      break;
    }
  }
  return out;
}

SymmetryGroup SymmetryGroup::translations(int rank) {
  SymmetryGroup g;
  std::vector<int> id(rank);
  std::iota(id.begin(), id.end(), 0);
  g.perms.push_back(std::move(id));
  return g;
}

SymmetryGroup SymmetryGroup::translations_permutations(int rank) {
  SymmetryGroup g;
  g.perms = all_permutations(rank);
  return g;
}

SymmetryGroup SymmetryGroup::translations_permutations_reversal(int rank) {
  SymmetryGroup g = translations_permutations(rank);
  g.reversal = true;
  return g;
}

SymmetryGroup SymmetryGroup::shape_preserving(const std::vector<Coord>& extents) {
  SymmetryGroup g;
  for (auto& perm : all_permutations(static_cast<int>(extents.size()))) {
    bool ok = true;
    for (std::size_t k = 0; k < extents.size(); ++k)
      if (extents[perm[k]] != extents[k]) ok = false;
    if (ok) g.perms.push_back(perm);
  }
  return g;
}

ExcSeq canonical_form(const ExcSeq& seq, const SymmetryGroup& group) {
  validate(seq);
  if (seq.points.empty()) return seq;
  std::optional<ExcSeq> best;
  auto consider = [&](const ExcSeq& cand) {
    ExcSeq norm = translated_to_origin(cand);
    if (!best || norm.points < best->points) best = std::move(norm);
  };
  for (const auto& perm : group.perms) {
    ExcSeq img = apply_symmetry(seq, SymmetryOp::permutation(perm));
    consider(img);
    if (group.reversal) consider(apply_symmetry(img, SymmetryOp::reversal()));
  }
  return *best;
}

ExcSeq standard_sequence(int rank) {
  if (rank < 1) throw std::invalid_argument("rank must be >= 1");
  if (rank > 20) throw std::invalid_argument("rank too large");
  std::vector<Point> pts;
  for (std::uint32_t mask = 0; mask < (1u << rank); ++mask) {
    Point p(rank);
    for (int k = 0; k < rank; ++k) p[k] = mask >> k & 1;
    pts.push_back(std::move(p));
  }
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    Coord sa = std::accumulate(a.begin(), a.end(), Coord{0});
    Coord sb = std::accumulate(b.begin(), b.end(), Coord{0});
    if (sa != sb) return sa < sb;
    return a < b;
  });
  return ExcSeq{rank, std::move(pts)};
}

}  // namespace fes
