#include "fes/flats.hpp"

#include <algorithm>
#include <array>

#include "fes/structure.hpp"

namespace fes {

bool flat_member(const Point& p, const Flat& f) {
  for (std::size_t k = 0; k < f.base.size(); ++k)
    if (!(f.free >> k & 1) && p[k] != f.base[k]) return false;
  return true;
}

bool flat_subset(const Flat& f, const Flat& g) {
  if (f.free & ~g.free) return false;
  for (std::size_t k = 0; k < f.base.size(); ++k)
    if (!(g.free >> k & 1) && f.base[k] != g.base[k]) return false;
  return true;
}

std::optional<Flat> flat_intersect(const Flat& f, const Flat& g) {
  Flat out;
  out.base.resize(f.base.size());
  out.free = f.free & g.free;
  for (std::size_t k = 0; k < f.base.size(); ++k) {
    bool ff = f.free >> k & 1, fg = g.free >> k & 1;
    if (!ff && !fg && f.base[k] != g.base[k]) return std::nullopt;
    out.base[k] = !ff ? f.base[k] : !fg ? g.base[k] : 0;
  }
  return out;
}

Flat flat_shift(const Flat& f, int axis, Coord delta) {
  Flat out = f;
  if (!(out.free >> axis & 1)) out.base[axis] += delta;
  return out;
}

Flat flat_span(const Flat& f, int axis) {
  Flat out = f;
  out.free |= 1u << axis;
  out.base[axis] = 0;
  return out;
}

bool FlatSet::contains_point(const Point& p) const {
  for (const Flat& f : flats)
    if (flat_member(p, f)) return true;
  return false;
}

bool FlatSet::contains_full_space() const {
  std::uint32_t all = rank >= 32 ? ~0u : (1u << rank) - 1;
  for (const Flat& f : flats)
    if (f.free == all) return true;
  return false;
}

namespace {

bool flat_less(const Flat& a, const Flat& b) {
  if (a.free != b.free) return a.free < b.free;
  return a.base < b.base;
}

std::vector<Flat> sorted_flats(const FlatSet& u) {
  std::vector<Flat> v = u.flats;
  std::sort(v.begin(), v.end(), flat_less);
  return v;
}

}  // namespace

bool operator==(const FlatSet& a, const FlatSet& b) {
  // Maximal flats of a union are unique, so the antichain is canonical.
  return a.rank == b.rank && sorted_flats(a) == sorted_flats(b);
}

bool insert_flat(FlatSet& u, const Flat& f) {
  for (const Flat& g : u.flats)
    if (flat_subset(f, g)) return false;
  std::erase_if(u.flats, [&](const Flat& g) { return flat_subset(g, f); });
  u.flats.push_back(f);
  return true;
}

FlatSet flats_from_points(int rank, const std::vector<Point>& points) {
  FlatSet u{rank, {}};
  for (const Point& p : points) {
    if (static_cast<int>(p.size()) != rank)
      throw std::invalid_argument("point arity does not match rank");
    insert_flat(u, Flat{p, 0});
  }
  return u;
}

// ---- closure engine on fixed-arity flats ----

namespace {

struct SmallFlat {
  std::array<Coord, kMaxClosureRank> base;
  std::uint32_t free = 0;
  int born = 0;
};

bool small_subset(const SmallFlat& a, const SmallFlat& b, int rank) {
  if (a.free & ~b.free) return false;
  for (int k = 0; k < rank; ++k)
    if (!(b.free >> k & 1) && a.base[k] != b.base[k]) return false;
  return true;
}

bool small_intersect(const SmallFlat& a, const SmallFlat& b, int rank, SmallFlat& out) {
  out.free = a.free & b.free;
  for (int k = 0; k < rank; ++k) {
    bool fa = a.free >> k & 1, fb = b.free >> k & 1;
    if (!fa && !fb && a.base[k] != b.base[k]) return false;
    out.base[k] = !fa ? a.base[k] : !fb ? b.base[k] : 0;
  }
  return true;
}

struct Engine {
  int rank;
  DimVec d;
  std::uint32_t all_mask;
  std::vector<SmallFlat> flats;
  std::vector<SmallFlat> pending;

  Engine(int rank_, const DimVec& d_) : rank(rank_), d(d_) {
    if (rank < 1 || rank > kMaxClosureRank)
      throw std::invalid_argument("closure supports 1 <= rank <= " +
                                  std::to_string(kMaxClosureRank));
    if (d.rank() != rank) throw std::invalid_argument("d arity mismatch");
    all_mask = (rank == 32) ? ~0u : (1u << rank) - 1;
  }

  bool insert(SmallFlat f, int round) {
    f.born = round;
    for (const SmallFlat& g : flats)
      if (small_subset(f, g, rank)) return false;
    std::erase_if(flats, [&](const SmallFlat& g) { return small_subset(g, f, rank); });
    flats.push_back(f);
    return true;
  }

  void seed(const std::vector<Point>& points) {
    for (const Point& p : points) {
      if (static_cast<int>(p.size()) != rank)
        throw std::invalid_argument("point arity does not match rank");
      SmallFlat f;
      f.free = 0;
      for (int k = 0; k < rank; ++k) f.base[k] = p[k];
      insert(f, 0);
    }
  }

  // A tuple F_0, ..., F_{d_nu} witnesses the seeds
  //   G = intersection_k (F_k shifted by -k along nu),
  // every point of which starts an infected line in direction nu.  Tuples
  // whose members all predate the last round were already processed.
  void spans_for_axis(int axis, int last_round) {
    int arity = d.entries[axis] + 1;
    SmallFlat acc;
    acc.free = all_mask;
    acc.base.fill(0);
    emit_tuples(axis, 0, arity, acc, false, last_round);
  }

  void emit_tuples(int axis, int depth, int arity, const SmallFlat& acc,
                   bool any_new, int last_round) {
    if (depth == arity) {
      pending.push_back(flat_span_small(acc, axis));
      return;
    }
    bool last_level = depth + 1 == arity;
    for (const SmallFlat& f : flats) {
      bool is_new = f.born == last_round;
      if (last_level && !any_new && !is_new) continue;
      SmallFlat shifted = f;
      if (!(shifted.free >> axis & 1)) shifted.base[axis] -= depth;
      SmallFlat next;
      if (!small_intersect(acc, shifted, rank, next)) continue;
      emit_tuples(axis, depth + 1, arity, next, any_new || is_new, last_round);
    }
  }

  static SmallFlat flat_span_small(SmallFlat f, int axis) {
    f.free |= 1u << axis;
    f.base[axis] = 0;
    return f;
  }

  // Runs one synchronous round; returns true if the set grew.
  bool round(int t) {
    pending.clear();
    for (int axis = 0; axis < rank; ++axis) spans_for_axis(axis, t - 1);
    std::sort(pending.begin(), pending.end(), [&](const SmallFlat& a, const SmallFlat& b) {
      if (a.free != b.free) return a.free < b.free;
      return std::lexicographical_compare(a.base.begin(), a.base.begin() + rank,
                                          b.base.begin(), b.base.begin() + rank);
    });
    bool changed = false;
    const SmallFlat* prev = nullptr;
    for (const SmallFlat& f : pending) {
      if (prev && prev->free == f.free &&
          std::equal(f.base.begin(), f.base.begin() + rank, prev->base.begin()))
        continue;
      prev = &f;
      changed |= insert(f, t);
    }
    return changed;
  }

  bool full() const {
    for (const SmallFlat& f : flats)
      if (f.free == all_mask) return true;
    return false;
  }

  FlatSet snapshot() const {
    FlatSet u{rank, {}};
    u.flats.reserve(flats.size());
    for (const SmallFlat& f : flats) {
      Flat g;
      g.free = f.free;
      g.base.assign(f.base.begin(), f.base.begin() + rank);
      for (int k = 0; k < rank; ++k)
        if (g.free >> k & 1) g.base[k] = 0;
      u.flats.push_back(std::move(g));
    }
    std::sort(u.flats.begin(), u.flats.end(), flat_less);
    return u;
  }
};

}  // namespace

FlatSet cont_step(const FlatSet& u, const DimVec& d) {
  Engine eng(u.rank, d);
  for (const Flat& f : u.flats) {
    SmallFlat s;
    s.free = f.free;
    s.base.fill(0);
    for (int k = 0; k < u.rank; ++k)
      if (!(f.free >> k & 1)) s.base[k] = f.base[k];
    eng.insert(s, 0);
  }
  eng.round(1);
  return eng.snapshot();
}

ClosureResult closure(int rank, const std::vector<Point>& seed, const DimVec& d,
                      int max_rounds) {
  if (max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
  Engine eng(rank, d);
  eng.seed(seed);
  ClosureResult res;
  res.history.push_back(eng.snapshot());
  if (eng.full()) {  // only possible for degenerate flat seeds, not points
    res.status = ClosureStatus::full;
    res.steps = 0;
    return res;
  }
  for (int t = 1; t <= max_rounds; ++t) {
    bool changed = eng.round(t);
    res.history.push_back(eng.snapshot());
    if (eng.full()) {
      res.status = ClosureStatus::full;
      res.steps = t;
      return res;
    }
    if (!changed) {
      res.status = ClosureStatus::stable_not_full;
      res.steps = t - 1;
      return res;
    }
  }
  res.status = ClosureStatus::round_cap_reached;
  res.steps = max_rounds;
  return res;
}

ClosureSummary closure_summary(int rank, const std::vector<Point>& seed,
                               const DimVec& d, int max_rounds) {
  if (max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
  Engine eng(rank, d);
  eng.seed(seed);
  for (int t = 1; t <= max_rounds; ++t) {
    bool changed = eng.round(t);
    if (eng.full()) return {ClosureStatus::full, t};
    if (!changed) return {ClosureStatus::stable_not_full, t - 1};
  }
  return {ClosureStatus::round_cap_reached, max_rounds};
}

bool is_full(const ExcSeq& seq, const DimVec& d, int max_rounds) {
  validate(seq, d);
  if (d.is_ones() &&
      static_cast<long long>(seq.points.size()) == d.max_length()) {
    ExcVerdict v = is_exceptional(seq, d);
    if (v.maximal && has_maximal_layer(seq)) return thin_fullness(seq);
  }
  ClosureSummary s = closure_summary(seq.rank, seq.points, d, max_rounds);
  if (s.status == ClosureStatus::round_cap_reached) throw RoundCapReached(max_rounds);
  return s.status == ClosureStatus::full;
}

}  // namespace fes
