#include "fes/structure.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace fes {

int LayerProfile::load_at(Coord c) const {
  if (c < lo || c > hi()) return 0;
  return loads[static_cast<std::size_t>(c - lo)];
}

LayerProfile layer_loads(const ExcSeq& seq, int axis) {
  validate(seq);
  if (axis < 0 || axis >= seq.rank) throw std::invalid_argument("axis out of range");
  if (seq.points.empty()) throw std::invalid_argument("empty sequence has no layers");
  Coord lo = seq.points.front()[axis], hi = lo;
  for (const Point& p : seq.points) {
    lo = std::min(lo, p[axis]);
    hi = std::max(hi, p[axis]);
  }
  LayerProfile prof{axis, lo, std::vector<int>(static_cast<std::size_t>(hi - lo + 1), 0)};
  for (const Point& p : seq.points) ++prof.loads[static_cast<std::size_t>(p[axis] - lo)];
  return prof;
}

std::vector<Segment> segments(const LayerProfile& prof) {
  std::vector<Segment> segs;
  Coord c = prof.lo;
  while (c <= prof.hi()) {
    if (prof.load_at(c) == 0) {
      ++c;
      continue;
    }
    Coord start = c;
    while (c <= prof.hi() && prof.load_at(c) > 0) ++c;
    segs.push_back({start, c - 1});
  }
  return segs;
}

ExcSeq project_layers(const ExcSeq& seq, int axis, const std::vector<Coord>& layers) {
  validate(seq);
  if (seq.rank < 2) throw std::invalid_argument("projection needs rank >= 2");
  if (axis < 0 || axis >= seq.rank) throw std::invalid_argument("axis out of range");
  std::vector<Coord> sorted = layers;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 1; k < sorted.size(); ++k)
    if (sorted[k] - sorted[k - 1] == 1)
      throw std::invalid_argument("layer set contains adjacent coordinates");
  std::set<Coord> chosen(sorted.begin(), sorted.end());
  ExcSeq out{seq.rank - 1, {}};
  for (const Point& p : seq.points) {
    if (!chosen.count(p[axis])) continue;
    Point q;
    q.reserve(seq.rank - 1);
    for (int k = 0; k < seq.rank; ++k)
      if (k != axis) q.push_back(p[k]);
    out.points.push_back(std::move(q));
  }
  return out;
}

std::optional<std::pair<int, Coord>> find_maximal_layer(const ExcSeq& seq) {
  validate(seq);
  long long half = 1ll << (seq.rank - 1);
  for (int axis = 0; axis < seq.rank; ++axis) {
    LayerProfile prof = layer_loads(seq, axis);
    for (Coord c = prof.lo; c <= prof.hi(); ++c)
      if (prof.load_at(c) == half) return std::make_pair(axis, c);
  }
  return std::nullopt;
}

bool has_maximal_layer(const ExcSeq& seq) { return find_maximal_layer(seq).has_value(); }

namespace {

const std::set<std::string>& admissible_r3_tags() {
  static const std::set<std::string> known{"(3,3,3)", "(3,3,2)", "(3,3,1)", "(3,2,2)"};
  return known;
}

// Sorted counts, per axis, of elements one step above the first element.
std::string first_layer_counts(const ExcSeq& seq) {
  const Point& first = seq.points.front();
  std::vector<int> counts(seq.rank, 0);
  for (std::size_t i = 1; i < seq.points.size(); ++i)
    for (int k = 0; k < seq.rank; ++k)
      if (seq.points[i][k] == first[k] + 1) ++counts[k];
  std::sort(counts.rbegin(), counts.rend());
  std::ostringstream os;
  os << '(';
  for (int k = 0; k < seq.rank; ++k) os << (k ? "," : "") << counts[k];
  os << ')';
  return os.str();
}

}  // namespace

std::string distribution_tag(const ExcSeq& seq) {
  validate(seq);
  if (has_maximal_layer(seq)) return "maximal_layer";
  std::string tag = first_layer_counts(seq);
  // At rank 3 the histogram buckets are fixed; a tuple outside the
  // admissible four collapses to "other", which must never be hit.
  if (seq.rank == 3 && !admissible_r3_tags().count(tag)) return "other";
  return tag;
}

namespace {

// Witness strings use 1-based axes, like the JSON layer.
std::string axis_name(int axis) { return "axis " + std::to_string(axis + 1); }

bool image_exceptional_and_injective(const ExcSeq& img, std::string& why) {
  std::set<Point> distinct(img.points.begin(), img.points.end());
  if (distinct.size() != img.points.size()) {
    why = "projection not injective";
    return false;
  }
  if (img.points.empty()) return true;
  ExcVerdict v = is_exceptional(img, DimVec::ones(img.rank));
  if (!v.exceptional) {
    why = "projection not exceptional at pair (" +
          std::to_string(v.violations.front().first) + "," +
          std::to_string(v.violations.front().second) + ")";
    return false;
  }
  return true;
}

}  // namespace

StructReport check_structural_invariants(const ExcSeq& seq) {
  DimVec d = DimVec::ones(seq.rank);
  ExcVerdict verdict = is_exceptional(seq, d);
  if (!verdict.maximal) {
    std::string why = "structural checks apply to maximal exceptional sequences";
    if (!verdict.violations.empty()) {
      auto [a, b] = verdict.violations.front();
      why += "; no witness axis for the pair (" + std::to_string(a) + ", " +
             std::to_string(b) + ")";
    } else if (verdict.exceptional) {
      why += "; length " + std::to_string(seq.size()) + " of " +
             std::to_string(d.max_length());
    }
    throw std::invalid_argument(why);
  }
  int r = seq.rank;
  long long half = 1ll << (r - 1);

  StructReport rep;
  auto add = [&rep](const std::string& name, bool pass, const std::string& witness) {
    rep.checks.push_back({name, pass, pass ? std::string{} : witness});
    rep.all_pass = rep.all_pass && pass;
  };

  std::vector<LayerProfile> profs;
  for (int axis = 0; axis < r; ++axis) profs.push_back(layer_loads(seq, axis));

  // Single layers and non-adjacent layer pairs project injectively to
  // exceptional sequences one rank down.
  if (r >= 2) {
    bool pass = true;
    std::string witness;
    for (int axis = 0; axis < r && pass; ++axis) {
      const LayerProfile& prof = profs[axis];
      std::vector<Coord> occupied;
      for (Coord c = prof.lo; c <= prof.hi(); ++c)
        if (prof.load_at(c) > 0) occupied.push_back(c);
      for (std::size_t a = 0; a < occupied.size() && pass; ++a)
        for (std::size_t b = a; b < occupied.size() && pass; ++b) {
          if (a != b && occupied[b] - occupied[a] == 1) continue;
          std::vector<Coord> layers{occupied[a]};
          if (b != a) layers.push_back(occupied[b]);
          std::string why;
          if (!image_exceptional_and_injective(project_layers(seq, axis, layers), why)) {
            pass = false;
            witness = axis_name(axis) + ": layers (" + std::to_string(occupied[a]) +
                      (b == a ? "" : "," + std::to_string(occupied[b])) + "): " + why;
          }
        }
    }
    add("layer_projections_exceptional", pass, witness);
  }

  // Even layers and odd layers each carry exactly 2^(r-1) points and
  // project to maximal exceptional sequences one rank down.
  {
    bool pass = true;
    std::string witness;
    for (int axis = 0; axis < r && pass; ++axis) {
      for (int parity = 0; parity < 2 && pass; ++parity) {
        const LayerProfile& prof = profs[axis];
        std::vector<Coord> layers;
        long long total = 0;
        for (Coord c = prof.lo; c <= prof.hi(); ++c)
          if (((c % 2) + 2) % 2 == parity) {
            layers.push_back(c);
            total += prof.load_at(c);
          }
        if (total != half) {
          pass = false;
          witness = axis_name(axis) + ": parity " + std::to_string(parity) +
                    " carries " + std::to_string(total) + " points, expected " +
                    std::to_string(half);
          break;
        }
        if (r >= 2) {
          ExcSeq img = project_layers(seq, axis, layers);
          std::string why;
          if (!image_exceptional_and_injective(img, why)) {
            pass = false;
            witness = axis_name(axis) + ": parity " + std::to_string(parity) + ": " + why;
          }
        }
      }
    }
    add("even_odd_halves_maximal", pass, witness);
  }

  // Two layers that together exceed 2^(r-1) points must be adjacent.
  {
    bool pass = true;
    std::string witness;
    for (int axis = 0; axis < r && pass; ++axis) {
      const LayerProfile& prof = profs[axis];
      for (Coord a = prof.lo; a <= prof.hi() && pass; ++a)
        for (Coord b = a + 2; b <= prof.hi(); ++b)
          if (prof.load_at(a) + prof.load_at(b) > half) {
            pass = false;
            witness = axis_name(axis) + ": layers " + std::to_string(a) + " and " +
                      std::to_string(b) + " carry " +
                      std::to_string(prof.load_at(a) + prof.load_at(b)) + " > " +
                      std::to_string(half) + " points";
            break;
          }
    }
    add("heavy_layers_adjacent", pass, witness);
  }

  // Pigeonhole: some axis has a layer with at least (2^r - 1) / r points.
  {
    long long need = ((1ll << r) - 1 + r - 1) / r;
    long long best = 0;
    for (const LayerProfile& prof : profs)
      for (int load : prof.loads) best = std::max<long long>(best, load);
    add("heavy_layer_exists", best >= need,
        "largest layer has " + std::to_string(best) + " points, expected >= " +
            std::to_string(need));
  }

  // Every layer is bounded by the sum of its two neighbors.
  {
    bool pass = true;
    std::string witness;
    for (int axis = 0; axis < r && pass; ++axis) {
      const LayerProfile& prof = profs[axis];
      for (Coord b = prof.lo; b <= prof.hi(); ++b)
        if (prof.load_at(b) > prof.load_at(b - 1) + prof.load_at(b + 1)) {
          pass = false;
          witness = axis_name(axis) + ": layer " + std::to_string(b) + " has " +
                    std::to_string(prof.load_at(b)) + " > " +
                    std::to_string(prof.load_at(b - 1)) + " + " +
                    std::to_string(prof.load_at(b + 1)) + " points";
          break;
        }
    }
    add("layer_bounded_by_neighbors", pass, witness);
  }

  // Segment boundary layers do not outweigh their inner neighbors, and
  // segments span at least two layers.
  {
    bool pass = true;
    std::string witness;
    for (int axis = 0; axis < r && pass; ++axis) {
      const LayerProfile& prof = profs[axis];
      for (const Segment& s : segments(prof)) {
        if (s.hi == s.lo) {
          pass = false;
          witness = axis_name(axis) + ": segment at " + std::to_string(s.lo) +
                    " has width 1";
          break;
        }
        if (prof.load_at(s.lo) > prof.load_at(s.lo + 1) ||
            prof.load_at(s.hi) > prof.load_at(s.hi - 1)) {
          pass = false;
          witness = axis_name(axis) + ": segment [" + std::to_string(s.lo) + "," +
                    std::to_string(s.hi) + "] has a boundary layer heavier than its neighbor";
          break;
        }
      }
    }
    add("segment_boundaries_light", pass, witness);
  }

  // The alternating load sum vanishes on every segment.
  {
    bool pass = true;
    std::string witness;
    for (int axis = 0; axis < r && pass; ++axis) {
      const LayerProfile& prof = profs[axis];
      for (const Segment& s : segments(prof)) {
        long long sum = 0;
        for (Coord c = s.lo; c <= s.hi; ++c)
          sum += (((c % 2) + 2) % 2 ? -1 : 1) * prof.load_at(c);
        if (sum != 0) {
          pass = false;
          witness = axis_name(axis) + ": segment [" + std::to_string(s.lo) + "," +
                    std::to_string(s.hi) + "] has alternating sum " + std::to_string(sum);
          break;
        }
      }
    }
    add("segments_balanced", pass, witness);
  }

  // After collapsing empty runs the sequence fits the bounding cube.
  {
    ExcSeq reduced = reduce_empty_layers(seq);
    Coord bound = bounding_box_bound(r);
    bool pass = true;
    std::string witness;
    std::vector<Coord> w = widths(reduced);
    for (int axis = 0; axis < r; ++axis)
      if (w[axis] > bound) {
        pass = false;
        witness = axis_name(axis) + ": reduced width " + std::to_string(w[axis]) +
                  " exceeds " + std::to_string(bound);
        break;
      }
    add("fits_bounding_cube", pass, witness);
  }

  // The mod-2 labeling is a bijection onto the cube vertices.
  {
    bool pass = true;
    std::string witness;
    try {
      label(seq);
    } catch (const std::exception& e) {
      pass = false;
      witness = e.what();
    }
    add("labeling_bijective", pass, witness);
  }

  rep.distribution = distribution_tag(seq);
  if (r == 3) {
    add("distribution_known", rep.distribution != "other",
        "first-layer counts " + first_layer_counts(seq) + " outside the admissible set");
  }

  return rep;
}

namespace {

bool thin_rec(const ExcSeq& seq) {
  if (seq.rank == 1) return true;  // two adjacent points fill the line

  auto found = find_maximal_layer(seq);
  if (!found)
    throw std::logic_error("thin_fullness: no maximal layer at rank " +
                           std::to_string(seq.rank));
  auto [axis, c] = *found;
  // Everything outside the maximal layer sits in the two neighbor layers;
  // a point farther away would make a non-adjacent pair too heavy.
  for (const Point& p : seq.points)
    if (p[axis] != c && p[axis] != c - 1 && p[axis] != c + 1)
      throw std::logic_error("thin_fullness: point outside the maximal layer band");

  ExcSeq mid = project_layers(seq, axis, {c});
  ExcSeq rest = project_layers(seq, axis, {c - 1, c + 1});
  // Both projections are maximal exceptional one rank down (the even/odd
  // halves theorem); recursing on them grounds out at rank 1.
  for (const ExcSeq* part : {&mid, &rest})
    if (!is_exceptional(*part, DimVec::ones(part->rank)).maximal)
      throw std::logic_error("thin_fullness: projection is not maximal exceptional");
  return thin_rec(mid) && thin_rec(rest);
}

}  // namespace

bool thin_fullness(const ExcSeq& seq) {
  ExcVerdict v = is_exceptional(seq, DimVec::ones(seq.rank));
  if (!v.maximal)
    throw std::invalid_argument("thin_fullness applies to maximal exceptional sequences");
  if (seq.rank > 1 && !has_maximal_layer(seq))
    throw std::invalid_argument("thin_fullness needs a maximal layer; use the closure");
  return thin_rec(seq);
}

ExcSeq reduce_empty_layers(const ExcSeq& seq) {
  validate(seq);
  ExcSeq out = seq;
  for (int axis = 0; axis < seq.rank; ++axis) {
    std::vector<Coord> occ;
    for (const Point& p : out.points) occ.push_back(p[axis]);
    std::sort(occ.begin(), occ.end());
    occ.erase(std::unique(occ.begin(), occ.end()), occ.end());
    std::map<Coord, Coord> remap;
    Coord next = occ.front();
    for (std::size_t k = 0; k < occ.size(); ++k) {
      if (k > 0) next += std::min<Coord>(occ[k] - occ[k - 1], 2);
      remap[occ[k]] = next;
    }
    for (Point& p : out.points) p[axis] = remap[p[axis]];
  }
  return out;
}

namespace {

ExcSeq shift_below(const ExcSeq& seq, int axis, Coord at, Coord delta) {
  validate(seq);
  if (axis < 0 || axis >= seq.rank) throw std::invalid_argument("axis out of range");
  for (const Point& p : seq.points)
    if (p[axis] == at)
      throw std::invalid_argument("layer at " + std::to_string(at) + " is not empty");
  ExcSeq out = seq;
  for (Point& p : out.points)
    if (p[axis] < at) p[axis] += delta;
  return out;
}

}  // namespace

ExcSeq insert_empty_layers(const ExcSeq& seq, int axis, Coord at, Coord count) {
  if (count < 1) throw std::invalid_argument("count must be >= 1");
  return shift_below(seq, axis, at, -count);
}

ExcSeq merge_shift(const ExcSeq& seq, int axis, Coord at, Coord m) {
  if (m < 0) throw std::invalid_argument("merge shift must be >= 0");
  ExcSeq out = shift_below(seq, axis, at, m);
  ExcVerdict before = is_exceptional(seq, DimVec::ones(seq.rank));
  if (before.exceptional) {
    // Merging never collides points: a cross-gap pair equal outside the
    // merge axis would need its witness on that axis with difference 1,
    // impossible across an empty layer.
    ExcVerdict after = is_exceptional(out, DimVec::ones(seq.rank));
    if (!after.exceptional)
      throw std::logic_error("merge shift broke exceptionality");
  }
  return out;
}

Coord bounding_box_bound(int rank) {
  if (rank < 1 || rank > 32) throw std::invalid_argument("rank out of range");
  return 3 * (Coord{1} << (rank - 1)) - 1;
}

}  // namespace fes
