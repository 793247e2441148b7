#include "fes/catalog.hpp"

namespace fes {

ExcSeq stretch_sequence(long long n) {
  if (n < 1) throw std::invalid_argument("stretch parameter must be >= 1");
  Coord m = static_cast<Coord>(n);
  return ExcSeq{3,
                {{0, 0, 0},
                 {1, m, m},
                 {1, m, m + 1},
                 {1, m + 1, 0},
                 {2, 1, 0},
                 {2, m, 1},
                 {m, m + 1, 1},
                 {m + 1, m + 1, 1}}};
}

namespace {

std::vector<CatalogEntry> fixed_entries() {
  return {
      {"four-steps",
       "8 points in Z^3 whose contamination closure needs 4 rounds",
       true,
       {3, {{0, 0, 0}, {0, 0, 1}, {0, 1, 2}, {4, 1, 3}, {5, 1, 3}, {1, 4, 4}, {1, 5, 4}, {1, 2, 5}}}},
      {"five-steps",
       "8 points spanning a 5x5x5 box, closure needs 5 rounds",
       true,
       {3, {{1, 0, 0}, {0, 1, 1}, {1, 3, 1}, {1, 4, 1}, {3, 1, 2}, {4, 1, 2}, {2, 2, 3}, {2, 2, 4}}}},
      {"six-steps",
       "closure needs 6 rounds; the order below is the only exceptional one",
       true,
       {3, {{0, 0, 0}, {0, 0, 1}, {4, 1, 3}, {0, 1, 4}, {1, 4, 4}, {1, 5, 4}, {5, 1, 5}, {1, 2, 5}}}},
      {"seven-steps",
       "closure needs 7 rounds; the order below is the only exceptional one",
       true,
       {3, {{0, 0, 0}, {0, 1, 3}, {1, 4, 3}, {1, 0, 4}, {4, 1, 4}, {5, 1, 4}, {1, 5, 5}, {2, 2, 1}}}},
      {"labeled-cube",
       "compact sequence in a 4x4x4 box, the worked labeling example",
       true,
       {3, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}, {1, 1, 1}, {2, 2, 2}, {3, 2, 2}, {2, 3, 2}, {2, 2, 3}}}},
      {"plane-type1",
       "plane sequence of the first kind: two adjacent rows of two",
       true,
       {2, {{-1, -1}, {0, -1}, {6, 0}, {7, 0}}}},
      {"plane-type2",
       "plane sequence of the second kind: singletons around a middle pair",
       true,
       {2, {{-1, -1}, {6, 0}, {7, 0}, {0, 1}}}},
      {"plane-nonlex",
       "plane sequence whose unique exceptional order is not lexicographic",
       true,
       {2, {{0, 0}, {7, 1}, {8, 1}, {1, 2}}}},
      {"bilayer",
       "plane-nonlex stacked with its transpose; no coordinate-priority "
       "lexicographic order of the 8 points is exceptional",
       true,
       {3,
        {{0, 0, 0}, {7, 1, 0}, {8, 1, 0}, {1, 2, 0}, {0, 0, 1}, {1, 7, 1}, {1, 8, 1}, {2, 1, 1}}}},
      {"scattered",
       "4 points in Z^2, pairwise non-adjacent: no exceptional order exists "
       "and the contamination closure infects nothing",
       false,
       {2, {{0, 2}, {1, 0}, {2, 3}, {3, 1}}}},
  };
}

}  // namespace

std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (const auto& e : fixed_entries()) names.push_back(e.name);
  names.push_back("stretch");
  names.push_back("standard");
  return names;
}

CatalogEntry catalog_get(const std::string& name, long long n) {
  for (auto& e : fixed_entries())
    if (e.name == name) return e;
  if (name == "stretch") {
    long long param = n > 0 ? n : 1;
    CatalogEntry e;
    e.name = "stretch";
    e.summary = "family stretching n+2 layers in every direction";
    e.seq = stretch_sequence(param);
    return e;
  }
  if (name == "standard") {
    long long rank = n > 0 ? n : 3;
    if (rank > 10) throw std::invalid_argument("standard rank capped at 10");
    CatalogEntry e;
    e.name = "standard";
    e.summary = "vertices of the unit cube ordered by coordinate sum";
    e.seq = standard_sequence(static_cast<int>(rank));
    return e;
  }
  throw std::invalid_argument("unknown example name: " + name);
}

}  // namespace fes
