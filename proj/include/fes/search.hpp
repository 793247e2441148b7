// Exhaustive enumeration of maximal exceptional sequences over bounded
// grids, with orbit deduplication and fullness verification.
//
// The search pins the first element at the origin (covering each
// translation class exactly once), walks ordered sequences depth first
// over a per-cell admissibility bitset, and keeps only width-feasible
// branches.  A leaf is emitted, translation-normalized, when the emit
// filter accepts it; the default filter keeps exactly the canonical
// representative of each symmetry orbit, which needs no global visited
// set and is independent of sharding.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fes/core.hpp"
#include "fes/flats.hpp"

namespace fes {

struct GridSpec {
  std::vector<Coord> extents;  // admissible widths per axis, oriented
  DimVec d;                    // step bounds; ones for the main theory

  int rank() const { return static_cast<int>(extents.size()); }
  static GridSpec ones_grid(std::vector<Coord> extents);
};

struct SearchOptions {
  int shards = 1;                  // worker threads over first-point branches
  bool structural_pruning = true;  // sound layer-load cutoffs
  bool check_structure = false;    // run the full invariant suite per sequence
  int round_cap = kDefaultRoundCap;
  std::uint64_t progress_every = 0;  // stderr heartbeat, emitted sequences; 0 = off
  std::string records_path;          // JSONL stream prefix, empty = off
  bool resume = false;               // skip roots marked done in existing records
};

// Decides whether a translation-normalized full-length sequence is
// reported; used to keep one representative per orbit.
using EmitFilter = std::function<bool(const ExcSeq&)>;

// Receives emitted sequences; returning false cancels the search.
using SeqSink = std::function<bool(const ExcSeq&)>;

// Filter accepting exactly the sequences that are their own canonical form.
EmitFilter dedupe_canonical(const SymmetryGroup& group);

struct SearchReport {
  std::uint64_t nodes_visited = 0;
  std::uint64_t leaves_found = 0;      // full-length sequences before dedupe
  std::uint64_t sequences_found = 0;   // emitted after the filter
  bool all_full = true;                // vacuously true without verification
  int max_steps = 0;
  std::map<int, std::uint64_t> step_histogram;
  std::map<std::string, std::uint64_t> distribution_histogram;
  std::uint64_t labeling_classes_observed = 0;
  std::uint64_t structure_failures = 0;
  std::vector<ExcSeq> counterexamples;  // not-full sequences, first few
  std::vector<ExcSeq> unknowns;         // round-capped closures, first few
  double runtime_seconds = 0;
  int shards_used = 1;
  bool cancelled = false;
  bool verified = false;  // true when the closure ran on every sequence
};

// Enumerate only; no closures are run.
SearchReport enumerate_mes(const GridSpec& grid, const SearchOptions& opt,
                           const SeqSink& sink, const EmitFilter& filter = {});

// Enumerate and run the contamination closure on every emitted sequence,
// recording the step histogram, the layer distribution histogram, the
// number of labeling classes seen, and any counterexamples.  Sequences
// with a maximal layer are cross-checked against the structural fullness
// argument; disagreement throws std::logic_error.
SearchReport verify_fullness_report(const GridSpec& grid, const SearchOptions& opt,
                                    const EmitFilter& filter = {},
                                    const SeqSink& sink = {});

struct TheoremOutcome {
  std::string profile;
  std::vector<GridSpec> grids;
  std::vector<SearchReport> per_grid;
  SearchReport combined;
};

// Named verification profiles:
//   smoke_2d_5x5, smoke_3d_3cube, smoke_3d_4cube  -- small differential grids
//   grid_6_6_11, grid_6_9_9                       -- the two theorem grids alone
//   full_theorem                                  -- both grids, orbit-exact
// Single-grid profiles deduplicate by translations plus the axis
// permutations preserving the grid shape.  full_theorem deduplicates by
// translations plus all axis permutations across both grids together:
// the first run keeps a sequence iff it is the least orbit member fitting
// 6x6x11, the second iff no orbit member fits 6x6x11 and it is the least
// member fitting 6x9x9.
TheoremOutcome theorem_run(const std::string& profile, const SearchOptions& opt);

std::vector<std::string> theorem_profiles();

}  // namespace fes
