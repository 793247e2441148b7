// Tests for the grid search: completeness against brute-force oracles,
// frozen census counts, prune and shard invariance, sink cancellation,
// the records stream with resume, and the named verification profiles.
#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "fes/core.hpp"
#include "fes/search.hpp"
#include "fes/structure.hpp"
#include "helpers.hpp"

using namespace fes;
using fes::test::make_seq;

namespace {

EmitFilter accept_all() {
  return [](const ExcSeq&) { return true; };
}

// Collects every emitted point list into a set.
SeqSink collector(std::set<std::vector<Point>>& out) {
  return [&out](const ExcSeq& seq) {
    out.insert(seq.points);
    return true;
  };
}

std::vector<Point> cube_corners() {
  std::vector<Point> pts;
  for (Coord x = 0; x < 2; ++x)
    for (Coord y = 0; y < 2; ++y)
      for (Coord z = 0; z < 2; ++z) pts.push_back({x, y, z});
  return pts;
}

}  // namespace

TEST_CASE("grid validation rejects bad shapes") {
  SearchOptions opt;
  CHECK_THROWS_AS(enumerate_mes(GridSpec::ones_grid({}), opt, {}), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_mes(GridSpec::ones_grid({3, 0}), opt, {}), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_mes(GridSpec::ones_grid({3, 1001}), opt, {}),
                  std::invalid_argument);
  // Rank 7 with unit steps asks for 128-element sequences.
  CHECK_THROWS_AS(enumerate_mes(GridSpec::ones_grid({2, 2, 2, 2, 2, 2, 2}), opt, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(enumerate_mes(GridSpec::ones_grid({201, 200}), opt, {}),
                  std::invalid_argument);

  GridSpec mismatched;
  mismatched.extents = {3, 3};
  mismatched.d = DimVec::ones(3);
  CHECK_THROWS_AS(enumerate_mes(mismatched, opt, {}), std::invalid_argument);
}

TEST_CASE("the 2x2x2 census matches the factorial oracle") {
  // Eight points in a 2x2x2 box must be the full cube, so the maximal
  // sequences are exactly the exceptional orderings of its corners.
  std::vector<ExcSeq> oracle = test::exceptional_orderings(cube_corners(), DimVec::ones(3));
  REQUIRE(oracle.size() == 48);
  std::set<std::vector<Point>> expected;
  for (const ExcSeq& s : oracle) {
    CHECK(is_exceptional(s, DimVec::ones(3)).maximal);
    expected.insert(s.points);
  }
  REQUIRE(expected.size() == 48);

  SearchOptions opt;
  std::set<std::vector<Point>> seen;
  SearchReport rep = enumerate_mes(GridSpec::ones_grid({2, 2, 2}), opt, collector(seen),
                                   accept_all());
  CHECK(rep.leaves_found == 48);
  CHECK(rep.sequences_found == 48);
  CHECK(seen == expected);
  CHECK_FALSE(rep.verified);
  CHECK_FALSE(rep.cancelled);

  // The default filter keeps one representative per symmetry orbit.
  std::set<std::vector<Point>> canon;
  SearchReport dedup = enumerate_mes(GridSpec::ones_grid({2, 2, 2}), opt, collector(canon));
  CHECK(dedup.sequences_found == 8);
  CHECK(dedup.leaves_found == 48);
  SymmetryGroup group = SymmetryGroup::translations_permutations(3);
  for (const auto& pts : canon) {
    ExcSeq s = make_seq(pts);
    CHECK(canonical_form(s, group).points == pts);
  }
}

TEST_CASE("the 3x3x3 census matches the frozen counts") {
  SearchOptions opt;
  opt.check_structure = true;
  SearchReport rep = verify_fullness_report(GridSpec::ones_grid({3, 3, 3}), opt);
  CHECK(rep.leaves_found == 9198);
  CHECK(rep.sequences_found == 1533);
  CHECK(rep.all_full);
  CHECK(rep.verified);
  CHECK(rep.max_steps == 6);
  std::map<int, std::uint64_t> hist{{3, 232}, {4, 1101}, {5, 188}, {6, 12}};
  CHECK(rep.step_histogram == hist);
  CHECK(rep.labeling_classes_observed == 699);
  CHECK(rep.structure_failures == 0);
  CHECK(rep.counterexamples.empty());
  CHECK(rep.unknowns.empty());
  CHECK_FALSE(rep.cancelled);
  CHECK(rep.distribution_histogram.count("other") == 0);
}

TEST_CASE("the 5x5 plane census equals the brute-force canonical set") {
  SearchOptions opt;
  std::set<std::vector<Point>> seen;
  SearchReport rep =
      verify_fullness_report(GridSpec::ones_grid({5, 5}), opt, {}, collector(seen));
  CHECK(rep.sequences_found == 13);
  CHECK(rep.leaves_found == 26);
  CHECK(rep.all_full);
  CHECK(rep.max_steps == 3);
  std::map<int, std::uint64_t> hist{{2, 7}, {3, 6}};
  CHECK(rep.step_histogram == hist);

  CHECK(seen == test::brute_canonical_plane(5));
  for (const auto& pts : seen) {
    ExcSeq s = make_seq(pts);
    CHECK((test::plane_type1(s) || test::plane_type2(s)));
  }
}

TEST_CASE("structural pruning does not change the census") {
  std::set<std::vector<Point>> with_prune, without_prune;
  SearchOptions opt;
  SearchReport a =
      enumerate_mes(GridSpec::ones_grid({3, 3, 3}), opt, collector(with_prune));
  opt.structural_pruning = false;
  SearchReport b =
      enumerate_mes(GridSpec::ones_grid({3, 3, 3}), opt, collector(without_prune));
  CHECK(with_prune == without_prune);
  CHECK(a.sequences_found == b.sequences_found);
  CHECK(a.leaves_found == b.leaves_found);
  CHECK(a.nodes_visited <= b.nodes_visited);
}

TEST_CASE("sharded runs agree with the single shard") {
  SearchOptions opt;
  SearchReport one = verify_fullness_report(GridSpec::ones_grid({3, 3, 3}), opt);
  opt.shards = 3;
  SearchReport three = verify_fullness_report(GridSpec::ones_grid({3, 3, 3}), opt);
  CHECK(three.shards_used == 3);
  CHECK(three.sequences_found == one.sequences_found);
  CHECK(three.leaves_found == one.leaves_found);
  CHECK(three.nodes_visited == one.nodes_visited);
  CHECK(three.step_histogram == one.step_histogram);
  CHECK(three.distribution_histogram == one.distribution_histogram);
  CHECK(three.labeling_classes_observed == one.labeling_classes_observed);
  CHECK(three.max_steps == one.max_steps);
  CHECK(three.all_full == one.all_full);
}

TEST_CASE("a declining sink cancels the search") {
  SearchOptions opt;
  std::uint64_t taken = 0;
  SeqSink sink = [&taken](const ExcSeq&) { return ++taken < 5; };
  SearchReport rep = enumerate_mes(GridSpec::ones_grid({3, 3, 3}), opt, sink);
  CHECK(rep.cancelled);
  CHECK(rep.sequences_found >= 5);
  CHECK(rep.sequences_found < 1533);
}

TEST_CASE("records stream and resume complete an interrupted run") {
  namespace fs = std::filesystem;
  const std::string prefix =
      (fs::temp_directory_path() / "fes_search_records_test").string();
  const std::string shard0 = prefix + ".shard0.jsonl";

  std::vector<ExcSeq> oracle = test::exceptional_orderings(cube_corners(), DimVec::ones(3));
  std::set<std::vector<Point>> expected;
  for (const ExcSeq& s : oracle) expected.insert(s.points);

  SearchOptions opt;
  opt.records_path = prefix;

  std::set<std::vector<Point>> first;
  std::uint64_t taken = 0;
  SeqSink interrupting = [&](const ExcSeq& seq) {
    first.insert(seq.points);
    return ++taken < 10;
  };
  SearchReport a =
      enumerate_mes(GridSpec::ones_grid({2, 2, 2}), opt, interrupting, accept_all());
  CHECK(a.cancelled);
  CHECK(first.size() < expected.size());

  // The interrupted shard file holds sequence lines plus markers for the
  // root branches that finished before the cancellation.
  auto read_markers = [&shard0]() {
    std::vector<long long> roots;
    std::ifstream in(shard0);
    REQUIRE(in.good());
    std::string line;
    while (std::getline(in, line)) {
      nlohmann::json j = nlohmann::json::parse(line);
      if (j.at("type") == "root_done") roots.push_back(j.at("root").get<long long>());
    }
    return roots;
  };
  std::vector<long long> before = read_markers();
  CHECK(before.size() > 0);

  opt.resume = true;
  std::set<std::vector<Point>> second;
  SearchReport b =
      enumerate_mes(GridSpec::ones_grid({2, 2, 2}), opt, collector(second), accept_all());
  CHECK_FALSE(b.cancelled);
  CHECK(b.sequences_found <= expected.size());

  std::set<std::vector<Point>> combined = first;
  combined.insert(second.begin(), second.end());
  CHECK(combined == expected);

  // The resumed run skipped every finished root: each marker appears once.
  std::vector<long long> after = read_markers();
  CHECK(after.size() > before.size());
  std::set<long long> distinct(after.begin(), after.end());
  CHECK(distinct.size() == after.size());

  // The appended file now covers the whole census; an interrupted root
  // may appear twice, so dedupe by points.
  std::set<std::vector<Point>> from_file;
  {
    std::ifstream in(shard0);
    REQUIRE(in.good());
    std::string line;
    while (std::getline(in, line)) {
      nlohmann::json j = nlohmann::json::parse(line);
      if (j.at("type") != "seq") continue;
      std::vector<Point> pts;
      for (const auto& p : j.at("points")) pts.push_back(p.get<Point>());
      from_file.insert(pts);
    }
  }
  CHECK(from_file == expected);

  std::remove(shard0.c_str());
}

TEST_CASE("enumeration and verification agree on the census") {
  SearchOptions opt;
  SearchReport plain = enumerate_mes(GridSpec::ones_grid({3, 3, 3}), opt, {});
  SearchReport checked = verify_fullness_report(GridSpec::ones_grid({3, 3, 3}), opt);
  CHECK(plain.sequences_found == checked.sequences_found);
  CHECK(plain.leaves_found == checked.leaves_found);
  CHECK_FALSE(plain.verified);
  CHECK(checked.verified);
  CHECK(plain.step_histogram.empty());
  CHECK(plain.max_steps == 0);
  CHECK(plain.all_full);
}

TEST_CASE("named profiles run the expected grids") {
  std::vector<std::string> names{"smoke_2d_5x5", "smoke_3d_3cube", "smoke_3d_4cube",
                                 "grid_6_6_11",  "grid_6_9_9",     "full_theorem"};
  CHECK(theorem_profiles() == names);

  SearchOptions opt;
  TheoremOutcome plane = theorem_run("smoke_2d_5x5", opt);
  CHECK(plane.profile == "smoke_2d_5x5");
  REQUIRE(plane.grids.size() == 1);
  CHECK(plane.grids[0].extents == std::vector<Coord>{5, 5});
  REQUIRE(plane.per_grid.size() == 1);
  CHECK(plane.combined.sequences_found == 13);
  CHECK(plane.combined.all_full);

  TheoremOutcome cube = theorem_run("smoke_3d_3cube", opt);
  CHECK(cube.combined.sequences_found == 1533);
  CHECK(cube.combined.max_steps == 6);

  CHECK_THROWS_AS(theorem_run("nonsense", opt), std::invalid_argument);
}
