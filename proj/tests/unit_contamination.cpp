#include <doctest.h>

#include <vector>

#include "fes/catalog.hpp"
#include "fes/flats.hpp"
#include "fes/simulate.hpp"
#include "helpers.hpp"

using namespace fes;
using test::make_seq;

TEST_CASE("flat membership, subset, intersection") {
  Flat point{{2, 3}, 0};
  Flat line{{2, 0}, 0b10};   // x = 2, y free
  Flat plane{{0, 0}, 0b11};  // everything

  CHECK(flat_member({2, 3}, point));
  CHECK(!flat_member({2, 4}, point));
  CHECK(flat_member({2, -7}, line));
  CHECK(!flat_member({3, 0}, line));

  CHECK(flat_subset(point, line));
  CHECK(flat_subset(line, plane));
  CHECK(!flat_subset(line, point));

  auto cross = flat_intersect(line, Flat{{0, 3}, 0b01});
  REQUIRE(cross.has_value());
  CHECK(cross->base == Point{2, 3});
  CHECK(cross->free == 0);

  CHECK(!flat_intersect(point, Flat{{9, 0}, 0b10}).has_value());
  auto same = flat_intersect(line, line);
  REQUIRE(same.has_value());
  CHECK(*same == line);
}

TEST_CASE("flat shift and span") {
  Flat line{{2, 0}, 0b10};
  CHECK(flat_shift(line, 0, 3).base == Point{5, 0});
  CHECK(flat_shift(line, 1, 3) == line);  // free axis, no effect
  Flat spanned = flat_span(line, 0);
  CHECK(spanned.free == 0b11);
  CHECK(spanned.base == Point{0, 0});
}

TEST_CASE("flat set insertion absorbs and is order independent") {
  FlatSet u{2, {}};
  CHECK(insert_flat(u, Flat{{1, 1}, 0}));
  CHECK(insert_flat(u, Flat{{1, 0}, 0b10}));  // line through (1,1)
  CHECK(u.size() == 1);                       // the point got absorbed
  CHECK(!insert_flat(u, Flat{{1, 5}, 0}));    // already covered

  FlatSet v{2, {}};
  insert_flat(v, Flat{{1, 0}, 0b10});
  insert_flat(v, Flat{{1, 1}, 0});
  CHECK(u == v);
  CHECK(u.contains_point({1, 42}));
  CHECK(!u.contains_point({2, 0}));
  CHECK(!u.contains_full_space());
}

TEST_CASE("flats_from_points deduplicates") {
  FlatSet u = flats_from_points(2, {{0, 0}, {1, 1}, {0, 0}});
  CHECK(u.size() == 2);
}

TEST_CASE("one contamination step turns adjacent pairs into lines") {
  DimVec d = DimVec::ones(2);
  FlatSet seed = flats_from_points(2, {{0, 0}, {1, 0}, {5, 5}});
  FlatSet next = cont_step(seed, d);
  CHECK(next.contains_point({-100, 0}));  // the x-line through the pair
  CHECK(next.contains_point({5, 5}));     // isolated point survives
  CHECK(!next.contains_point({5, 6}));

  FlatSet spread = flats_from_points(2, {{0, 0}, {2, 0}});
  CHECK(cont_step(spread, d) == spread);  // distance 2 is not adjacent
}

TEST_CASE("wider step bounds need longer runs") {
  DimVec d{{2}};
  FlatSet three = flats_from_points(1, {{0}, {1}, {2}});
  CHECK(cont_step(three, d).contains_full_space());
  FlatSet two = flats_from_points(1, {{0}, {2}});
  CHECK(cont_step(two, d) == two);
  FlatSet gap = flats_from_points(1, {{0}, {1}, {3}});
  CHECK(cont_step(gap, d) == gap);
}

TEST_CASE("closure on the bundled sequences hits the recorded step counts") {
  struct Golden {
    const char* name;
    int steps;
  };
  for (auto [name, steps] : {Golden{"four-steps", 4}, Golden{"five-steps", 5},
                             Golden{"six-steps", 6}, Golden{"seven-steps", 7}}) {
    CAPTURE(name);
    ExcSeq seq = catalog_get(name).seq;
    ClosureResult res = closure(3, seq.points, DimVec::ones(3));
    CHECK(res.status == ClosureStatus::full);
    CHECK(res.steps == steps);
    CHECK(res.history.size() == static_cast<std::size_t>(steps) + 1);
    CHECK(res.history.back().contains_full_space());

    ClosureSummary s = closure_summary(3, seq.points, DimVec::ones(3));
    CHECK(s.status == res.status);
    CHECK(s.steps == res.steps);
  }
}

TEST_CASE("the scattered set infects nothing") {
  ExcSeq seq = catalog_get("scattered").seq;
  ClosureResult res = closure(2, seq.points, DimVec::ones(2));
  CHECK(res.status == ClosureStatus::stable_not_full);
  CHECK(res.steps == 0);
  FlatSet seed = flats_from_points(2, seq.points);
  CHECK(res.history.back() == seed);
}

TEST_CASE("closure in one dimension") {
  ClosureResult pair = closure(1, {{0}, {1}}, DimVec::ones(1));
  CHECK(pair.status == ClosureStatus::full);
  CHECK(pair.steps == 1);

  ClosureResult lone = closure(1, {{4}}, DimVec::ones(1));
  CHECK(lone.status == ClosureStatus::stable_not_full);
  CHECK(lone.steps == 0);
}

TEST_CASE("two adjacent lines fill the plane") {
  ClosureResult res = closure(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}, DimVec::ones(2));
  CHECK(res.status == ClosureStatus::full);
  CHECK(res.steps == 2);
}

TEST_CASE("round cap is reported as its own status") {
  ExcSeq seq = catalog_get("seven-steps").seq;
  ClosureResult res = closure(3, seq.points, DimVec::ones(3), 3);
  CHECK(res.status == ClosureStatus::round_cap_reached);
  CHECK_THROWS_AS(is_full(seq, DimVec::ones(3), 3), RoundCapReached);
}

TEST_CASE("is_full agrees with the closure") {
  CHECK(is_full(catalog_get("four-steps").seq, DimVec::ones(3)));
  CHECK(is_full(catalog_get("seven-steps").seq, DimVec::ones(3)));
  CHECK(is_full(standard_sequence(3), DimVec::ones(3)));
  CHECK(!is_full(catalog_get("scattered").seq, DimVec::ones(2)));
}

TEST_CASE("windowed simulator equals the flat engine on the bundled sequences") {
  for (const char* name : {"four-steps", "five-steps", "six-steps", "seven-steps"}) {
    for (Coord margin : {2, 4}) {
      CAPTURE(name);
      CAPTURE(margin);
      ExcSeq seq = catalog_get(name).seq;
      Window w = bbox_window(3, seq.points, margin);
      SimulateResult sim = simulate_window(3, seq.points, DimVec::ones(3), w);
      ClosureResult clo = closure(3, seq.points, DimVec::ones(3));

      REQUIRE(sim.status == ClosureStatus::full);
      CHECK(sim.steps == clo.steps);
      REQUIRE(sim.history.size() == clo.history.size());
      for (std::size_t t = 0; t < clo.history.size(); ++t) {
        CAPTURE(t);
        CHECK(window_raster(clo.history[t], w) == sim.history[t]);
      }
    }
  }
}

TEST_CASE("simulator drops seeds outside the window") {
  Window w{{0, 0}, {3, 3}};
  SimulateResult sim = simulate_window(2, {{0, 0}, {1, 0}, {9, 9}}, DimVec::ones(2), w);
  CHECK(sim.history.front().count() == 2);
}

TEST_CASE("restricting a raster to a subwindow") {
  FlatSet u = flats_from_points(2, {{0, 0}, {1, 1}});
  Window big{{-2, -2}, {2, 2}};
  Window small{{0, 0}, {1, 1}};
  WindowGrid inner = restricted(window_raster(u, big), small);
  CHECK(inner == window_raster(u, small));
  CHECK(inner.count() == 2);
}
