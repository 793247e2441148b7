// Windowed contamination simulator: the same process as the flat closure,
// computed by brute force on a finite box of cells.  Witness tuples and the
// infected lines are both clipped to the window.  Serves as an independent
// cross-check of the flat engine; the two are compared raster by raster.
#pragma once

#include <cstdint>
#include <vector>

#include "fes/flats.hpp"

namespace fes {

struct Window {
  Point lo, hi;  // inclusive corners

  int rank() const { return static_cast<int>(lo.size()); }
  long long cell_count() const;
  bool contains(const Point& p) const;

  friend bool operator==(const Window&, const Window&) = default;
};

Window bbox_window(int rank, const std::vector<Point>& points, Coord margin);

struct WindowGrid {
  Window window;
  std::vector<std::uint8_t> cells;  // axis 0 fastest

  bool at(const Point& p) const;
  void set(const Point& p, bool v);
  long long count() const;
  bool all_infected() const;

  friend bool operator==(const WindowGrid&, const WindowGrid&) = default;
};

// Rasterize a flat union onto a window.
WindowGrid window_raster(const FlatSet& u, const Window& w);

// Restrict a grid to a sub-window contained in it.
WindowGrid restricted(const WindowGrid& g, const Window& w);

struct SimulateResult {
  // full here means the window is saturated; stabilization and the round
  // cap mean the same as for the closure.
  ClosureStatus status = ClosureStatus::stable_not_full;
  int steps = 0;
  std::vector<WindowGrid> history;  // one grid per round, round 0 first
};

SimulateResult simulate_window(int rank, const std::vector<Point>& seed,
                               const DimVec& d, const Window& w,
                               int max_rounds = kDefaultRoundCap);

}  // namespace fes
