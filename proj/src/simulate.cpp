#include "fes/simulate.hpp"

#include <algorithm>
#include <numeric>

namespace fes {

long long Window::cell_count() const {
  long long n = 1;
  for (std::size_t k = 0; k < lo.size(); ++k) {
    if (hi[k] < lo[k]) return 0;
    n *= hi[k] - lo[k] + 1;
  }
  return n;
}

bool Window::contains(const Point& p) const {
  for (std::size_t k = 0; k < lo.size(); ++k)
    if (p[k] < lo[k] || p[k] > hi[k]) return false;
  return true;
}

Window bbox_window(int rank, const std::vector<Point>& points, Coord margin) {
  if (points.empty()) throw std::invalid_argument("no points to window");
  Point lo = points.front(), hi = points.front();
  for (const Point& p : points) {
    if (static_cast<int>(p.size()) != rank)
      throw std::invalid_argument("point arity does not match rank");
    for (int k = 0; k < rank; ++k) {
      lo[k] = std::min(lo[k], p[k]);
      hi[k] = std::max(hi[k], p[k]);
    }
  }
  for (int k = 0; k < rank; ++k) {
    lo[k] -= margin;
    hi[k] += margin;
  }
  return {lo, hi};
}

namespace {

constexpr long long kMaxCells = 200'000'000;

std::vector<long long> strides_of(const Window& w) {
  int r = w.rank();
  std::vector<long long> s(r);
  long long acc = 1;
  for (int k = 0; k < r; ++k) {
    s[k] = acc;
    acc *= w.hi[k] - w.lo[k] + 1;
  }
  return s;
}

long long index_of(const Window& w, const std::vector<long long>& strides, const Point& p) {
  long long idx = 0;
  for (int k = 0; k < w.rank(); ++k) idx += (p[k] - w.lo[k]) * strides[k];
  return idx;
}

void check_size(const Window& w) {
  if (w.cell_count() <= 0) throw std::invalid_argument("empty window");
  if (w.cell_count() > kMaxCells) throw std::invalid_argument("window too large");
}

}  // namespace

bool WindowGrid::at(const Point& p) const {
  return cells[index_of(window, strides_of(window), p)] != 0;
}

void WindowGrid::set(const Point& p, bool v) {
  cells[index_of(window, strides_of(window), p)] = v ? 1 : 0;
}

long long WindowGrid::count() const {
  return std::accumulate(cells.begin(), cells.end(), 0ll);
}

bool WindowGrid::all_infected() const {
  return std::all_of(cells.begin(), cells.end(), [](std::uint8_t c) { return c != 0; });
}

WindowGrid window_raster(const FlatSet& u, const Window& w) {
  check_size(w);
  if (u.rank != w.rank()) throw std::invalid_argument("rank mismatch");
  WindowGrid g{w, std::vector<std::uint8_t>(static_cast<std::size_t>(w.cell_count()), 0)};
  std::vector<long long> strides = strides_of(w);
  int r = w.rank();
  for (const Flat& f : u.flats) {
    // Clip the flat to the window: pinned axes must fall inside.
    bool misses = false;
    for (int k = 0; k < r && !misses; ++k)
      if (!(f.free >> k & 1) && (f.base[k] < w.lo[k] || f.base[k] > w.hi[k]))
        misses = true;
    if (misses) continue;
    Point p(r);
    for (int k = 0; k < r; ++k) p[k] = (f.free >> k & 1) ? w.lo[k] : f.base[k];
    // Enumerate the free-axis combinations.
    while (true) {
      g.cells[index_of(w, strides, p)] = 1;
      int k = 0;
      for (; k < r; ++k) {
        if (!(f.free >> k & 1)) continue;
        if (p[k] < w.hi[k]) {
          ++p[k];
          break;
        }
        p[k] = w.lo[k];
      }
      if (k == r) break;
    }
  }
  return g;
}

WindowGrid restricted(const WindowGrid& g, const Window& w) {
  check_size(w);
  int r = w.rank();
  for (int k = 0; k < r; ++k)
    if (w.lo[k] < g.window.lo[k] || w.hi[k] > g.window.hi[k])
      throw std::invalid_argument("sub-window not contained in grid");
  WindowGrid out{w, std::vector<std::uint8_t>(static_cast<std::size_t>(w.cell_count()), 0)};
  std::vector<long long> sin = strides_of(g.window), sout = strides_of(w);
  Point p = w.lo;
  while (true) {
    out.cells[index_of(w, sout, p)] = g.cells[index_of(g.window, sin, p)];
    int k = 0;
    for (; k < r; ++k) {
      if (p[k] < w.hi[k]) {
        ++p[k];
        break;
      }
      p[k] = w.lo[k];
    }
    if (k == r) break;
  }
  return out;
}

SimulateResult simulate_window(int rank, const std::vector<Point>& seed,
                               const DimVec& d, const Window& w, int max_rounds) {
  if (w.rank() != rank || d.rank() != rank) throw std::invalid_argument("rank mismatch");
  if (max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
  check_size(w);
  std::vector<long long> strides = strides_of(w);
  WindowGrid cur{w, std::vector<std::uint8_t>(static_cast<std::size_t>(w.cell_count()), 0)};
  for (const Point& p : seed)
    if (w.contains(p)) cur.cells[index_of(w, strides, p)] = 1;

  SimulateResult res;
  res.history.push_back(cur);
  if (cur.all_infected()) {
    res.status = ClosureStatus::full;
    return res;
  }

  for (int t = 1; t <= max_rounds; ++t) {
    WindowGrid next = cur;
    // A run of d_nu+1 consecutive infected cells infects its whole line
    // (clipped to the window).  Witnesses come from the previous round.
    for (int axis = 0; axis < rank; ++axis) {
      long long run_len = d.entries[axis] + 1;
      long long axis_cells = w.hi[axis] - w.lo[axis] + 1;
      if (axis_cells < run_len) continue;
      Point p = w.lo;
      // Iterate over all lines: all combinations with p[axis] = lo[axis].
      while (true) {
        long long base_idx = index_of(w, strides, p);
        long long run = 0;
        bool infect = false;
        for (long long c = 0; c < axis_cells; ++c) {
          run = cur.cells[base_idx + c * strides[axis]] ? run + 1 : 0;
          if (run >= run_len) {
            infect = true;
            break;
          }
        }
        if (infect)
          for (long long c = 0; c < axis_cells; ++c)
            next.cells[base_idx + c * strides[axis]] = 1;
        int k = 0;
        for (; k < rank; ++k) {
          if (k == axis) continue;
          if (p[k] < w.hi[k]) {
            ++p[k];
            break;
          }
          p[k] = w.lo[k];
        }
        if (k == rank) break;
      }
    }
    bool changed = next.cells != cur.cells;
    cur = std::move(next);
    res.history.push_back(cur);
    if (cur.all_infected()) {
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

}  // namespace fes
