#pragma once

#include "wildrisk/geo.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <vector>

namespace wildrisk::test {


// Exact oracle: Liang-Barsky clip of segment ab against the closed square of
// each cell. Returns the clipped parameter length, or -1 when disjoint.
inline double clipped_fraction(const PlanarPoint& a, const PlanarPoint& b, double x0, double y0, double x1, double y1) {
  double t0 = 0.0, t1 = 1.0;
  const double dx = b.x() - a.x(), dy = b.y() - a.y();
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {a.x() - x0, x1 - a.x(), a.y() - y0, y1 - a.y()};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return -1.0;
    } else {
      const double t = q[i] / p[i];
      if (p[i] < 0.0) t0 = std::max(t0, t);
      else t1 = std::min(t1, t);
    }
  }
  return t0 <= t1 ? t1 - t0 : -1.0;
}

inline std::set<GridIndex> clip_oracle(const PlanarPoint& a, const PlanarPoint& b, const GridGeometry& g) {
  std::set<GridIndex> out;
  const double s = g.cell_size;
  for (int r = 0; r < g.nrows; ++r) {
    for (int c = 0; c < g.ncols; ++c) {
      if (clipped_fraction(a, b, c * s, r * s, (c + 1) * s, (r + 1) * s) >= 0.0) out.insert({r, c});
    }
  }
  return out;
}

// Dense sampling at 1/100 cell pitch; a point on a cell edge belongs to every
// cell sharing that edge.
inline std::set<GridIndex> sample_oracle(const PlanarPoint& a, const PlanarPoint& b, const GridGeometry& g) {
  std::set<GridIndex> out;
  const double len_cells = (b - a).norm() / g.cell_size;
  const int n = static_cast<int>(std::ceil(len_cells * 100.0)) + 1;
  for (int i = 0; i <= n; ++i) {
    const PlanarPoint p = a + (b - a) * (static_cast<double>(i) / n);
    const double u = p.x() / g.cell_size, v = p.y() / g.cell_size;
    for (int c = static_cast<int>(std::floor(u)) - 1; c <= static_cast<int>(std::floor(u)); ++c) {
      for (int r = static_cast<int>(std::floor(v)) - 1; r <= static_cast<int>(std::floor(v)); ++r) {
        if (c < 0 || r < 0 || c >= g.ncols || r >= g.nrows) continue;
        if (u >= c && u <= c + 1 && v >= r && v <= r + 1) out.insert({r, c});
      }
    }
  }
  return out;
}

inline bool eight_connected(const std::vector<GridIndex>& cells) {
  if (cells.empty()) return true;
  std::set<GridIndex> all(cells.begin(), cells.end()), seen{cells.front()};
  std::queue<GridIndex> q;
  q.push(cells.front());
  while (!q.empty()) {
    const GridIndex g = q.front();
    q.pop();
    for (int dr = -1; dr <= 1; ++dr)
      for (int dc = -1; dc <= 1; ++dc) {
        const GridIndex n{g.row + dr, g.col + dc};
        if (all.contains(n) && seen.insert(n).second) q.push(n);
      }
  }
  return seen.size() == all.size();
}

}  // namespace wildrisk::test
