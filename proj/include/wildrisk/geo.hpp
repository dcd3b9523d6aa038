#pragma once

#include <Eigen/Core>

#include <span>
#include <vector>

namespace wildrisk {

inline constexpr double kEarthRadiusM = 6371000.0;
inline constexpr double kMetersPerMile = 1609.344;

struct GeoPoint {
  double lat = 0.0;  // degrees
  double lon = 0.0;  // degrees

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

/// Meters east (x) and north (y) of some planar origin.
using PlanarPoint = Eigen::Vector2d;

struct GridIndex {
  int row = 0;  // 0 at the south edge
  int col = 0;  // 0 at the west edge

  friend bool operator==(const GridIndex&, const GridIndex&) = default;
  friend auto operator<=>(const GridIndex&, const GridIndex&) = default;
};

/// Cell layout of a raster in its own planar frame: the south-west corner is
/// (0, 0) and cell (row, col) covers the closed square
/// [col*s, (col+1)*s] x [row*s, (row+1)*s].
struct GridGeometry {
  int nrows = 0;
  int ncols = 0;
  double cell_size = 0.0;  // meters

  double width() const { return ncols * cell_size; }
  double height() const { return nrows * cell_size; }
  bool contains(const PlanarPoint& p) const;
  bool contains(GridIndex idx) const {
    return idx.row >= 0 && idx.row < nrows && idx.col >= 0 && idx.col < ncols;
  }
  /// Cell containing p; points on a shared edge go to the north/east cell,
  /// points on the outer north/east edge to the last row/column.
  GridIndex cell_of(const PlanarPoint& p) const;
  PlanarPoint center(GridIndex idx) const {
    return {(idx.col + 0.5) * cell_size, (idx.row + 0.5) * cell_size};
  }
  std::size_t linear(GridIndex idx) const {
    return static_cast<std::size_t>(idx.row) * ncols + idx.col;
  }
  std::size_t size() const { return static_cast<std::size_t>(nrows) * ncols; }

  friend bool operator==(const GridGeometry&, const GridGeometry&) = default;
};

void validate(const GeoPoint& p);

/// Local equirectangular projection about `origin`. Both points must lie
/// within 5 degrees of the origin in latitude and longitude.
PlanarPoint project(const GeoPoint& p, const GeoPoint& origin);
GeoPoint unproject(const PlanarPoint& p, const GeoPoint& origin);

/// Length in miles. Each segment is measured in a projection about its own
/// midpoint, so the result is reversal-invariant and additive.
double polyline_length(std::span<const GeoPoint> points);

/// Supercover traversal: every cell whose closed square meets segment ab,
/// ordered along the segment from a to b.
std::vector<GridIndex> traverse_cells(const PlanarPoint& a, const PlanarPoint& b,
                                      const GridGeometry& grid);

/// Georeferencing of a raster: its grid plus the geographic south-west corner.
/// Geographic points are projected about the raster centroid and shifted so
/// the south-west corner lands on (0, 0).
class RasterFrame {
 public:
  RasterFrame() = default;
  RasterFrame(GridGeometry grid, GeoPoint southwest);

  const GridGeometry& grid() const { return grid_; }
  const GeoPoint& southwest() const { return southwest_; }
  const GeoPoint& centroid() const { return centroid_; }

  PlanarPoint to_planar(const GeoPoint& p) const;
  GeoPoint to_geo(const PlanarPoint& p) const;

 private:
  GridGeometry grid_;
  GeoPoint southwest_;
  GeoPoint centroid_;
};

}  // namespace wildrisk
