#include "wildrisk/geo.hpp"

#include "wildrisk/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace wildrisk {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "invalid input";
    case ErrorKind::kOutOfBounds: return "out of bounds";
    case ErrorKind::kMissingLayer: return "missing layer";
    case ErrorKind::kInconsistentRaster: return "inconsistent raster";
    case ErrorKind::kCatalog: return "catalog error";
    case ErrorKind::kMalformedSeries: return "malformed series";
    case ErrorKind::kInvalidSample: return "invalid sample";
    case ErrorKind::kCoverage: return "coverage error";
    case ErrorKind::kTopology: return "topology error";
    case ErrorKind::kGeometry: return "geometry error";
    case ErrorKind::kDegenerateNormalization: return "degenerate normalization";
    case ErrorKind::kConfig: return "config error";
    case ErrorKind::kIo: return "I/O error";
    case ErrorKind::kInvariant: return "invariant violation";
  }
  return "error";
}

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kMaxOffsetDeg = 5.0;

}  // namespace

bool GridGeometry::contains(const PlanarPoint& p) const {
  return p.x() >= 0.0 && p.y() >= 0.0 && p.x() <= width() && p.y() <= height();
}

GridIndex GridGeometry::cell_of(const PlanarPoint& p) const {
  const int col = std::clamp(static_cast<int>(std::floor(p.x() / cell_size)), 0, ncols - 1);
  const int row = std::clamp(static_cast<int>(std::floor(p.y() / cell_size)), 0, nrows - 1);
  return {row, col};
}

void validate(const GeoPoint& p) {
  if (!std::isfinite(p.lat) || !std::isfinite(p.lon) || p.lat < -90.0 || p.lat > 90.0 ||
      p.lon < -180.0 || p.lon > 180.0) {
    std::ostringstream os;
    os << "coordinate (" << p.lat << ", " << p.lon << ") outside lat [-90,90] / lon [-180,180]";
    fail(ErrorKind::kInvalidInput, os.str());
  }
}

PlanarPoint project(const GeoPoint& p, const GeoPoint& origin) {
  validate(p);
  validate(origin);
  const double dlat = p.lat - origin.lat;
  const double dlon = p.lon - origin.lon;
  if (std::abs(dlat) >= kMaxOffsetDeg || std::abs(dlon) >= kMaxOffsetDeg) {
    std::ostringstream os;
    os << "point (" << p.lat << ", " << p.lon << ") is more than " << kMaxOffsetDeg
       << " degrees from projection origin (" << origin.lat << ", " << origin.lon << ")";
    fail(ErrorKind::kInvalidInput, os.str());
  }
  return {kEarthRadiusM * std::cos(origin.lat * kDegToRad) * dlon * kDegToRad,
          kEarthRadiusM * dlat * kDegToRad};
}

GeoPoint unproject(const PlanarPoint& p, const GeoPoint& origin) {
  validate(origin);
  if (!p.allFinite()) fail(ErrorKind::kInvalidInput, "non-finite planar point");
  const double lat = origin.lat + p.y() / kEarthRadiusM / kDegToRad;
  const double lon = origin.lon + p.x() / (kEarthRadiusM * std::cos(origin.lat * kDegToRad)) / kDegToRad;
  return {lat, lon};
}

double polyline_length(std::span<const GeoPoint> points) {
  if (points.empty()) fail(ErrorKind::kInvalidInput, "polyline has no points");
  double meters = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const GeoPoint mid{0.5 * (points[i].lat + points[i + 1].lat),
                       0.5 * (points[i].lon + points[i + 1].lon)};
    meters += (project(points[i + 1], mid) - project(points[i], mid)).norm();
  }
  if (points.size() == 1) validate(points.front());
  return meters / kMetersPerMile;
}

std::vector<GridIndex> traverse_cells(const PlanarPoint& a, const PlanarPoint& b,
                                      const GridGeometry& grid) {
  if (grid.nrows <= 0 || grid.ncols <= 0 || !(grid.cell_size > 0.0)) {
    fail(ErrorKind::kInvalidInput, "grid geometry must have positive dimensions");
  }
  for (const PlanarPoint* p : {&a, &b}) {
    if (!p->allFinite() || !grid.contains(*p)) {
      std::ostringstream os;
      os << "segment endpoint (" << p->x() << ", " << p->y() << ") m outside raster extent "
         << grid.width() << " x " << grid.height() << " m";
      fail(ErrorKind::kOutOfBounds, os.str());
    }
  }

  // Work in cell units so integer grid lines are exact.
  const Eigen::Vector2d u = a / grid.cell_size;
  const Eigen::Vector2d v = b / grid.cell_size;
  const Eigen::Vector2d d = v - u;

  std::vector<GridIndex> cells;
  const double xlo = std::min(u.x(), v.x());
  const double xhi = std::max(u.x(), v.x());
  const int cmin = std::max(0, static_cast<int>(std::ceil(xlo - 1.0)));
  const int cmax = std::min(grid.ncols - 1, static_cast<int>(std::floor(xhi)));

  auto y_at = [&](double x) {
    if (x <= xlo) return u.x() <= v.x() ? u.y() : v.y();
    if (x >= xhi) return u.x() <= v.x() ? v.y() : u.y();
    return u.y() + d.y() * ((x - u.x()) / d.x());
  };

  for (int c = cmin; c <= cmax; ++c) {
    double ylo;
    double yhi;
    if (d.x() == 0.0) {
      ylo = std::min(u.y(), v.y());
      yhi = std::max(u.y(), v.y());
    } else {
      const double y0 = y_at(std::max<double>(c, xlo));
      const double y1 = y_at(std::min<double>(c + 1, xhi));
      ylo = std::min(y0, y1);
      yhi = std::max(y0, y1);
    }
    const int rmin = std::max(0, static_cast<int>(std::ceil(ylo - 1.0)));
    const int rmax = std::min(grid.nrows - 1, static_cast<int>(std::floor(yhi)));
    for (int r = rmin; r <= rmax; ++r) cells.push_back({r, c});
  }

  auto key = [&](GridIndex g) {
    const Eigen::Vector2d center(g.col + 0.5, g.row + 0.5);
    return (center - u).dot(d);
  };
  std::sort(cells.begin(), cells.end(), [&](GridIndex l, GridIndex r) {
    const double kl = key(l);
    const double kr = key(r);
    if (kl != kr) return kl < kr;
    return l < r;
  });
  return cells;
}

RasterFrame::RasterFrame(GridGeometry grid, GeoPoint southwest)
    : grid_(grid), southwest_(southwest) {
  validate(southwest);
  if (grid.nrows <= 0 || grid.ncols <= 0 || !(grid.cell_size > 0.0)) {
    fail(ErrorKind::kInvalidInput, "raster frame needs positive dimensions and cell size");
  }
  const double lat = southwest.lat + 0.5 * grid.height() / kEarthRadiusM / kDegToRad;
  const double lon = southwest.lon +
                     0.5 * grid.width() / (kEarthRadiusM * std::cos(lat * kDegToRad)) / kDegToRad;
  centroid_ = {lat, lon};
}

PlanarPoint RasterFrame::to_planar(const GeoPoint& p) const {
  return project(p, centroid_) + PlanarPoint(0.5 * grid_.width(), 0.5 * grid_.height());
}

GeoPoint RasterFrame::to_geo(const PlanarPoint& p) const {
  return unproject(p - PlanarPoint(0.5 * grid_.width(), 0.5 * grid_.height()), centroid_);
}

}  // namespace wildrisk
