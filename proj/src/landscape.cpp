#include "wildrisk/landscape.hpp"

#include "text_util.hpp"
#include "wildrisk/error.hpp"
#include "wildrisk/rng.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <limits>
#include <cmath>
#include <numbers>
#include <sstream>

namespace wildrisk {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;
constexpr double kDefaultNodata = -9999.0;

struct AscHeader {
  int ncols = 0;
  int nrows = 0;
  double xllcorner = 0.0;
  double yllcorner = 0.0;
  double cellsize = 0.0;
  double nodata = kDefaultNodata;
  bool has_nodata = false;

  bool same_frame(const AscHeader& o) const {
    return ncols == o.ncols && nrows == o.nrows && xllcorner == o.xllcorner &&
           yllcorner == o.yllcorner && cellsize == o.cellsize;
  }
};

struct AscGrid {
  AscHeader header;
  Layer<double> values;  // row 0 south
  Layer<bool> nodata;
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

AscGrid read_asc(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kMissingLayer, "cannot read layer file '" + path.string() + "'");

  AscGrid grid;
  AscHeader& h = grid.header;
  std::string key;
  std::string value;
  int seen = 0;
  // Header lines are "key value"; the first numeric token starts the data.
  while (in >> key) {
    if (!key.empty() && (std::isdigit(static_cast<unsigned char>(key[0])) || key[0] == '-' ||
                         key[0] == '+' || key[0] == '.')) {
      in.seekg(-static_cast<std::streamoff>(key.size()), std::ios::cur);
      break;
    }
    if (!(in >> value)) fail(ErrorKind::kInconsistentRaster, path.string() + ": header key '" + key + "' has no value");
    const std::string k = lower(key);
    double v = 0.0;
    if (!detail::parse_double(value, v)) {
      fail(ErrorKind::kInconsistentRaster, path.string() + ": header '" + key + "' is not numeric");
    }
    if (k == "ncols") h.ncols = static_cast<int>(v), seen |= 1;
    else if (k == "nrows") h.nrows = static_cast<int>(v), seen |= 2;
    else if (k == "xllcorner") h.xllcorner = v, seen |= 4;
    else if (k == "yllcorner") h.yllcorner = v, seen |= 8;
    else if (k == "cellsize") h.cellsize = v, seen |= 16;
    else if (k == "nodata_value") h.nodata = v, h.has_nodata = true;
    else fail(ErrorKind::kInconsistentRaster, path.string() + ": unknown header key '" + key + "'");
  }
  if (seen != 31) fail(ErrorKind::kInconsistentRaster, path.string() + ": incomplete header");
  if (h.ncols <= 0 || h.nrows <= 0 || !(h.cellsize > 0.0)) {
    fail(ErrorKind::kInconsistentRaster, path.string() + ": non-positive dimensions or cellsize");
  }

  grid.values.resize(h.nrows, h.ncols);
  grid.nodata.setConstant(h.nrows, h.ncols, false);
  std::string token;
  for (int file_row = 0; file_row < h.nrows; ++file_row) {
    const int row = h.nrows - 1 - file_row;  // file lists the north row first
    for (int col = 0; col < h.ncols; ++col) {
      double v = 0.0;
      if (!(in >> token) || !detail::parse_double(token, v)) {
        fail(ErrorKind::kInconsistentRaster, path.string() + ": missing or bad value at file row " +
                                                 std::to_string(file_row + 1));
      }
      grid.values(row, col) = v;
      grid.nodata(row, col) = h.has_nodata && v == h.nodata;
    }
  }
  if (in >> token) fail(ErrorKind::kInconsistentRaster, path.string() + ": more values than ncols*nrows");
  return grid;
}

void write_asc(const std::filesystem::path& path, const RasterFrame& frame,
               const Layer<double>& values) {
  const GridGeometry& g = frame.grid();
  std::string out;
  out.reserve(static_cast<std::size_t>(g.ncols) * g.nrows * 8 + 160);
  out += "ncols " + std::to_string(g.ncols) + "\n";
  out += "nrows " + std::to_string(g.nrows) + "\n";
  out += "xllcorner " + detail::format_double(frame.southwest().lon) + "\n";
  out += "yllcorner " + detail::format_double(frame.southwest().lat) + "\n";
  out += "cellsize " + detail::format_double(g.cell_size) + "\n";
  out += "NODATA_value " + detail::format_double(kDefaultNodata) + "\n";
  for (int row = g.nrows - 1; row >= 0; --row) {
    for (int col = 0; col < g.ncols; ++col) {
      if (col) out += ' ';
      out += detail::format_double(values(row, col));
    }
    out += '\n';
  }
  detail::write_file(path, out);
}

struct LayerFile {
  const char* name;
  Layer<double> LandscapeRaster::*member;
};

// Fuel is integral and handled separately.
constexpr std::array<LayerFile, 7> kRealLayers{{
    {"elevation.asc", &LandscapeRaster::elevation},
    {"slope.asc", &LandscapeRaster::slope},
    {"aspect.asc", &LandscapeRaster::aspect},
    {"canopy_cover.asc", &LandscapeRaster::canopy_cover},
    {"canopy_height.asc", &LandscapeRaster::canopy_height},
    {"canopy_base.asc", &LandscapeRaster::canopy_base},
    {"canopy_density.asc", &LandscapeRaster::canopy_density},
}};
constexpr const char* kFuelFile = "fuel.asc";

bool parse_bool(std::string_view s, bool& out) {
  const std::string v = lower(std::string(detail::trim(s)));
  if (v == "1" || v == "true" || v == "yes") return out = true, true;
  if (v == "0" || v == "false" || v == "no") return out = false, true;
  return false;
}

double layer_value(const LayerSpec& spec, double x, double y, SplitMix64& rng) {
  double v = spec.base + spec.per_m_east * x + spec.per_m_north * y;
  if (spec.noise > 0.0) v += rng.uniform(-spec.noise, spec.noise);
  return v;
}

}  // namespace

FuelCatalog::FuelCatalog(std::map<int, FuelModel> models, int non_burnable_id)
    : models_(std::move(models)), non_burnable_id_(non_burnable_id) {
  for (const auto& [id, m] : models_) {
    if (id != m.id) fail(ErrorKind::kCatalog, "fuel model keyed " + std::to_string(id) + " has id " + std::to_string(m.id));
    const std::string who = "fuel model " + std::to_string(id);
    if (!(m.base_ros >= 0.0) || !(m.wind_coeff >= 0.0) || !(m.wind_exp >= 0.0) || !(m.moisture_exp >= 0.0)) {
      fail(ErrorKind::kCatalog, who + " has a negative or non-finite coefficient");
    }
    if ((m.base_ros > 0.0) != m.burnable) {
      fail(ErrorKind::kCatalog, who + ": base_ros must be > 0 exactly when burnable");
    }
  }
  const auto it = models_.find(non_burnable_id_);
  if (it == models_.end()) fail(ErrorKind::kCatalog, "non-burnable id " + std::to_string(non_burnable_id_) + " not in catalog");
  if (it->second.burnable) fail(ErrorKind::kCatalog, "designated non-burnable id " + std::to_string(non_burnable_id_) + " is burnable");
}

FuelCatalog FuelCatalog::defaults() {
  std::map<int, FuelModel> m;
  m[0] = {0, "non-burnable", false, 0.0, 0.0, 0.0, 0.0};
  m[1] = {1, "grass", true, 15.0, 0.4, 1.0, 1.0};
  m[2] = {2, "shrub", true, 8.0, 0.3, 1.0, 1.2};
  m[3] = {3, "timber litter", true, 2.0, 0.2, 1.0, 0.8};
  return FuelCatalog(std::move(m), 0);
}

const FuelModel& FuelCatalog::at(int id) const {
  const auto it = models_.find(id);
  if (it == models_.end()) fail(ErrorKind::kCatalog, "fuel id " + std::to_string(id) + " not in catalog");
  return it->second;
}

FuelCatalog load_fuel_catalog(const std::filesystem::path& csv) {
  std::ifstream in = detail::open_input(csv);
  std::string line;
  if (!std::getline(in, line) ||
      detail::trim(line) != "id,name,burnable,base_ros_m_min,wind_coeff,wind_exp,moisture_exp") {
    fail(ErrorKind::kCatalog, csv.string() + ": unexpected header");
  }
  std::map<int, FuelModel> models;
  std::optional<int> non_burnable;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (detail::trim(line).empty()) continue;
    const auto f = detail::split(line);
    FuelModel m;
    long long id = 0;
    if (f.size() != 7 || !detail::parse_int(f[0], id) || !parse_bool(f[2], m.burnable) ||
        !detail::parse_double(f[3], m.base_ros) || !detail::parse_double(f[4], m.wind_coeff) ||
        !detail::parse_double(f[5], m.wind_exp) || !detail::parse_double(f[6], m.moisture_exp)) {
      fail(ErrorKind::kCatalog, csv.string() + ": malformed row " + std::to_string(row));
    }
    m.id = static_cast<int>(id);
    m.name = f[1];
    if (!models.emplace(m.id, m).second) fail(ErrorKind::kCatalog, "duplicate fuel id " + std::to_string(m.id));
    if (!m.burnable && !non_burnable) non_burnable = m.id;
  }
  if (!non_burnable) fail(ErrorKind::kCatalog, csv.string() + ": no non-burnable fuel model");
  return FuelCatalog(std::move(models), *non_burnable);
}

void write_fuel_catalog(const FuelCatalog& catalog, const std::filesystem::path& csv) {
  // The non-burnable designation is recovered on load as the first
  // non-burnable row, so it is written first.
  std::string out = "id,name,burnable,base_ros_m_min,wind_coeff,wind_exp,moisture_exp\n";
  auto row = [&](const FuelModel& m) {
    out += std::to_string(m.id) + "," + m.name + "," + (m.burnable ? "1" : "0") + "," +
           detail::format_double(m.base_ros) + "," + detail::format_double(m.wind_coeff) + "," +
           detail::format_double(m.wind_exp) + "," + detail::format_double(m.moisture_exp) + "\n";
  };
  row(catalog.at(catalog.non_burnable_id()));
  for (const auto& [id, m] : catalog.models()) {
    if (id != catalog.non_burnable_id()) row(m);
  }
  detail::write_file(csv, out);
}

bool operator==(const LandscapeRaster& l, const LandscapeRaster& r) {
  auto same = [](const auto& a, const auto& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a == b).all();
  };
  return l.frame.grid() == r.frame.grid() && l.frame.southwest() == r.frame.southwest() &&
         same(l.elevation, r.elevation) && same(l.slope, r.slope) && same(l.aspect, r.aspect) &&
         same(l.fuel, r.fuel) && same(l.canopy_cover, r.canopy_cover) &&
         same(l.canopy_height, r.canopy_height) && same(l.canopy_base, r.canopy_base) &&
         same(l.canopy_density, r.canopy_density);
}

void validate(const LandscapeRaster& r, const FuelCatalog& catalog) {
  const int nr = r.nrows();
  const int nc = r.ncols();
  if (nr <= 0 || nc <= 0 || !(r.cell_size() > 0.0)) {
    fail(ErrorKind::kInvalidInput, "landscape needs positive dimensions and cell size");
  }
  auto check_shape = [&](const auto& layer, const char* name) {
    if (layer.rows() != nr || layer.cols() != nc) {
      fail(ErrorKind::kInconsistentRaster, std::string(name) + " layer shape differs from raster");
    }
  };
  auto check_range = [&](const Layer<double>& layer, const char* name, double lo, double hi, bool hi_open) {
    check_shape(layer, name);
    for (Eigen::Index i = 0; i < layer.size(); ++i) {
      const double v = layer.data()[i];
      if (!std::isfinite(v) || v < lo || v > hi || (hi_open && v == hi)) {
        std::ostringstream os;
        os << name << " value " << v << " at cell (" << i / nc << ", " << i % nc << ") outside ["
           << lo << ", " << hi << (hi_open ? ")" : "]");
        fail(ErrorKind::kInvalidInput, os.str());
      }
    }
  };
  const double inf = std::numeric_limits<double>::max();
  check_range(r.elevation, "elevation", -inf, inf, false);
  check_range(r.slope, "slope", 0.0, 90.0, true);
  check_range(r.aspect, "aspect", 0.0, 360.0, true);
  check_range(r.canopy_cover, "canopy_cover", 0.0, 100.0, false);
  check_range(r.canopy_height, "canopy_height", 0.0, inf, false);
  check_range(r.canopy_base, "canopy_base", 0.0, inf, false);
  check_range(r.canopy_density, "canopy_density", 0.0, inf, false);
  check_shape(r.fuel, "fuel");
  for (Eigen::Index i = 0; i < r.fuel.size(); ++i) {
    const int id = r.fuel.data()[i];
    if (!catalog.contains(id)) {
      fail(ErrorKind::kCatalog, "fuel id " + std::to_string(id) + " at cell (" + std::to_string(i / nc) +
                                    ", " + std::to_string(i % nc) + ") not in catalog");
    }
  }
}

LandscapeRaster load_landscape(const std::filesystem::path& directory, const FuelCatalog& catalog) {
  const std::filesystem::path fuel_path = directory / kFuelFile;
  if (!std::filesystem::exists(fuel_path)) fail(ErrorKind::kMissingLayer, "layer file '" + fuel_path.string() + "' not found");
  for (const LayerFile& lf : kRealLayers) {
    if (!std::filesystem::exists(directory / lf.name)) {
      fail(ErrorKind::kMissingLayer, "layer file '" + (directory / lf.name).string() + "' not found");
    }
  }

  const AscGrid fuel = read_asc(fuel_path);
  const AscHeader& h = fuel.header;
  LandscapeRaster r;
  r.frame = RasterFrame(GridGeometry{h.nrows, h.ncols, h.cellsize}, GeoPoint{h.yllcorner, h.xllcorner});

  Layer<bool> nodata = fuel.nodata;
  for (const LayerFile& lf : kRealLayers) {
    AscGrid g = read_asc(directory / lf.name);
    if (!g.header.same_frame(h)) {
      fail(ErrorKind::kInconsistentRaster, std::string(lf.name) + " header differs from " + kFuelFile);
    }
    nodata = nodata || g.nodata;
    r.*(lf.member) = std::move(g.values);
  }

  r.fuel.resize(h.nrows, h.ncols);
  for (int row = 0; row < h.nrows; ++row) {
    for (int col = 0; col < h.ncols; ++col) {
      if (nodata(row, col)) {
        r.fuel(row, col) = catalog.non_burnable_id();
        for (const LayerFile& lf : kRealLayers) (r.*(lf.member))(row, col) = 0.0;
        continue;
      }
      const double v = fuel.values(row, col);
      if (v != std::floor(v) || std::abs(v) > 1e9) {
        fail(ErrorKind::kCatalog, "non-integral fuel id " + detail::format_double(v));
      }
      r.fuel(row, col) = static_cast<int>(v);
    }
  }
  validate(r, catalog);
  return r;
}

void write_landscape(const LandscapeRaster& raster, const std::filesystem::path& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) fail(ErrorKind::kIo, "cannot create directory '" + directory.string() + "': " + ec.message());
  write_asc(directory / kFuelFile, raster.frame, raster.fuel.cast<double>());
  for (const LayerFile& lf : kRealLayers) write_asc(directory / lf.name, raster.frame, raster.*(lf.member));
}

void derive_terrain(LandscapeRaster& r) {
  const int nr = r.nrows();
  const int nc = r.ncols();
  const double s = r.cell_size();
  const Layer<double>& z = r.elevation;
  r.slope.resize(nr, nc);
  r.aspect.resize(nr, nc);
  for (int row = 0; row < nr; ++row) {
    for (int col = 0; col < nc; ++col) {
      double dzdx = 0.0;
      double dzdy = 0.0;
      if (nc > 1) {
        const int c0 = std::max(col - 1, 0);
        const int c1 = std::min(col + 1, nc - 1);
        dzdx = (z(row, c1) - z(row, c0)) / ((c1 - c0) * s);
      }
      if (nr > 1) {
        const int r0 = std::max(row - 1, 0);
        const int r1 = std::min(row + 1, nr - 1);
        dzdy = (z(r1, col) - z(r0, col)) / ((r1 - r0) * s);
      }
      r.slope(row, col) = std::atan(std::hypot(dzdx, dzdy)) * kRadToDeg;
      double aspect = 0.0;
      if (dzdx != 0.0 || dzdy != 0.0) {
        aspect = std::atan2(-dzdx, -dzdy) * kRadToDeg;  // compass bearing of steepest descent
        if (aspect < 0.0) aspect += 360.0;
        if (aspect >= 360.0) aspect -= 360.0;
      }
      r.aspect(row, col) = aspect;
    }
  }
}

LandscapeRaster synth_landscape(const SynthSpec& spec) {
  if (spec.ncols <= 0 || spec.nrows <= 0 || !(spec.cell_size > 0.0)) {
    fail(ErrorKind::kInvalidInput, "synthetic landscape needs positive ncols, nrows and cell_size");
  }
  LandscapeRaster r;
  r.frame = RasterFrame(GridGeometry{spec.nrows, spec.ncols, spec.cell_size}, spec.southwest);
  const int nr = spec.nrows;
  const int nc = spec.ncols;
  r.elevation.resize(nr, nc);
  r.canopy_cover.resize(nr, nc);
  r.canopy_height.resize(nr, nc);
  r.canopy_base.resize(nr, nc);
  r.canopy_density.resize(nr, nc);
  r.fuel.setConstant(nr, nc, spec.fuel_id);

  SplitMix64 rng(spec.seed);
  for (int row = 0; row < nr; ++row) {
    for (int col = 0; col < nc; ++col) {
      const PlanarPoint c = r.grid().center({row, col});
      r.elevation(row, col) = layer_value(spec.elevation, c.x(), c.y(), rng);
      r.canopy_cover(row, col) = std::clamp(layer_value(spec.canopy_cover, c.x(), c.y(), rng), 0.0, 100.0);
      r.canopy_height(row, col) = std::max(0.0, layer_value(spec.canopy_height, c.x(), c.y(), rng));
      r.canopy_base(row, col) = std::max(0.0, layer_value(spec.canopy_base, c.x(), c.y(), rng));
      r.canopy_density(row, col) = std::max(0.0, layer_value(spec.canopy_density, c.x(), c.y(), rng));
    }
  }
  derive_terrain(r);
  return r;
}

double cell_acreage(double cell_size) {
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    fail(ErrorKind::kInvalidInput, "cell size must be positive, got " + detail::format_double(cell_size));
  }
  return cell_size * cell_size * kAcresPerSquareMeter;
}

}  // namespace wildrisk
