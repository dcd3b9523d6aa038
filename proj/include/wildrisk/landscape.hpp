#pragma once

#include "wildrisk/geo.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace wildrisk {

/// Per-cell raster layer, row 0 at the south edge.
template <typename Scalar>
using Layer = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr double kAcresPerSquareMeter = 0.000247105381;

struct FuelModel {
  int id = 0;
  std::string name;
  bool burnable = false;
  double base_ros = 0.0;      // m/min, zero wind and slope, reference humidity
  double wind_coeff = 0.0;    // per (m/s)^wind_exp
  double wind_exp = 1.0;
  double moisture_exp = 1.0;

  friend bool operator==(const FuelModel&, const FuelModel&) = default;
};

class FuelCatalog {
 public:
  FuelCatalog() = default;
  FuelCatalog(std::map<int, FuelModel> models, int non_burnable_id);

  /// grass, shrub, timber litter and the non-burnable id 0.
  static FuelCatalog defaults();

  const FuelModel& at(int id) const;
  bool contains(int id) const { return models_.contains(id); }
  int non_burnable_id() const { return non_burnable_id_; }
  const std::map<int, FuelModel>& models() const { return models_; }

  friend bool operator==(const FuelCatalog&, const FuelCatalog&) = default;

 private:
  std::map<int, FuelModel> models_;
  int non_burnable_id_ = 0;
};

FuelCatalog load_fuel_catalog(const std::filesystem::path& csv);
void write_fuel_catalog(const FuelCatalog& catalog, const std::filesystem::path& csv);

/// The eight-band landscape. Layers are sized nrows x ncols.
struct LandscapeRaster {
  RasterFrame frame;
  Layer<double> elevation;       // m
  Layer<double> slope;           // degrees [0, 90)
  Layer<double> aspect;          // degrees [0, 360), downslope-facing
  Layer<int> fuel;               // fuel model id
  Layer<double> canopy_cover;    // percent
  Layer<double> canopy_height;   // m
  Layer<double> canopy_base;     // m
  Layer<double> canopy_density;  // kg/m^3

  const GridGeometry& grid() const { return frame.grid(); }
  int nrows() const { return frame.grid().nrows; }
  int ncols() const { return frame.grid().ncols; }
  double cell_size() const { return frame.grid().cell_size; }

  friend bool operator==(const LandscapeRaster& l, const LandscapeRaster& r);
};

/// Throws on any layer shape or range violation or an unknown fuel id.
void validate(const LandscapeRaster& raster, const FuelCatalog& catalog);

/// Reads the eight ESRI ASCII grids in `directory`. NODATA cells become
/// non-burnable with zeroed terrain and canopy.
LandscapeRaster load_landscape(const std::filesystem::path& directory, const FuelCatalog& catalog);

/// Writes the eight grids with shortest round-trip number formatting, so
/// load_landscape(write_landscape(r)) == r.
void write_landscape(const LandscapeRaster& raster, const std::filesystem::path& directory);

/// Value of a synthesized layer at planar (x, y): base + east*x + north*y + noise.
struct LayerSpec {
  double base = 0.0;
  double per_m_east = 0.0;
  double per_m_north = 0.0;
  double noise = 0.0;  // amplitude of seeded uniform noise in [-noise, noise]
};

struct SynthSpec {
  int ncols = 128;
  int nrows = 128;
  double cell_size = 30.0;
  GeoPoint southwest{37.80, -120.00};
  LayerSpec elevation{};
  int fuel_id = 1;
  LayerSpec canopy_cover{};
  LayerSpec canopy_height{};
  LayerSpec canopy_base{};
  LayerSpec canopy_density{};
  std::uint64_t seed = 1;
};

/// Deterministic raster; slope and aspect are finite differences of the
/// elevation layer (central inside, one-sided at the edges).
LandscapeRaster synth_landscape(const SynthSpec& spec);

/// Recomputes slope/aspect layers from elevation in place.
void derive_terrain(LandscapeRaster& raster);

/// Acres per cell for a given cell edge length in meters.
double cell_acreage(double cell_size);
inline double cell_acreage(const LandscapeRaster& raster) { return cell_acreage(raster.cell_size()); }

}  // namespace wildrisk
