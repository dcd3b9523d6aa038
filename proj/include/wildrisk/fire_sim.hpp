#pragma once

#include "wildrisk/geo.hpp"
#include "wildrisk/landscape.hpp"
#include "wildrisk/weather.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace wildrisk {

struct SpreadParams {
  int neighborhood = 16;        // 8 (queen moves) or 16 (queen + knight moves)
  double humidity_ref = 30.0;   // percent
  double min_ros = 0.01;        // m/min; slower edges are impassable
  double max_eccentricity = 0.95;

  void validate() const;
  friend bool operator==(const SpreadParams&, const SpreadParams&) = default;
};

struct IgnitionSpec {
  int line_id = 0;
  int ignition_index = 1;  // 1..I
  int season_index = 1;    // 1..S
  GridIndex cell;
  Instant start{};
  double duration_hours = 24.0;

  friend bool operator==(const IgnitionSpec&, const IgnitionSpec&) = default;
};

struct BurnRaster {
  GridGeometry grid;
  Layer<std::uint8_t> status;  // S: 1 burned, 0 not
  Layer<double> arrival;       // minutes since ignition, +inf when unburned
  bool ignition_not_burnable = false;

  std::size_t burned_count() const;
  bool burned(GridIndex g) const { return status(g.row, g.col) != 0; }

  friend bool operator==(const BurnRaster& l, const BurnRaster& r);
};

// Rate-of-spread factors. directional_ros is their product, evaluated as
// ((base_ros * moisture) * slope) * wind.

double moisture_factor(const FuelModel& fuel, double rel_humidity, const SpreadParams& params);

/// 1 + 0.3 tan(slope) max(0, cos(travel - upslope)), upslope = aspect + 180.
double slope_factor(double slope_deg, double aspect_deg, double travel_dir_deg);

struct WindEllipse {
  double head = 1.0;          // H = 1 + k_w * speed^b
  double eccentricity = 0.0;  // min(max_ecc, sqrt(1 - 1/H^2))
};
WindEllipse wind_ellipse(const FuelModel& fuel, double wind_speed, const SpreadParams& params);

/// H (1 - e) / (1 - e cos(travel - wind_to)).
double wind_factor(const WindEllipse& ellipse, double wind_to_deg, double travel_dir_deg);

/// Spread rate (m/min) in compass direction travel_dir_deg. Zero for
/// non-burnable fuel.
double directional_ros(const FuelModel& fuel, double slope_deg, double aspect_deg,
                       const WeatherSample& weather, double travel_dir_deg,
                       const SpreadParams& params = {});

/// One lattice edge from a cell to (row + drow, col + dcol).
struct LatticeMove {
  int drow = 0;
  int dcol = 0;
  double length_cells = 1.0;
  double bearing_deg = 0.0;  // compass, clockwise from north
};

/// 8 queen moves, plus the 8 knight moves for the 16-neighborhood.
std::span<const LatticeMove> lattice_moves(int neighborhood);

/// Traversal time (minutes) of an edge of `distance_m` whose endpoints spread
/// at ros_from and ros_to: half the distance at each speed.
inline double edge_minutes(double distance_m, double ros_from, double ros_to) {
  return 0.5 * distance_m * (1.0 / ros_from + 1.0 / ros_to);
}

/// Minimum-travel-time spread over a fixed landscape. The constructor
/// precomputes the per-cell slope factors, so one instance can serve a whole
/// batch; simulate() is const and safe to call concurrently.
///
/// Edges between cells: an edge is impassable when either endpoint spreads
/// slower than min_ros, when a diagonal move squeezes between two
/// non-burnable cells, or when a knight move passes beside a non-burnable
/// cell. Weather is constant within each hour; every hour a label-setting
/// expansion runs from the cells already burned, freezing arrivals inside that
/// hour. Labels re-seeded at an hour boundary never precede it.
class SpreadSimulator {
 public:
  SpreadSimulator(const LandscapeRaster& land, const FuelCatalog& catalog, SpreadParams params = {});

  BurnRaster simulate(const IgnitionSpec& ignition, const WeatherSeries& weather) const;

  const SpreadParams& params() const { return params_; }
  const GridGeometry& grid() const { return grid_; }

 private:
  GridGeometry grid_;
  SpreadParams params_;
  std::span<const LatticeMove> moves_;
  std::vector<FuelModel> fuels_;        // dense fuel table
  std::vector<std::uint16_t> fuel_of_;  // cell -> index into fuels_
  std::vector<std::uint8_t> burnable_;  // per cell
  std::vector<double> slope_factor_;    // cell * nmoves + move
  std::vector<std::uint8_t> blocked_;   // cell * nmoves + move, lattice blockage
};

/// Convenience wrapper building a one-off SpreadSimulator.
BurnRaster simulate_spread(const IgnitionSpec& ignition, const LandscapeRaster& land,
                           const FuelCatalog& catalog, const WeatherSeries& weather,
                           const SpreadParams& params = {});

double burned_area_acres(const BurnRaster& burn, double acres_per_cell);

/// Arrival minutes as an ESRI ASCII grid, NODATA for unburned cells.
void write_arrival_grid(const BurnRaster& burn, const RasterFrame& frame, const std::filesystem::path& path);

}  // namespace wildrisk
