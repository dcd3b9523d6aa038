#pragma once

#include "wildrisk/fire_sim.hpp"
#include "wildrisk/grid_network.hpp"
#include "wildrisk/landscape.hpp"
#include "wildrisk/risk.hpp"
#include "wildrisk/weather.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace wildrisk {

enum class Placement { kEven, kSeededRandom };

struct StudyConfig {
  int ignitions_per_line = 3;
  std::vector<Instant> seasons = season_starts(2022, 12);
  double duration_hours = 24.0;
  Placement placement = Placement::kEven;
  std::uint64_t seed = 42;
  SpreadParams spread{};
  CostParams costs{};
  int buffer_cells = 0;
  std::vector<int> lines;  // restricts the study to these line ids; empty means all

  void validate() const;
};

/// Point at `fraction` of the polyline's arc length.
PlanarPoint point_along(std::span<const PlanarPoint> polyline, double fraction);

/// Ignition cells on a line. Even placement uses arc-length fractions
/// k/(count+1); seeded-random draws `count` distinct fractions from a stream
/// keyed by (seed, line id). Cells that coincide after snapping are kept.
std::vector<GridIndex> place_ignitions(const Branch& line, const RasterFrame& frame, int count,
                                       Placement placement, std::uint64_t seed);

/// One spec per (line, season, ignition), in that order.
std::vector<IgnitionSpec> build_matrix(const GridNetwork& network, const RasterFrame& frame, const StudyConfig& cfg);

struct ScenarioResult {
  int line_id = 0;
  int ignition_index = 0;
  int season_index = 0;
  std::size_t burned_cells = 0;
  double burned_acres = 0.0;
  std::vector<int> affected_line_ids;  // ascending
  double affected_miles = 0.0;

  friend bool operator==(const ScenarioResult&, const ScenarioResult&) = default;
};

struct BatchResult {
  std::vector<ScenarioResult> results;  // same order as the specs
  std::vector<std::string> warnings;    // in spec order
};

struct StudyInputs {
  const LandscapeRaster& land;
  const FuelCatalog& catalog;
  const WeatherSeries& weather;
  const GridNetwork& network;
};

/// Simulates every spec and matches burns against line corridors. Global
/// input problems (weather coverage, raster extent) throw before any
/// simulation; a failing scenario yields a zeroed result and a warning.
/// Output is independent of `workers`.
BatchResult run_batch(std::span<const IgnitionSpec> specs, const StudyInputs& inputs, const StudyConfig& cfg,
                      int workers = 1);

}  // namespace wildrisk
