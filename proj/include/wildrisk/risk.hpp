#pragma once

#include "wildrisk/fire_sim.hpp"
#include "wildrisk/grid_network.hpp"

#include <map>
#include <span>
#include <vector>

namespace wildrisk {

struct CostParams {
  double cbe = 20000.0;   // dollars per burned acre
  double cbl = 200000.0;  // dollars per mile of line reconstruction

  void validate() const;
  friend bool operator==(const CostParams&, const CostParams&) = default;
};

/// Rasterized route of every line in a network, keyed by line id.
class LineCorridors {
 public:
  LineCorridors(const GridNetwork& network, const RasterFrame& frame);

  const std::map<int, std::vector<GridIndex>>& all() const { return cells_; }
  const std::vector<GridIndex>& cells(int line_id) const;
  const GridGeometry& grid() const { return grid_; }

 private:
  GridGeometry grid_;
  std::map<int, std::vector<GridIndex>> cells_;
};

/// Ids (ascending) of lines whose corridor, dilated by buffer_cells in the
/// Chebyshev metric, touches a burned cell.
std::vector<int> affected_lines(const BurnRaster& burn, const LineCorridors& corridors, int buffer_cells = 0);

/// Average burned-environment loss over the ignitions of one line.
double lbe(std::span<const double> burned_acres, const CostParams& costs);

/// Average reconstruction loss given the affected miles of each ignition.
double lbl_from_miles(std::span<const double> affected_miles, const CostParams& costs);

/// Average reconstruction loss; every affected line is charged its full length.
double lbl(std::span<const std::vector<int>> affected, const GridNetwork& network, const CostParams& costs);

/// Sum of full lengths of the given lines.
double affected_miles(std::span<const int> line_ids, const GridNetwork& network);

inline double wfl(double lbe_dollars, double lbl_dollars) { return lbe_dollars + lbl_dollars; }

/// WFL normalized by its maximum. Throws when every WFL is zero.
std::map<int, double> risk_metric(const std::map<int, double>& wfl_by_line);

double seasonal_average(std::span<const double> values);

struct LineRisk {
  int line_id = 0;
  double lbe = 0.0;
  double lbl = 0.0;
  double wfl = 0.0;
  double metric = 0.0;
  int rank = 0;
  std::vector<double> season_acres;  // mean over ignitions, per season
  std::vector<double> season_miles;
};

/// Fills wfl, metric and rank; returns the records sorted by metric
/// descending, then line id.
std::vector<LineRisk> rank_lines(std::vector<LineRisk> lines);

}  // namespace wildrisk
