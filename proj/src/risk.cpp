#include "wildrisk/risk.hpp"

#include "wildrisk/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wildrisk {

void CostParams::validate() const {
  if (!(cbe > 0.0) || !std::isfinite(cbe)) fail(ErrorKind::kInvalidInput, "cbe must be positive");
  if (!(cbl > 0.0) || !std::isfinite(cbl)) fail(ErrorKind::kInvalidInput, "cbl must be positive");
}

LineCorridors::LineCorridors(const GridNetwork& network, const RasterFrame& frame) : grid_(frame.grid()) {
  for (const Branch* b : ignitable_lines(network)) cells_.emplace(b->id, line_cells(*b, frame));
}

const std::vector<GridIndex>& LineCorridors::cells(int line_id) const {
  const auto it = cells_.find(line_id);
  if (it == cells_.end()) fail(ErrorKind::kTopology, "no corridor for line " + std::to_string(line_id));
  return it->second;
}

std::vector<int> affected_lines(const BurnRaster& burn, const LineCorridors& corridors, int buffer_cells) {
  if (buffer_cells < 0) fail(ErrorKind::kInvalidInput, "buffer_cells must be >= 0");
  if (!(burn.grid == corridors.grid())) fail(ErrorKind::kInvalidInput, "burn raster and corridors use different grids");
  std::vector<int> out;
  if (burn.burned_count() == 0) return out;
  const GridGeometry& g = burn.grid;
  for (const auto& [id, cells] : corridors.all()) {
    bool hit = false;
    for (const GridIndex& c : cells) {
      const int r0 = std::max(0, c.row - buffer_cells);
      const int r1 = std::min(g.nrows - 1, c.row + buffer_cells);
      const int c0 = std::max(0, c.col - buffer_cells);
      const int c1 = std::min(g.ncols - 1, c.col + buffer_cells);
      if ((burn.status.block(r0, c0, r1 - r0 + 1, c1 - c0 + 1) != 0).any()) {
        hit = true;
        break;
      }
    }
    if (hit) out.push_back(id);
  }
  return out;
}

double lbe(std::span<const double> burned_acres, const CostParams& costs) {
  if (burned_acres.empty()) fail(ErrorKind::kInvalidInput, "LBE needs at least one ignition");
  double total = 0.0;
  for (double a : burned_acres) total += a * costs.cbe;
  return total / static_cast<double>(burned_acres.size());
}

double lbl_from_miles(std::span<const double> miles, const CostParams& costs) {
  if (miles.empty()) fail(ErrorKind::kInvalidInput, "LBL needs at least one ignition");
  double total = 0.0;
  for (double m : miles) total += m * costs.cbl;
  return total / static_cast<double>(miles.size());
}

double affected_miles(std::span<const int> line_ids, const GridNetwork& network) {
  double miles = 0.0;
  for (int id : line_ids) {
    const Branch& b = network.branch(id);
    if (!b.is_line()) fail(ErrorKind::kTopology, "branch " + std::to_string(id) + " is a link, not a line");
    miles += b.length_miles;
  }
  return miles;
}

double lbl(std::span<const std::vector<int>> affected, const GridNetwork& network, const CostParams& costs) {
  if (affected.empty()) fail(ErrorKind::kInvalidInput, "LBL needs at least one ignition");
  double total = 0.0;
  for (const std::vector<int>& set : affected) {
    for (int id : set) {
      const Branch& b = network.branch(id);
      if (!b.is_line()) fail(ErrorKind::kTopology, "branch " + std::to_string(id) + " is a link, not a line");
      total += b.length_miles * costs.cbl;
    }
  }
  return total / static_cast<double>(affected.size());
}

std::map<int, double> risk_metric(const std::map<int, double>& wfl_by_line) {
  if (wfl_by_line.empty()) fail(ErrorKind::kInvalidInput, "risk metric needs at least one line");
  double worst = 0.0;
  for (const auto& [id, w] : wfl_by_line) {
    if (!(w >= 0.0) || !std::isfinite(w)) fail(ErrorKind::kInvalidInput, "WFL of line " + std::to_string(id) + " is negative or not finite");
    worst = std::max(worst, w);
  }
  if (worst <= 0.0) fail(ErrorKind::kDegenerateNormalization, "every line has zero wildfire loss");
  std::map<int, double> out;
  for (const auto& [id, w] : wfl_by_line) out[id] = w / worst;
  return out;
}

double seasonal_average(std::span<const double> values) {
  if (values.empty()) fail(ErrorKind::kInvalidInput, "seasonal average of no values");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

std::vector<LineRisk> rank_lines(std::vector<LineRisk> lines) {
  std::map<int, double> w;
  for (LineRisk& l : lines) {
    l.wfl = wfl(l.lbe, l.lbl);
    w[l.line_id] = l.wfl;
  }
  const std::map<int, double> m = risk_metric(w);
  for (LineRisk& l : lines) l.metric = m.at(l.line_id);
  std::sort(lines.begin(), lines.end(), [](const LineRisk& a, const LineRisk& b) {
    if (a.metric != b.metric) return a.metric > b.metric;
    return a.line_id < b.line_id;
  });
  for (std::size_t i = 0; i < lines.size(); ++i) lines[i].rank = static_cast<int>(i) + 1;
  return lines;
}

}  // namespace wildrisk
