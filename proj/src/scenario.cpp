#include "wildrisk/scenario.hpp"

#include "wildrisk/error.hpp"
#include "wildrisk/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <thread>

namespace wildrisk {

void StudyConfig::validate() const {
  if (ignitions_per_line < 1) fail(ErrorKind::kInvalidInput, "ignitions_per_line must be >= 1");
  if (seasons.empty()) fail(ErrorKind::kInvalidInput, "at least one season start is required");
  if (!(duration_hours > 0.0) || !std::isfinite(duration_hours)) fail(ErrorKind::kInvalidInput, "duration must be positive");
  if (buffer_cells < 0) fail(ErrorKind::kInvalidInput, "buffer_cells must be >= 0");
  spread.validate();
  costs.validate();
}

PlanarPoint point_along(std::span<const PlanarPoint> pts, double fraction) {
  if (pts.empty()) fail(ErrorKind::kInvalidInput, "empty polyline");
  fraction = std::clamp(fraction, 0.0, 1.0);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) total += (pts[i + 1] - pts[i]).norm();
  double remaining = fraction * total;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double seg = (pts[i + 1] - pts[i]).norm();
    if (remaining <= seg && seg > 0.0) return pts[i] + (pts[i + 1] - pts[i]) * (remaining / seg);
    remaining -= seg;
  }
  return pts.back();
}

std::vector<GridIndex> place_ignitions(const Branch& line, const RasterFrame& frame, int count, Placement placement,
                                       std::uint64_t seed) {
  if (!line.is_line()) fail(ErrorKind::kInvalidInput, "branch " + std::to_string(line.id) + " is a link");
  if (count < 1) fail(ErrorKind::kInvalidInput, "ignition count must be >= 1");
  const std::vector<PlanarPoint> route = planar_route(line, frame);
  for (const PlanarPoint& p : route) {
    if (!frame.grid().contains(p)) {
      fail(ErrorKind::kOutOfBounds, "line " + std::to_string(line.id) + " route leaves the raster");
    }
  }

  std::vector<double> fractions;
  if (placement == Placement::kEven) {
    for (int k = 1; k <= count; ++k) fractions.push_back(static_cast<double>(k) / (count + 1));
  } else {
    SplitMix64 rng(mix_seed(seed, static_cast<std::uint64_t>(line.id)));
    std::set<double> seen;
    while (static_cast<int>(fractions.size()) < count) {
      const double f = rng.uniform();
      if (seen.insert(f).second) fractions.push_back(f);
    }
  }
  std::vector<GridIndex> cells;
  for (double f : fractions) cells.push_back(frame.grid().cell_of(point_along(route, f)));
  return cells;
}

std::vector<IgnitionSpec> build_matrix(const GridNetwork& network, const RasterFrame& frame, const StudyConfig& cfg) {
  cfg.validate();
  std::set<int> wanted(cfg.lines.begin(), cfg.lines.end());
  for (int id : wanted) {
    if (!network.has_branch(id) || !network.branch(id).is_line()) {
      fail(ErrorKind::kTopology, "study line " + std::to_string(id) + " is not a line of the network");
    }
  }
  std::vector<IgnitionSpec> specs;
  for (const Branch* line : ignitable_lines(network)) {
    if (!wanted.empty() && !wanted.contains(line->id)) continue;
    const std::vector<GridIndex> cells = place_ignitions(*line, frame, cfg.ignitions_per_line, cfg.placement, cfg.seed);
    for (std::size_t s = 0; s < cfg.seasons.size(); ++s) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        specs.push_back({line->id, static_cast<int>(i) + 1, static_cast<int>(s) + 1, cells[i], cfg.seasons[s],
                         cfg.duration_hours});
      }
    }
  }
  return specs;
}

BatchResult run_batch(std::span<const IgnitionSpec> specs, const StudyInputs& in, const StudyConfig& cfg, int workers) {
  cfg.validate();
  BatchResult out;
  out.results.resize(specs.size());
  if (specs.empty()) return out;

  // Global validation before any simulation.
  const SpreadSimulator sim(in.land, in.catalog, cfg.spread);
  const LineCorridors corridors(in.network, in.land.frame);
  for (const IgnitionSpec& s : specs) {
    in.weather.require_coverage(s.start, std::chrono::seconds{static_cast<long long>(std::ceil(s.duration_hours * 3600.0))});
    if (!in.land.grid().contains(s.cell)) {
      fail(ErrorKind::kOutOfBounds, "ignition cell of line " + std::to_string(s.line_id) + " outside raster");
    }
  }
  const double alpha = cell_acreage(in.land);

  std::vector<std::string> warning(specs.size());
  auto run_one = [&](std::size_t i) {
    const IgnitionSpec& s = specs[i];
    ScenarioResult& r = out.results[i];
    r.line_id = s.line_id;
    r.ignition_index = s.ignition_index;
    r.season_index = s.season_index;
    const std::string tag = "line " + std::to_string(s.line_id) + " season " + std::to_string(s.season_index) +
                            " ignition " + std::to_string(s.ignition_index) + ": ";
    try {
      const BurnRaster burn = sim.simulate(s, in.weather);
      if (burn.ignition_not_burnable) warning[i] = tag + "ignition cell is not burnable; zero damage";
      r.burned_cells = burn.burned_count();
      r.burned_acres = static_cast<double>(r.burned_cells) * alpha;
      r.affected_line_ids = affected_lines(burn, corridors, cfg.buffer_cells);
      r.affected_miles = affected_miles(r.affected_line_ids, in.network);
    } catch (const std::exception& e) {
      r = ScenarioResult{s.line_id, s.ignition_index, s.season_index, 0, 0.0, {}, 0.0};
      warning[i] = tag + e.what();
    }
  };

  const std::size_t nthreads = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), 1, specs.size());
  if (nthreads == 1) {
    for (std::size_t i = 0; i < specs.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nthreads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < specs.size(); i = next++) run_one(i);
      });
    }
    for (std::thread& th : pool) th.join();
  }
  for (std::string& w : warning) {
    if (!w.empty()) out.warnings.push_back(std::move(w));
  }
  return out;
}

}  // namespace wildrisk
