#include "wildrisk/fire_sim.hpp"

#include "text_util.hpp"
#include "wildrisk/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

namespace wildrisk {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr LatticeMove make_move(int dr, int dc) { return {dr, dc, 0.0, 0.0}; }

std::array<LatticeMove, 16> build_moves() {
  std::array<LatticeMove, 16> m{
      make_move(1, 0), make_move(1, 1), make_move(0, 1), make_move(-1, 1),
      make_move(-1, 0), make_move(-1, -1), make_move(0, -1), make_move(1, -1),
      make_move(2, 1), make_move(1, 2), make_move(-1, 2), make_move(-2, 1),
      make_move(-2, -1), make_move(-1, -2), make_move(1, -2), make_move(2, -1),
  };
  for (LatticeMove& mv : m) {
    mv.length_cells = std::sqrt(static_cast<double>(mv.drow * mv.drow + mv.dcol * mv.dcol));
    double b = std::atan2(static_cast<double>(mv.dcol), static_cast<double>(mv.drow)) / kDegToRad;
    if (b < 0.0) b += 360.0;
    mv.bearing_deg = b;
  }
  return m;
}

const std::array<LatticeMove, 16>& all_moves() {
  static const std::array<LatticeMove, 16> moves = build_moves();
  return moves;
}

}  // namespace

void SpreadParams::validate() const {
  if (neighborhood != 8 && neighborhood != 16) fail(ErrorKind::kInvalidInput, "neighborhood must be 8 or 16");
  if (!(humidity_ref > 0.0)) fail(ErrorKind::kInvalidInput, "humidity_ref must be positive");
  if (!(min_ros > 0.0)) fail(ErrorKind::kInvalidInput, "min_ros must be positive");
  if (!(max_eccentricity >= 0.0 && max_eccentricity < 1.0)) {
    fail(ErrorKind::kInvalidInput, "max_eccentricity must be in [0, 1)");
  }
}

std::size_t BurnRaster::burned_count() const {
  return static_cast<std::size_t>((status != 0).count());
}

bool operator==(const BurnRaster& l, const BurnRaster& r) {
  return l.grid == r.grid && l.ignition_not_burnable == r.ignition_not_burnable &&
         (l.status == r.status).all() && (l.arrival == r.arrival).all();
}

double moisture_factor(const FuelModel& fuel, double rel_humidity, const SpreadParams& params) {
  const double f = std::pow(params.humidity_ref / std::max(rel_humidity, 1.0), fuel.moisture_exp);
  return std::clamp(f, 0.1, 3.0);
}

double slope_factor(double slope_deg, double aspect_deg, double travel_dir_deg) {
  const double upslope = aspect_deg + 180.0;
  const double align = std::cos((travel_dir_deg - upslope) * kDegToRad);
  return 1.0 + 0.3 * std::tan(slope_deg * kDegToRad) * std::max(0.0, align);
}

WindEllipse wind_ellipse(const FuelModel& fuel, double wind_speed, const SpreadParams& params) {
  WindEllipse e;
  e.head = 1.0 + fuel.wind_coeff * std::pow(wind_speed, fuel.wind_exp);
  e.eccentricity = std::min(params.max_eccentricity, std::sqrt(1.0 - 1.0 / (e.head * e.head)));
  return e;
}

double wind_factor(const WindEllipse& e, double wind_to_deg, double travel_dir_deg) {
  return e.head * (1.0 - e.eccentricity) /
         (1.0 - e.eccentricity * std::cos((travel_dir_deg - wind_to_deg) * kDegToRad));
}

double directional_ros(const FuelModel& fuel, double slope_deg, double aspect_deg, const WeatherSample& w,
                       double travel_dir_deg, const SpreadParams& params) {
  if (!fuel.burnable) return 0.0;
  const double m = moisture_factor(fuel, w.rel_humidity, params);
  const double s = slope_factor(slope_deg, aspect_deg, travel_dir_deg);
  const double e = wind_factor(wind_ellipse(fuel, w.wind_speed, params), w.wind_dir_from + 180.0, travel_dir_deg);
  return fuel.base_ros * m * s * e;
}

std::span<const LatticeMove> lattice_moves(int neighborhood) {
  if (neighborhood != 8 && neighborhood != 16) fail(ErrorKind::kInvalidInput, "neighborhood must be 8 or 16");
  return std::span<const LatticeMove>(all_moves().data(), static_cast<std::size_t>(neighborhood));
}

SpreadSimulator::SpreadSimulator(const LandscapeRaster& land, const FuelCatalog& catalog, SpreadParams params)
    : grid_(land.grid()), params_(params) {
  params_.validate();
  validate(land, catalog);
  moves_ = lattice_moves(params_.neighborhood);

  std::map<int, std::uint16_t> dense;
  for (const auto& [id, model] : catalog.models()) {
    dense[id] = static_cast<std::uint16_t>(fuels_.size());
    fuels_.push_back(model);
  }

  const std::size_t n = grid_.size();
  const std::size_t nm = moves_.size();
  fuel_of_.resize(n);
  burnable_.resize(n);
  slope_factor_.resize(n * nm);
  blocked_.assign(n * nm, 0);
  for (int r = 0; r < grid_.nrows; ++r) {
    for (int c = 0; c < grid_.ncols; ++c) {
      const std::size_t i = grid_.linear({r, c});
      fuel_of_[i] = dense.at(land.fuel(r, c));
      burnable_[i] = fuels_[fuel_of_[i]].burnable ? 1 : 0;
      for (std::size_t k = 0; k < nm; ++k) {
        slope_factor_[i * nm + k] = slope_factor(land.slope(r, c), land.aspect(r, c), moves_[k].bearing_deg);
      }
    }
  }

  auto burnable_at = [&](int r, int c) {
    return grid_.contains(GridIndex{r, c}) && burnable_[grid_.linear({r, c})] != 0;
  };
  for (int r = 0; r < grid_.nrows; ++r) {
    for (int c = 0; c < grid_.ncols; ++c) {
      const std::size_t i = grid_.linear({r, c});
      for (std::size_t k = 0; k < nm; ++k) {
        const LatticeMove& mv = moves_[k];
        bool blocked = false;
        if (std::abs(mv.drow) == 1 && std::abs(mv.dcol) == 1) {
          blocked = !burnable_at(r + mv.drow, c) && !burnable_at(r, c + mv.dcol);
        } else if (std::abs(mv.drow) == 2) {
          const int mid = r + mv.drow / 2;
          blocked = !burnable_at(mid, c) || !burnable_at(mid, c + mv.dcol);
        } else if (std::abs(mv.dcol) == 2) {
          const int mid = c + mv.dcol / 2;
          blocked = !burnable_at(r, mid) || !burnable_at(r + mv.drow, mid);
        }
        blocked_[i * nm + k] = blocked ? 1 : 0;
      }
    }
  }
}

BurnRaster SpreadSimulator::simulate(const IgnitionSpec& ig, const WeatherSeries& weather) const {
  using namespace std::chrono;
  if (!(ig.duration_hours > 0.0) || !std::isfinite(ig.duration_hours)) {
    fail(ErrorKind::kInvalidInput, "ignition duration must be positive");
  }
  if (!grid_.contains(ig.cell)) {
    fail(ErrorKind::kOutOfBounds, "ignition cell (" + std::to_string(ig.cell.row) + ", " +
                                      std::to_string(ig.cell.col) + ") outside raster");
  }
  const auto span = seconds{static_cast<long long>(std::ceil(ig.duration_hours * 3600.0))};
  weather.require_coverage(ig.start, span);

  BurnRaster out;
  out.grid = grid_;
  out.status.setZero(grid_.nrows, grid_.ncols);
  out.arrival.setConstant(grid_.nrows, grid_.ncols, kInf);

  const std::size_t origin = grid_.linear(ig.cell);
  if (!burnable_[origin]) {
    out.ignition_not_burnable = true;
    return out;
  }

  const std::size_t n = grid_.size();
  const std::size_t nm = moves_.size();
  const double total = ig.duration_hours * 60.0;
  const double cell = grid_.cell_size;

  std::vector<double> arrival(n, kInf);
  std::vector<double> label(n, kInf);
  std::vector<std::uint8_t> frozen(n, 0);
  std::vector<std::size_t> touched;
  std::vector<std::size_t> front{origin};
  arrival[origin] = 0.0;
  frozen[origin] = 1;

  // Per-epoch rate tables: base * moisture per fuel, wind factor per fuel/move.
  std::vector<double> fuel_scale(fuels_.size());
  std::vector<double> wind(fuels_.size() * nm);

  auto ros = [&](std::size_t cell_idx, std::size_t k) {
    if (!burnable_[cell_idx]) return 0.0;
    const std::size_t f = fuel_of_[cell_idx];
    return fuel_scale[f] * slope_factor_[cell_idx * nm + k] * wind[f * nm + k];
  };

  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;

  auto neighbor = [&](std::size_t idx, const LatticeMove& mv, std::size_t& out_idx) {
    const int r = static_cast<int>(idx / grid_.ncols) + mv.drow;
    const int c = static_cast<int>(idx % grid_.ncols) + mv.dcol;
    if (r < 0 || c < 0 || r >= grid_.nrows || c >= grid_.ncols) return false;
    out_idx = static_cast<std::size_t>(r) * grid_.ncols + c;
    return true;
  };

  // Relaxes every passable edge out of frozen cell u; labels never precede floor_time.
  auto relax_from = [&](std::size_t u, double floor_time) {
    for (std::size_t k = 0; k < nm; ++k) {
      if (blocked_[u * nm + k]) continue;
      std::size_t v = 0;
      if (!neighbor(u, moves_[k], v) || frozen[v]) continue;
      const double ra = ros(u, k);
      const double rb = ros(v, k);
      if (ra < params_.min_ros || rb < params_.min_ros) continue;
      const double t = std::max(arrival[u] + edge_minutes(moves_[k].length_cells * cell, ra, rb), floor_time);
      if (t < label[v]) {
        if (label[v] == kInf) touched.push_back(v);
        label[v] = t;
        heap.emplace(t, v);
      }
    }
  };

  const Instant first = weather.first();
  const auto base_hour = floor<hours>(ig.start - first);
  for (long long j = 0;; ++j) {
    const Instant epoch_end_time = first + base_hour + hours{j + 1};
    const double epoch_start = j == 0 ? 0.0 : duration<double, std::ratio<60>>(first + base_hour + hours{j} - ig.start).count();
    const double next = duration<double, std::ratio<60>>(epoch_end_time - ig.start).count();
    const bool last = next >= total;
    const double stop = last ? total : next;

    const WeatherSample& w = weather[static_cast<std::size_t>((base_hour + hours{j}).count())];
    for (std::size_t f = 0; f < fuels_.size(); ++f) {
      const FuelModel& fm = fuels_[f];
      fuel_scale[f] = fm.base_ros * moisture_factor(fm, w.rel_humidity, params_);
      const WindEllipse e = wind_ellipse(fm, w.wind_speed, params_);
      for (std::size_t k = 0; k < nm; ++k) {
        wind[f * nm + k] = wind_factor(e, w.wind_dir_from + 180.0, moves_[k].bearing_deg);
      }
    }

    for (std::size_t v : touched) label[v] = kInf;
    touched.clear();
    heap = {};

    // Keep only frozen cells that still border unburned ones.
    std::size_t keep = 0;
    for (std::size_t u : front) {
      bool open = false;
      for (std::size_t k = 0; k < nm && !open; ++k) {
        std::size_t v = 0;
        open = neighbor(u, moves_[k], v) && !frozen[v];
      }
      if (open) front[keep++] = u;
    }
    front.resize(keep);
    for (std::size_t u : front) relax_from(u, epoch_start);

    while (!heap.empty()) {
      const auto [t, v] = heap.top();
      if (frozen[v] || t != label[v]) {
        heap.pop();
        continue;
      }
      if (last ? t > stop : t >= stop) break;
      heap.pop();
      frozen[v] = 1;
      arrival[v] = t;
      front.push_back(v);
      relax_from(v, epoch_start);
    }
    if (last || front.empty()) break;
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (frozen[i] && arrival[i] <= total) {
      out.status.data()[i] = 1;
      out.arrival.data()[i] = arrival[i];
    }
  }
  return out;
}

BurnRaster simulate_spread(const IgnitionSpec& ignition, const LandscapeRaster& land, const FuelCatalog& catalog,
                           const WeatherSeries& weather, const SpreadParams& params) {
  return SpreadSimulator(land, catalog, params).simulate(ignition, weather);
}

double burned_area_acres(const BurnRaster& burn, double acres_per_cell) {
  return static_cast<double>(burn.burned_count()) * acres_per_cell;
}

void write_arrival_grid(const BurnRaster& burn, const RasterFrame& frame, const std::filesystem::path& path) {
  const GridGeometry& g = burn.grid;
  std::string out;
  out += "ncols " + std::to_string(g.ncols) + "\n";
  out += "nrows " + std::to_string(g.nrows) + "\n";
  out += "xllcorner " + detail::format_double(frame.southwest().lon) + "\n";
  out += "yllcorner " + detail::format_double(frame.southwest().lat) + "\n";
  out += "cellsize " + detail::format_double(g.cell_size) + "\n";
  out += "NODATA_value -9999\n";
  for (int r = g.nrows - 1; r >= 0; --r) {
    for (int c = 0; c < g.ncols; ++c) {
      if (c) out += ' ';
      out += burn.status(r, c) ? detail::format_fixed(burn.arrival(r, c), 3) : std::string("-9999");
    }
    out += '\n';
  }
  detail::write_file(path, out);
}

}  // namespace wildrisk
