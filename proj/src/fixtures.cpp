#include "wildrisk/fixtures.hpp"

#include "wildrisk/rng.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace wildrisk {

namespace {

struct RefRow {
  int id;
  std::array<double, 4> seasons;
  double avg;
};

constexpr std::array<RefRow, 34> kAcres{{
    {1, {80.7, 1267.0, 3879.4, 2163.9}, 1847.8},   {2, {106.8, 1497.2, 4211.6, 2360.9}, 2044.1},
    {3, {78.3, 710.0, 2299.2, 1192.3}, 1069.9},    {4, {163.7, 1375.0, 3460.6, 2206.6}, 1801.5},
    {5, {281.2, 1872.1, 4637.5, 2382.8}, 2293.4},  {6, {322.1, 3285.0, 8230.4, 5107.3}, 4236.2},
    {7, {346.4, 1918.3, 5392.0, 3315.9}, 2743.2},  {8, {1047.6, 2440.3, 6045.7, 4371.7}, 3476.3},
    {9, {656.1, 1837.7, 4969.7, 3620.8}, 2771.0},  {10, {546.3, 2114.1, 6226.6, 4347.4}, 3308.6},
    {17, {61.7, 1066.5, 3293.3, 1800.9}, 1555.6},  {18, {104.4, 1575.5, 3910.2, 2531.7}, 2030.5},
    {19, {295.4, 1195.8, 3119.5, 2153.2}, 1691.0}, {20, {80.7, 873.2, 2680.0, 1586.2}, 1305.0},
    {21, {688.7, 1991.3, 4354.5, 3217.4}, 2563.0}, {22, {201.7, 1265.8, 2872.2, 2057.1}, 1599.2},
    {23, {98.5, 321.5, 1111.6, 726.1}, 564.4},     {24, {816.2, 2926.7, 7117.0, 5164.2}, 4006.0},
    {25, {264.6, 471.0, 1440.2, 952.6}, 782.1},    {26, {277.6, 857.7, 3503.3, 2095.1}, 1683.4},
    {27, {880.3, 1216.0, 2798.6, 1719.0}, 1653.5}, {28, {665.5, 701.1, 2195.9, 1389.8}, 1238.1},
    {29, {708.3, 498.3, 843.5, 589.0}, 659.8},     {30, {237.3, 746.2, 1767.7, 1398.7}, 1037.5},
    {31, {119.8, 1053.5, 3097.6, 2159.2}, 1607.5}, {32, {944.9, 1352.4, 4094.7, 2817.0}, 2302.3},
    {33, {1987.1, 1715.5, 2672.9, 1933.8}, 2077.3}, {34, {1492.4, 1245.7, 1479.4, 716.6}, 1233.5},
    {35, {2636.1, 1842.4, 1564.8, 1016.7}, 1765.0}, {37, {2392.9, 1641.9, 1388.0, 805.5}, 1557.1},
    {38, {2341.9, 1510.8, 1332.9, 788.3}, 1493.5}, {39, {614.5, 333.4, 469.8, 304.9}, 430.6},
    {40, {832.8, 1110.4, 3584.0, 2056.0}, 1895.8}, {41, {997.7, 1150.8, 2369.2, 1354.8}, 1468.1},
}};

constexpr std::array<RefRow, 34> kMiles{{
    {1, {81.77, 81.77, 81.77, 81.77}, 81.77},      {2, {88.47, 88.47, 98.23, 88.47}, 90.91},
    {3, {259.90, 259.90, 259.90, 259.90}, 259.90}, {4, {19.80, 58.33, 93.97, 93.97}, 66.52},
    {5, {171.50, 171.50, 225.75, 225.75}, 198.63}, {6, {184.20, 225.75, 225.75, 225.75}, 215.36},
    {7, {107.97, 107.97, 135.67, 107.97}, 114.89}, {8, {79.73, 79.73, 160.67, 93.47}, 103.40},
    {9, {100.90, 161.63, 161.63, 161.63}, 146.45}, {10, {103.40, 103.40, 194.50, 140.25}, 135.39},
    {17, {27.30, 36.80, 43.63, 43.63}, 37.84},     {18, {39.60, 39.60, 59.23, 39.60}, 44.51},
    {19, {24.65, 24.65, 24.65, 24.65}, 24.65},     {20, {34.03, 39.40, 52.43, 48.30}, 43.54},
    {21, {11.50, 17.70, 47.55, 24.05}, 25.20},     {22, {26.70, 26.70, 39.07, 26.70}, 29.79},
    {23, {5.47, 8.20, 8.20, 8.20}, 7.52},          {24, {8.63, 8.63, 19.97, 17.23}, 13.62},
    {25, {48.70, 48.70, 48.70, 48.70}, 48.70},     {26, {64.37, 64.37, 134.63, 134.63}, 99.50},
    {27, {53.80, 119.40, 119.90, 119.40}, 103.13}, {28, {43.85, 43.85, 142.25, 142.25}, 93.05},
    {29, {13.20, 13.20, 13.20, 13.20}, 13.20},     {30, {13.20, 13.20, 17.50, 17.50}, 15.35},
    {31, {8.73, 13.10, 13.10, 13.10}, 12.01},      {32, {28.40, 28.40, 34.95, 34.95}, 31.68},
    {33, {39.00, 43.37, 32.67, 32.67}, 36.93},     {34, {37.17, 37.17, 29.63, 29.63}, 33.40},
    {35, {95.27, 95.27, 95.27, 20.70}, 76.63},     {37, {140.53, 98.33, 97.10, 97.10}, 108.27},
    {38, {83.40, 83.40, 83.40, 83.40}, 83.40},     {39, {69.70, 69.70, 69.70, 69.70}, 69.70},
    {40, {133.37, 123.90, 123.90, 123.90}, 126.27}, {41, {109.57, 109.57, 100.10, 100.10}, 104.83},
}};

SeasonTable to_table(const std::array<RefRow, 34>& rows) {
  SeasonTable t;
  t.seasons = season_names(4);
  for (const RefRow& r : rows) t.rows.push_back({r.id, {r.seasons.begin(), r.seasons.end()}, r.avg});
  return t;
}

// Bus positions as fractions of the raster width/height.
constexpr std::array<std::array<double, 2>, 30> kBusXY{{
    {0.104, 0.885}, {0.234, 0.755}, {0.117, 0.677}, {0.260, 0.599}, {0.391, 0.859},
    {0.404, 0.651}, {0.482, 0.768}, {0.547, 0.573}, {0.391, 0.508}, {0.469, 0.404},
    {0.326, 0.469}, {0.234, 0.404}, {0.130, 0.443}, {0.117, 0.286}, {0.247, 0.247},
    {0.339, 0.326}, {0.443, 0.286}, {0.313, 0.143}, {0.404, 0.104}, {0.495, 0.182},
    {0.599, 0.339}, {0.638, 0.273}, {0.521, 0.065}, {0.677, 0.143}, {0.781, 0.234},
    {0.911, 0.156}, {0.794, 0.417}, {0.729, 0.625}, {0.898, 0.508}, {0.911, 0.339},
}};

struct BranchDef {
  int id;
  int from;
  int to;
};

constexpr std::array<BranchDef, 41> kBranches{{
    {1, 1, 2},    {2, 1, 3},    {3, 2, 4},    {4, 3, 4},    {5, 2, 5},    {6, 2, 6},    {7, 4, 6},
    {8, 5, 7},    {9, 6, 7},    {10, 6, 8},   {11, 6, 9},   {12, 6, 10},  {13, 9, 11},  {14, 9, 10},
    {15, 4, 12},  {16, 12, 13}, {17, 12, 14}, {18, 12, 15}, {19, 12, 16}, {20, 14, 15}, {21, 16, 17},
    {22, 15, 18}, {23, 18, 19}, {24, 19, 20}, {25, 10, 20}, {26, 10, 17}, {27, 10, 21}, {28, 10, 22},
    {29, 21, 22}, {30, 15, 23}, {31, 22, 24}, {32, 23, 24}, {33, 24, 25}, {34, 25, 26}, {35, 25, 27},
    {36, 28, 27}, {37, 27, 29}, {38, 27, 30}, {39, 29, 30}, {40, 8, 28},  {41, 6, 28},
}};

bool is_link(int id) { return (id >= 11 && id <= 16) || id == 36; }

}  // namespace

SeasonTable ieee30_reference_acres() { return to_table(kAcres); }
SeasonTable ieee30_reference_miles() { return to_table(kMiles); }

GridNetwork ieee30_network(const RasterFrame& frame) {
  const GridGeometry& g = frame.grid();
  auto planar = [&](int bus) {
    const auto& f = kBusXY[static_cast<std::size_t>(bus - 1)];
    return PlanarPoint(f[0] * g.width(), f[1] * g.height());
  };
  std::vector<Bus> buses;
  for (int id = 1; id <= 30; ++id) buses.push_back({id, frame.to_geo(planar(id))});

  std::vector<Branch> branches;
  for (const BranchDef& d : kBranches) {
    Branch b;
    b.id = d.id;
    b.from_bus = d.from;
    b.to_bus = d.to;
    if (is_link(d.id)) {
      b.kind = BranchKind::kLink;
    } else {
      b.kind = BranchKind::kLine;
      b.route.push_back(buses[static_cast<std::size_t>(d.from - 1)].location);
      if (d.id % 3 == 0) {
        const PlanarPoint a = planar(d.from);
        const PlanarPoint c = planar(d.to);
        const PlanarPoint dir = (c - a).normalized();
        const PlanarPoint mid = 0.5 * (a + c) + 0.04 * g.width() * PlanarPoint(-dir.y(), dir.x());
        b.route.push_back(frame.to_geo(mid));
      }
      b.route.push_back(buses[static_cast<std::size_t>(d.to - 1)].location);
    }
    branches.push_back(std::move(b));
  }
  return GridNetwork(std::move(buses), std::move(branches));
}

LandscapeRaster foothill_landscape(std::uint64_t seed, int cells, double cell_size) {
  SynthSpec spec;
  spec.ncols = cells;
  spec.nrows = cells;
  spec.cell_size = cell_size;
  spec.seed = seed;
  LandscapeRaster r = synth_landscape(spec);

  const double w = r.grid().width();
  const double h = r.grid().height();
  SplitMix64 rng(mix_seed(seed, 0xf007));
  for (int row = 0; row < r.nrows(); ++row) {
    for (int col = 0; col < r.ncols(); ++col) {
      const PlanarPoint p = r.grid().center({row, col});
      const double x = p.x() / w;
      const double y = p.y() / h;
      r.elevation(row, col) = 300.0 + 460.0 * x + 45.0 * std::sin(11.0 * x) * std::cos(9.0 * y) +
                              25.0 * std::sin(13.0 * (x + y)) + rng.uniform(-1.0, 1.0);
    }
  }
  derive_terrain(r);

  // Rock outcrops.
  struct Disk {
    double x, y, radius;
  };
  std::vector<Disk> outcrops;
  for (int k = 0; k < 4; ++k) {
    outcrops.push_back({rng.uniform(0.1, 0.9) * w, rng.uniform(0.1, 0.9) * h, rng.uniform(3.0, 6.0) * cell_size});
  }

  const double two_pi = 2.0 * std::numbers::pi;
  for (int row = 0; row < r.nrows(); ++row) {
    for (int col = 0; col < r.ncols(); ++col) {
      const PlanarPoint p = r.grid().center({row, col});
      const double z = r.elevation(row, col) + rng.uniform(-40.0, 40.0);
      int fuel = z < 420.0 ? 1 : (z < 600.0 ? 2 : 3);

      const double y = p.y() / h;
      const double river_x = (0.58 + 0.07 * std::sin(two_pi * y / 0.6)) * w;
      const bool ford = (y > 0.30 && y < 0.33) || (y > 0.76 && y < 0.79);
      if (std::abs(p.x() - river_x) < 1.1 * cell_size && !ford) fuel = 0;
      for (const Disk& d : outcrops) {
        if ((p - PlanarPoint(d.x, d.y)).norm() < d.radius) fuel = 0;
      }

      r.fuel(row, col) = fuel;
      switch (fuel) {
        case 2:
          r.canopy_cover(row, col) = 25.0, r.canopy_height(row, col) = 2.0;
          r.canopy_base(row, col) = 0.5, r.canopy_density(row, col) = 0.05;
          break;
        case 3:
          r.canopy_cover(row, col) = 60.0, r.canopy_height(row, col) = 22.0;
          r.canopy_base(row, col) = 4.0, r.canopy_density(row, col) = 0.12;
          break;
        default:
          r.canopy_cover(row, col) = 0.0, r.canopy_height(row, col) = 0.0;
          r.canopy_base(row, col) = 0.0, r.canopy_density(row, col) = 0.0;
      }
    }
  }
  return r;
}

}  // namespace wildrisk
