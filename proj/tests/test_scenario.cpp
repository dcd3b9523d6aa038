#include "test_support.hpp"

#include "wildrisk/error.hpp"
#include "wildrisk/fixtures.hpp"
#include "wildrisk/scenario.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace wildrisk;
using namespace wildrisk::test;

namespace {

RasterFrame frame_of(int cells, double size) {
  return RasterFrame(GridGeometry{cells, cells, size}, GeoPoint{37.80, -120.00});
}

GridNetwork straight_line(const RasterFrame& frame, PlanarPoint a, PlanarPoint b, int id = 1) {
  const GeoPoint ga = frame.to_geo(a), gb = frame.to_geo(b);
  Branch l;
  l.id = id;
  l.from_bus = 1;
  l.to_bus = 2;
  l.route = {ga, gb};
  return GridNetwork({{1, ga}, {2, gb}}, {l});
}

int chebyshev(GridIndex a, GridIndex b) { return std::max(std::abs(a.row - b.row), std::abs(a.col - b.col)); }

}  // namespace

TEST_CASE("point_along") {
  const std::vector<PlanarPoint> pts{{0, 0}, {3, 0}, {3, 4}};
  CHECK((point_along(pts, 0.0) - PlanarPoint(0, 0)).norm() < 1e-12);
  CHECK((point_along(pts, 3.0 / 7.0) - PlanarPoint(3, 0)).norm() < 1e-12);
  CHECK((point_along(pts, 5.0 / 7.0) - PlanarPoint(3, 2)).norm() < 1e-12);
  CHECK((point_along(pts, 1.0) - PlanarPoint(3, 4)).norm() < 1e-12);
  CHECK_THROWS_AS(point_along(std::vector<PlanarPoint>{}, 0.5), Error);
}

TEST_CASE("even placement on a straight line") {
  const auto frame = frame_of(100, 30.0);
  const PlanarPoint a(115.0, 215.0), b(2815.0, 1735.0);
  const auto net = straight_line(frame, a, b);
  const auto one = place_ignitions(net.branch(1), frame, 1, Placement::kEven, 0);
  REQUIRE(one.size() == 1);
  CHECK(chebyshev(one[0], frame.grid().cell_of((a + b) / 2.0)) <= 1);
  const auto three = place_ignitions(net.branch(1), frame, 3, Placement::kEven, 0);
  REQUIRE(three.size() == 3);
  for (int k = 0; k < 3; ++k) {
    const PlanarPoint want = a + (b - a) * (0.25 * (k + 1));
    CHECK(chebyshev(three[k], frame.grid().cell_of(want)) <= 1);
  }
}

TEST_CASE("seeded-random placement") {
  const auto frame = frame_of(128, 30.0);
  const auto net = ieee30_network(frame);
  for (const Branch* l : ignitable_lines(net)) {
    const auto a = place_ignitions(*l, frame, 5, Placement::kSeededRandom, 9);
    CHECK(a == place_ignitions(*l, frame, 5, Placement::kSeededRandom, 9));
    CHECK(a.size() == 5);
    const auto cells = line_cells(*l, frame);
    for (GridIndex g : a) CHECK(std::find(cells.begin(), cells.end(), g) != cells.end());
  }
  const auto& l1 = net.branch(1);
  CHECK(place_ignitions(l1, frame, 8, Placement::kSeededRandom, 9) !=
        place_ignitions(l1, frame, 8, Placement::kSeededRandom, 10));
}

TEST_CASE("even ignition cells lie on the line corridor") {
  const auto frame = frame_of(128, 30.0);
  const auto net = ieee30_network(frame);
  for (const Branch* l : ignitable_lines(net)) {
    const auto cells = line_cells(*l, frame);
    for (int count : {1, 3, 7})
      for (GridIndex g : place_ignitions(*l, frame, count, Placement::kEven, 0))
        CHECK(std::find(cells.begin(), cells.end(), g) != cells.end());
  }
}

TEST_CASE("build_matrix counts and order") {
  const auto frame = frame_of(128, 30.0);
  const auto net = ieee30_network(frame);
  StudyConfig cfg;
  const auto all = build_matrix(net, frame, cfg);
  CHECK(all.size() == 408);
  for (std::size_t i = 1; i < all.size(); ++i) {
    const auto key = [](const IgnitionSpec& s) { return std::tuple(s.line_id, s.season_index, s.ignition_index); };
    CHECK(key(all[i - 1]) < key(all[i]));
  }
  for (const auto& s : all) {
    CHECK(s.start == cfg.seasons.at(s.season_index - 1));
    CHECK(s.duration_hours == 24.0);
  }

  cfg.ignitions_per_line = 1;
  cfg.seasons = {cfg.seasons[2]};
  cfg.lines = {10};
  const auto single = build_matrix(net, frame, cfg);
  REQUIRE(single.size() == 1);
  CHECK(single[0].line_id == 10);

  cfg.ignitions_per_line = 2;
  cfg.seasons = season_starts(2022);
  cfg.seasons.resize(2);
  cfg.lines = {1, 2, 3, 4, 5};
  CHECK(build_matrix(net, frame, cfg).size() == 20);

  cfg.lines = {11};
  CHECK_THROWS_AS(build_matrix(net, frame, cfg), Error);
  cfg.lines = {};
  cfg.ignitions_per_line = 0;
  CHECK_THROWS_AS(build_matrix(net, frame, cfg), Error);
}

TEST_CASE("run_batch") {
  const auto land = foothill_landscape(7, 48, 30.0);
  const auto cat = FuelCatalog::defaults();
  const auto net = ieee30_network(land.frame);
  const auto wx = synth_weather(2022, 7);
  StudyConfig cfg;
  cfg.duration_hours = 2.0;
  const StudyInputs in{land, cat, wx, net};

  SUBCASE("empty spec list") {
    const auto r = run_batch({}, in, cfg, 4);
    CHECK(r.results.empty());
    CHECK(r.warnings.empty());
  }
  SUBCASE("non-burnable ignition") {
    GridIndex rock{-1, -1};
    for (int i = 0; i < land.nrows() && rock.row < 0; ++i)
      for (int j = 0; j < land.ncols(); ++j)
        if (land.fuel(i, j) == 0) {
          rock = {i, j};
          break;
        }
    REQUIRE(rock.row >= 0);
    IgnitionSpec s{1, 1, 1, rock, cfg.seasons[0], 2.0};
    const std::vector<IgnitionSpec> specs{s};
    const auto r = run_batch(specs, in, cfg, 1);
    REQUIRE(r.results.size() == 1);
    CHECK(r.results[0].burned_acres == 0.0);
    CHECK(r.results[0].affected_line_ids.empty());
    CHECK(r.warnings.size() == 1);
  }
  SUBCASE("coverage problems surface before any simulation") {
    IgnitionSpec s{1, 1, 1, {3, 3}, parse_instant("2030-01-01T00:00Z"), 2.0};
    const std::vector<IgnitionSpec> specs{s};
    try {
      run_batch(specs, in, cfg, 1);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kCoverage);
    }
  }
  SUBCASE("worker count does not change results") {
    cfg.ignitions_per_line = 2;
    const auto specs = build_matrix(net, land.frame, cfg);
    const auto one = run_batch(specs, in, cfg, 1);
    const auto many = run_batch(specs, in, cfg, 5);
    CHECK(one.results.size() == specs.size());
    CHECK(one.results == many.results);
    CHECK(one.warnings == many.warnings);
    const double alpha = cell_acreage(land);
    const LineCorridors corridors(net, land.frame);
    for (std::size_t i = 0; i < specs.size(); ++i) {
      const auto& r = one.results[i];
      CHECK(r.line_id == specs[i].line_id);
      CHECK(r.season_index == specs[i].season_index);
      CHECK(r.ignition_index == specs[i].ignition_index);
      CHECK(r.burned_acres == doctest::Approx(static_cast<double>(r.burned_cells) * alpha));
      double miles = 0.0;
      for (int id : r.affected_line_ids) miles += net.branch(id).length_miles;
      CHECK(r.affected_miles == doctest::Approx(miles));
      CHECK(std::is_sorted(r.affected_line_ids.begin(), r.affected_line_ids.end()));
      // A burned ignition cell sits on the line's own corridor.
      if (r.burned_cells > 0) {
        CHECK(std::binary_search(r.affected_line_ids.begin(), r.affected_line_ids.end(), r.line_id));
      }
    }
  }
}
