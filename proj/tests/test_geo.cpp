#include "oracles.hpp"

#include "wildrisk/error.hpp"
#include "wildrisk/geo.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <set>

using namespace wildrisk;

using wildrisk::test::clip_oracle;
using wildrisk::test::eight_connected;
using wildrisk::test::sample_oracle;

TEST_CASE("project: origin maps to zero") {
  const GeoPoint o{37.8, -120.0};
  const PlanarPoint p = project(o, o);
  CHECK(p.x() == 0.0);
  CHECK(p.y() == 0.0);
}

TEST_CASE("project: one degree of latitude and longitude") {
  const GeoPoint o{37.8, -120.0};
  const PlanarPoint north = project({38.8, -120.0}, o);
  CHECK(north.x() == doctest::Approx(0.0));
  CHECK(std::abs(north.y() - 111194.93) < 0.1);
  // R * pi/180 * cos(37.8 deg) = 87,861.2 m.
  const PlanarPoint east = project({37.8, -119.0}, o);
  CHECK(std::abs(east.x() - 87861.23) < 1.0);
  CHECK(east.y() == 0.0);
}

TEST_CASE("project: rejects points too far from the origin or out of range") {
  CHECK_THROWS_AS(project({44.0, -120.0}, {37.8, -120.0}), Error);
  CHECK_THROWS_AS(project({91.0, 0.0}, {89.0, 0.0}), Error);
  try {
    project({37.8, -126.0}, {37.8, -120.0});
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kInvalidInput);
  }
}

TEST_CASE("project/unproject round trip within 1e-9 degrees") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lat(-60.0, 60.0), off(-4.9, 4.9);
  for (int i = 0; i < 2000; ++i) {
    const GeoPoint o{lat(rng), off(rng) * 30.0};
    const GeoPoint p{o.lat + off(rng), o.lon + off(rng)};
    const GeoPoint back = unproject(project(p, o), o);
    CHECK(std::abs(back.lat - p.lat) < 1e-9);
    CHECK(std::abs(back.lon - p.lon) < 1e-9);
  }
}

TEST_CASE("polyline_length examples") {
  const std::vector<GeoPoint> one{{37.8, -120.0}};
  CHECK(polyline_length(one) == 0.0);
  const std::vector<GeoPoint> two{{37.8, -120.0}, {38.8, -120.0}};
  CHECK(polyline_length(two) == doctest::Approx(69.09).epsilon(0.0001));
  CHECK(std::abs(polyline_length(two) - 69.0933) < 0.01);
  CHECK_THROWS_AS(polyline_length(std::vector<GeoPoint>{}), Error);
}

TEST_CASE("polyline_length is reversal-invariant and additive") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-0.2, 0.2);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<GeoPoint> pts;
    for (int i = 0; i < 6; ++i) pts.push_back({37.8 + d(rng), -120.0 + d(rng)});
    std::vector<GeoPoint> rev(pts.rbegin(), pts.rend());
    CHECK(polyline_length(pts) == doctest::Approx(polyline_length(rev)).epsilon(1e-14));
    const std::vector<GeoPoint> head(pts.begin(), pts.begin() + 3), tail(pts.begin() + 2, pts.end());
    CHECK(polyline_length(pts) == doctest::Approx(polyline_length(head) + polyline_length(tail)).epsilon(1e-12));
  }
}

TEST_CASE("traverse_cells examples") {
  const GridGeometry g{10, 10, 1.0};
  SUBCASE("segment inside one cell") {
    const auto cells = traverse_cells({3.2, 4.3}, {3.8, 4.9}, g);
    REQUIRE(cells.size() == 1);
    CHECK(cells[0] == GridIndex{4, 3});
  }
  SUBCASE("horizontal across three columns") {
    const auto cells = traverse_cells({0.5, 2.5}, {2.5, 2.5}, g);
    CHECK(cells == std::vector<GridIndex>{{2, 0}, {2, 1}, {2, 2}});
    CHECK(std::set<GridIndex>(cells.begin(), cells.end()) == sample_oracle({0.5, 2.5}, {2.5, 2.5}, g));
  }
  SUBCASE("45 degree diagonal through corners takes all corner-adjacent cells") {
    const auto cells = traverse_cells({0.5, 0.5}, {2.5, 2.5}, g);
    const std::set<GridIndex> got(cells.begin(), cells.end());
    for (GridIndex c : {GridIndex{0, 0}, GridIndex{0, 1}, GridIndex{1, 0}, GridIndex{1, 1}, GridIndex{1, 2},
                        GridIndex{2, 1}, GridIndex{2, 2}}) {
      CHECK(got.contains(c));
    }
    CHECK(got.size() == 7);
    CHECK(got == sample_oracle({0.5, 0.5}, {2.5, 2.5}, g));
    CHECK(cells.front() == GridIndex{0, 0});
    CHECK(cells.back() == GridIndex{2, 2});
  }
  SUBCASE("segment along a grid line touches both sides") {
    const auto cells = traverse_cells({2.0, 0.5}, {2.0, 1.5}, g);
    CHECK(std::set<GridIndex>(cells.begin(), cells.end()) ==
          std::set<GridIndex>{{0, 1}, {0, 2}, {1, 1}, {1, 2}});
  }
  SUBCASE("endpoint outside the extent") {
    try {
      traverse_cells({0.5, 0.5}, {10.5, 0.5}, g);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kOutOfBounds);
    }
  }
}

TEST_CASE("traverse_cells matches exact and sampling oracles on random segments") {
  const GridGeometry g{64, 64, 30.0};
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> coord(0.0, 64 * 30.0), shortlen(-100.0, 100.0);
  for (int i = 0; i < 1000; ++i) {
    const PlanarPoint a(coord(rng), coord(rng));
    PlanarPoint b(coord(rng), coord(rng));
    if (i % 3 == 0) b = (a + PlanarPoint(shortlen(rng), shortlen(rng))).cwiseMax(0.0).cwiseMin(64 * 30.0);
    const auto cells = traverse_cells(a, b, g);
    const std::set<GridIndex> got(cells.begin(), cells.end());
    REQUIRE(got.size() == cells.size());
    CHECK(got == clip_oracle(a, b, g));
    for (GridIndex s : sample_oracle(a, b, g)) CHECK(got.contains(s));
    CHECK(eight_connected(cells));
  }
}
