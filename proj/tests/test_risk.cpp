#include "test_support.hpp"

#include "wildrisk/error.hpp"
#include "wildrisk/fixtures.hpp"
#include "wildrisk/report.hpp"
#include "wildrisk/risk.hpp"

#include <doctest.h>

#include <algorithm>
#include <limits>
#include <random>

using namespace wildrisk;

namespace {

struct Corridor {
  RasterFrame frame{GridGeometry{10, 10, 100.0}, GeoPoint{37.80, -120.00}};
  GridNetwork network;

  Corridor() {
    auto geo = [&](double x, double y) { return frame.to_geo(PlanarPoint(x, y)); };
    std::vector<Bus> buses{{1, geo(150, 250)}, {2, geo(750, 250)}, {3, geo(150, 850)}, {4, geo(850, 850)}};
    Branch four;
    four.id = 4;
    four.from_bus = 1;
    four.to_bus = 2;
    four.route = {buses[0].location, buses[1].location};
    Branch two;
    two.id = 2;
    two.from_bus = 3;
    two.to_bus = 4;
    two.route = {buses[2].location, buses[3].location};
    Branch link;
    link.id = 9;
    link.kind = BranchKind::kLink;
    link.from_bus = 2;
    link.to_bus = 4;
    network = GridNetwork(buses, {four, two, link});
  }

  BurnRaster burn(std::vector<GridIndex> cells) const {
    BurnRaster b;
    b.grid = frame.grid();
    b.status.setZero(10, 10);
    b.arrival.setConstant(10, 10, std::numeric_limits<double>::infinity());
    for (GridIndex g : cells) {
      b.status(g.row, g.col) = 1;
      b.arrival(g.row, g.col) = 1.0;
    }
    return b;
  }
};

const std::map<int, double> fixture_wfl() {
  const auto acres = ieee30_reference_acres();
  const auto miles = ieee30_reference_miles();
  std::map<int, double> w;
  for (const auto& row : acres.rows) w[row.id] = wfl(row.avg * 20000.0, miles.row(row.id).avg * 200000.0);
  return w;
}

}  // namespace

TEST_CASE("affected_lines examples") {
  const Corridor c;
  const LineCorridors corridors(c.network, c.frame);
  CHECK(corridors.all().size() == 2);
  CHECK(affected_lines(c.burn({}), corridors).empty());
  CHECK(affected_lines(c.burn({{2, 4}}), corridors) == std::vector<int>{4});
  CHECK(affected_lines(c.burn({{3, 4}}), corridors, 0).empty());
  CHECK(affected_lines(c.burn({{3, 4}}), corridors, 1) == std::vector<int>{4});
  CHECK(affected_lines(c.burn({{2, 4}, {8, 5}}), corridors) == std::vector<int>{2, 4});
  CHECK_THROWS_AS(affected_lines(c.burn({}), corridors, -1), Error);
}

TEST_CASE("affected_lines matches a brute-force dilation oracle") {
  const Corridor c;
  const LineCorridors corridors(c.network, c.frame);
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> cell(0, 9), count(0, 4), buf(0, 3);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<GridIndex> burned;
    for (int k = count(rng); k > 0; --k) burned.push_back({cell(rng), cell(rng)});
    const int buffer = buf(rng);
    std::vector<int> want;
    for (const Branch* l : ignitable_lines(c.network)) {
      bool hit = false;
      for (GridIndex a : line_cells(*l, c.frame))
        for (GridIndex b : burned) hit |= std::max(std::abs(a.row - b.row), std::abs(a.col - b.col)) <= buffer;
      if (hit) want.push_back(l->id);
    }
    CHECK(affected_lines(c.burn(burned), corridors, buffer) == want);
  }
}

TEST_CASE("lbe examples") {
  const CostParams costs;
  CHECK(lbe(std::vector<double>{0.0, 0.0, 0.0}, costs) == 0.0);
  CHECK(lbe(std::vector<double>{100.0, 200.0}, costs) == doctest::Approx(3000000.0));
  CHECK(lbe(std::vector<double>{4236.2}, costs) == doctest::Approx(84724000.0));
  CHECK_THROWS_AS(lbe(std::vector<double>{}, costs), Error);
}

TEST_CASE("lbl examples") {
  const CostParams costs;
  const Corridor c;
  CHECK(lbl(std::vector<std::vector<int>>{{}, {}}, c.network, costs) == 0.0);
  CHECK(lbl_from_miles(std::vector<double>{215.36}, costs) == doctest::Approx(43072000.0));
  CHECK(lbl_from_miles(std::vector<double>{10.0, 15.0}, costs) == doctest::Approx(2500000.0));
  const double xa = c.network.branch(4).length_miles, xb = c.network.branch(2).length_miles;
  CHECK(lbl(std::vector<std::vector<int>>{{4}, {4, 2}}, c.network, costs) ==
        doctest::Approx((2.0 * xa + xb) * 200000.0 / 2.0));
  try {
    lbl(std::vector<std::vector<int>>{{77}}, c.network, costs);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kTopology);
  }
  CHECK_THROWS_AS(lbl(std::vector<std::vector<int>>{{9}}, c.network, costs), Error);
}

TEST_CASE("wfl examples") {
  CHECK(wfl(0.0, 0.0) == 0.0);
  CHECK(wfl(84724000.0, 43072000.0) == 127796000.0);
  CHECK(wfl(12.5, 0.0) == 12.5);
}

TEST_CASE("risk_metric") {
  CHECK(risk_metric({{3, 42.0}}) == std::map<int, double>{{3, 1.0}});
  try {
    risk_metric({{1, 0.0}, {2, 0.0}});
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDegenerateNormalization);
  }
  CHECK_THROWS_AS(risk_metric({}), Error);

  const auto m = risk_metric(fixture_wfl());
  CHECK(m.at(6) == 1.0);
  CHECK(std::abs(m.at(10) - 0.72968) < 1e-5);
  std::vector<std::pair<double, int>> order;
  for (auto [id, v] : m) order.push_back({-v, id});
  std::sort(order.begin(), order.end());
  CHECK(order[1].second == 10);
  CHECK(order[2].second == 8);
  CHECK(order[3].second == 5);
  CHECK(order[4].second == 9);
}

TEST_CASE("risk_metric is scale invariant") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> v(0.0, 1e8);
  for (int trial = 0; trial < 100; ++trial) {
    std::map<int, double> w;
    for (int id = 1; id <= 12; ++id) w[id] = v(rng);
    const auto base = risk_metric(w);
    for (double lambda : {0.1, 10.0, 3.7}) {
      std::map<int, double> scaled;
      for (auto [id, x] : w) scaled[id] = x * lambda;
      const auto m = risk_metric(scaled);
      for (auto [id, x] : base) CHECK(m.at(id) == doctest::Approx(x).epsilon(1e-14));
    }
    double mx = 0.0;
    for (auto [id, x] : base) {
      CHECK(x >= 0.0);
      CHECK(x <= 1.0);
      mx = std::max(mx, x);
    }
    CHECK(mx == 1.0);
  }
}

TEST_CASE("seasonal_average") {
  const auto acres = ieee30_reference_acres();
  const auto miles = ieee30_reference_miles();
  CHECK(std::abs(seasonal_average(acres.row(6).values) - 4236.2) < 0.05);
  CHECK(std::abs(seasonal_average(miles.row(6).values) - 215.36) < 0.005);
  CHECK(seasonal_average(std::vector<double>{2.5, 2.5, 2.5}) == 2.5);
  CHECK_THROWS_AS(seasonal_average(std::vector<double>{}), Error);
}

TEST_CASE("rank_lines") {
  std::vector<LineRisk> in{{1, 10, 0}, {2, 30, 10}, {3, 40, 0}, {4, 0, 0}, {5, 20, 20}};
  const auto out = rank_lines(in);
  REQUIRE(out.size() == 5);
  CHECK(out[0].metric == 1.0);
  // lines 2, 3 and 5 tie at 40
  CHECK(out[0].line_id == 2);
  CHECK(out[1].line_id == 3);
  CHECK(out[2].line_id == 5);
  CHECK(out[3].line_id == 1);
  CHECK(out[4].line_id == 4);
  for (std::size_t i = 0; i < out.size(); ++i) {
    CHECK(out[i].wfl == out[i].lbe + out[i].lbl);
    CHECK(out[i].rank == static_cast<int>(i) + 1);
  }
}

TEST_CASE("raising one ignition's acreage never lowers its line") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> a(0.0, 5000.0), mi(0.0, 300.0);
  const CostParams costs;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::vector<double>> acres(8, std::vector<double>(3));
    std::vector<double> miles(8);
    for (auto& v : acres)
      for (double& x : v) x = a(rng);
    for (double& x : miles) x = mi(rng);
    auto ranking = [&] {
      std::vector<LineRisk> lines;
      for (int j = 0; j < 8; ++j) {
        LineRisk r;
        r.line_id = j + 1;
        r.lbe = lbe(acres[j], costs);
        r.lbl = miles[j] * costs.cbl;
        lines.push_back(r);
      }
      return rank_lines(lines);
    };
    const auto before = ranking();
    const int j = trial % 8;
    acres[j][trial % 3] += a(rng);
    const auto after = ranking();
    auto find = [&](const std::vector<LineRisk>& v) {
      return *std::find_if(v.begin(), v.end(), [&](const LineRisk& r) { return r.line_id == j + 1; });
    };
    CHECK(find(after).lbe >= find(before).lbe);
    CHECK(find(after).wfl >= find(before).wfl);
    CHECK(find(after).rank <= find(before).rank);
  }
}

TEST_CASE("cost params") {
  CostParams c;
  c.validate();
  c.cbe = 0.0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = {};
  c.cbl = -1.0;
  CHECK_THROWS_AS(c.validate(), Error);
}
