#include "test_support.hpp"

#include "wildrisk/error.hpp"
#include "wildrisk/weather.hpp"

#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

using namespace wildrisk;
using namespace std::chrono_literals;
using wildrisk::test::temp_dir;

namespace {

std::vector<std::string> csv_rows(const WeatherSeries& s) {
  std::vector<std::string> rows;
  for (const auto& x : s.samples()) {
    std::ostringstream o;
    o << format_instant(x.timestamp) << ',' << x.wind_speed << ',' << x.wind_dir_from << ',' << x.temperature
      << ',' << x.rel_humidity;
    rows.push_back(o.str());
  }
  return rows;
}

void write_rows(const std::filesystem::path& p, const std::vector<std::string>& rows) {
  std::ofstream out(p);
  out << "timestamp_utc,wind_speed_ms,wind_dir_from_deg,temp_c,rh_pct\n";
  for (const auto& r : rows) out << r << '\n';
}

ErrorKind load_error(const std::filesystem::path& p) {
  try {
    load_weather(p);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::kInvariant;
}

}  // namespace

TEST_CASE("instants parse and format") {
  const Instant t = parse_instant("2022-07-01T12:00Z");
  CHECK(format_instant(t) == "2022-07-01T12:00Z");
  CHECK(parse_instant("2022-07-01T12:00:00Z") == t);
  CHECK_THROWS_AS(parse_instant("2022-07-01 12:00"), Error);
  CHECK_THROWS_AS(parse_instant("2022-13-01T12:00Z"), Error);
}

TEST_CASE("load_weather: 24 hourly rows") {
  const auto dir = temp_dir("wx");
  const auto s = wildrisk::test::constant_weather(24, 3.0, 270.0, 25.0);
  write_weather(s, dir / "w.csv");
  const auto back = load_weather(dir / "w.csv");
  CHECK(back.size() == 24);
  CHECK(back == s);
  std::filesystem::remove_all(dir);
}

TEST_CASE("load_weather errors") {
  const auto dir = temp_dir("wx_err");
  auto rows = csv_rows(wildrisk::test::constant_weather(6, 3.0, 270.0, 25.0));
  SUBCASE("duplicated timestamp") {
    rows[3] = rows[2];
    write_rows(dir / "w.csv", rows);
    CHECK(load_error(dir / "w.csv") == ErrorKind::kMalformedSeries);
  }
  SUBCASE("humidity out of range names the row") {
    rows[4] = format_instant(wildrisk::test::t0() + 4h) + ",3,270,25,150";
    write_rows(dir / "w.csv", rows);
    try {
      load_weather(dir / "w.csv");
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kInvalidSample);
      CHECK(std::string(e.what()).find("5") != std::string::npos);
    }
  }
  SUBCASE("missing file") { CHECK(load_error(dir / "nope.csv") == ErrorKind::kIo); }
  std::filesystem::remove_all(dir);
}

TEST_CASE("load_weather rejects random spacing corruptions") {
  const auto dir = temp_dir("wx_fuzz");
  const auto good = csv_rows(wildrisk::test::constant_weather(30, 2.0, 90.0, 40.0));
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    auto rows = good;
    const int i = std::uniform_int_distribution<int>(1, 28)(rng);
    switch (trial % 4) {
      case 0: rows.erase(rows.begin() + i); break;                 // gap
      case 1: rows.insert(rows.begin() + i, rows[i]); break;       // duplicate
      case 2: std::swap(rows[i], rows[i + 1]); break;              // out of order
      case 3: {                                                    // off-grid minute
        const auto shift = std::chrono::minutes(std::uniform_int_distribution<int>(1, 59)(rng));
        rows[i] = format_instant(wildrisk::test::t0() + std::chrono::hours(i) + shift) + ",2,90,25,40";
        break;
      }
    }
    write_rows(dir / "w.csv", rows);
    CHECK(load_error(dir / "w.csv") == ErrorKind::kMalformedSeries);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("window examples") {
  const auto s = wildrisk::test::constant_weather(48, 1.0, 0.0, 30.0);
  CHECK(window(s, s.first(), 48) == s);
  const auto one = window(s, s.first() + 5h, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == s[5]);
  try {
    window(s, s.first() - 1h, 2);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kCoverage);
  }
  CHECK_THROWS_AS(window(s, s.first() + 40h, 9), Error);
}

TEST_CASE("window length, start and concatenation") {
  const auto s = synth_weather(2022, 3);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> hour(0, 8000), len(1, 200);
  for (int trial = 0; trial < 100; ++trial) {
    const Instant t = s.first() + std::chrono::hours(hour(rng));
    const int h1 = len(rng), h2 = len(rng);
    const auto a = window(s, t, h1);
    CHECK(a.size() == static_cast<std::size_t>(h1));
    CHECK(a.first() == t);
    const auto b = window(s, t + std::chrono::hours(h1), h2);
    std::vector<WeatherSample> joined(a.samples().begin(), a.samples().end());
    joined.insert(joined.end(), b.samples().begin(), b.samples().end());
    CHECK(WeatherSeries(joined) == window(s, t, h1 + h2));
  }
}

TEST_CASE("season_starts") {
  const auto s = season_starts(2022);
  REQUIRE(s.size() == 4);
  CHECK(format_instant(s[0]) == "2022-01-01T12:00Z");
  CHECK(format_instant(s[1]) == "2022-04-01T12:00Z");
  CHECK(format_instant(s[2]) == "2022-07-01T12:00Z");
  CHECK(format_instant(s[3]) == "2022-10-01T12:00Z");
  const auto leap = season_starts(2024);
  CHECK(format_instant(leap[1]) == "2024-04-01T12:00Z");
  for (int y = 1990; y < 2060; ++y) {
    const auto v = season_starts(y, 7);
    REQUIRE(v.size() == 4);
    for (int i = 1; i < 4; ++i) CHECK(v[i - 1] < v[i]);
  }
}

TEST_CASE("synth_weather covers the year and round-trips") {
  const auto s = synth_weather(2024, 11);
  CHECK(s.size() == 366 * 24);
  CHECK(s == synth_weather(2024, 11));
  for (auto t : season_starts(2024)) CHECK(s.covers(t, 24h));
  const auto dir = temp_dir("wx_synth");
  write_weather(s, dir / "w.csv");
  CHECK(load_weather(dir / "w.csv") == s);
  std::filesystem::remove_all(dir);
}
