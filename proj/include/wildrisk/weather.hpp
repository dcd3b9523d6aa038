#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wildrisk {

using Instant = std::chrono::sys_seconds;

/// Parses "YYYY-MM-DDThh:mmZ" (seconds ":ss" accepted).
Instant parse_instant(std::string_view text);
/// Formats as "YYYY-MM-DDThh:mmZ".
std::string format_instant(Instant t);

struct WeatherSample {
  Instant timestamp{};
  double wind_speed = 0.0;     // m/s
  double wind_dir_from = 0.0;  // degrees, meteorological (direction wind blows from)
  double temperature = 0.0;    // deg C
  double rel_humidity = 0.0;   // percent

  friend bool operator==(const WeatherSample&, const WeatherSample&) = default;
};

void validate(const WeatherSample& s);

/// Hourly, gap-free, strictly increasing samples.
class WeatherSeries {
 public:
  WeatherSeries() = default;
  explicit WeatherSeries(std::vector<WeatherSample> samples);

  std::span<const WeatherSample> samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  const WeatherSample& operator[](std::size_t i) const { return samples_[i]; }
  Instant first() const { return samples_.front().timestamp; }
  /// One past the last covered instant (last sample + 1 h).
  Instant end() const { return samples_.back().timestamp + std::chrono::hours(1); }

  bool covers(Instant start, std::chrono::seconds span) const;
  /// Throws a coverage error when [start, start+span) is not covered.
  void require_coverage(Instant start, std::chrono::seconds span) const;
  /// Sample in effect at t (the hour containing t).
  const WeatherSample& at(Instant t) const;

  friend bool operator==(const WeatherSeries&, const WeatherSeries&) = default;

 private:
  std::vector<WeatherSample> samples_;
};

WeatherSeries load_weather(const std::filesystem::path& csv);
void write_weather(const WeatherSeries& series, const std::filesystem::path& csv);

/// Contiguous slice of exactly `hours` samples starting at `start`.
WeatherSeries window(const WeatherSeries& series, Instant start, int hours);

/// Jan 1, Apr 1, Jul 1 and Oct 1 of `year` at `hour`:00 UTC.
std::vector<Instant> season_starts(int year, int hour = 12);

/// A synthetic, deterministic full-year hourly record for `year`: moist, cool
/// winters with north-easterly wind and dry, hot summers with a diurnal cycle.
/// Values are rounded to two decimals so they round-trip through the CSV.
WeatherSeries synth_weather(int year, std::uint64_t seed);

}  // namespace wildrisk
