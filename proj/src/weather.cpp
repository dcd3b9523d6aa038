#include "wildrisk/weather.hpp"

#include "text_util.hpp"
#include "wildrisk/error.hpp"
#include "wildrisk/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace wildrisk {

using namespace std::chrono;

namespace {

constexpr std::string_view kHeader = "timestamp_utc,wind_speed_ms,wind_dir_from_deg,temp_c,rh_pct";

double round2(double v) { return std::round(v * 100.0) / 100.0; }

}  // namespace

Instant parse_instant(std::string_view text) {
  text = detail::trim(text);
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  char tail[4] = {};
  const std::string str(text);
  int n = std::sscanf(str.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%3s", &y, &mo, &d, &h, &mi, &s, tail);
  if (n != 7) {
    s = 0;
    n = std::sscanf(str.c_str(), "%4d-%2d-%2dT%2d:%2d%3s", &y, &mo, &d, &h, &mi, tail);
    if (n != 6) fail(ErrorKind::kInvalidInput, "bad timestamp '" + str + "' (want YYYY-MM-DDThh:mmZ)");
  }
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (std::string_view(tail) != "Z" || !ymd.ok() || h < 0 || h > 23 || mi < 0 || mi > 59 || s < 0 || s > 59) {
    fail(ErrorKind::kInvalidInput, "bad timestamp '" + str + "' (want YYYY-MM-DDThh:mmZ)");
  }
  return sys_days{ymd} + hours{h} + minutes{mi} + seconds{s};
}

std::string format_instant(Instant t) {
  const sys_days day = floor<days>(t);
  const year_month_day ymd{day};
  const hh_mm_ss hms{t - day};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()));
  return buf;
}

void validate(const WeatherSample& s) {
  const std::string at = " at " + format_instant(s.timestamp);
  if (!std::isfinite(s.wind_speed) || s.wind_speed < 0.0) {
    fail(ErrorKind::kInvalidSample, "wind speed " + detail::format_double(s.wind_speed) + at);
  }
  if (!std::isfinite(s.wind_dir_from) || s.wind_dir_from < 0.0 || s.wind_dir_from >= 360.0) {
    fail(ErrorKind::kInvalidSample, "wind direction " + detail::format_double(s.wind_dir_from) + at);
  }
  if (!std::isfinite(s.temperature)) fail(ErrorKind::kInvalidSample, "temperature not finite" + at);
  if (!std::isfinite(s.rel_humidity) || s.rel_humidity < 0.0 || s.rel_humidity > 100.0) {
    fail(ErrorKind::kInvalidSample, "relative humidity " + detail::format_double(s.rel_humidity) + at);
  }
}

WeatherSeries::WeatherSeries(std::vector<WeatherSample> samples) : samples_(std::move(samples)) {
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    validate(samples_[i]);
    if (i == 0) continue;
    const auto step = samples_[i].timestamp - samples_[i - 1].timestamp;
    if (step != hours{1}) {
      fail(ErrorKind::kMalformedSeries,
           "sample " + std::to_string(i + 1) + " (" + format_instant(samples_[i].timestamp) + ") follows " +
               format_instant(samples_[i - 1].timestamp) + "; expected exactly one hour later");
    }
  }
}

bool WeatherSeries::covers(Instant start, seconds span) const {
  if (samples_.empty()) return false;
  return start >= first() && start + span <= end();
}

void WeatherSeries::require_coverage(Instant start, seconds span) const {
  if (covers(start, span)) return;
  std::string have = samples_.empty() ? std::string("an empty series")
                                      : "[" + format_instant(first()) + ", " + format_instant(end()) + ")";
  fail(ErrorKind::kCoverage, "weather window [" + format_instant(start) + ", " + format_instant(start + span) +
                                 ") not covered by " + have);
}

const WeatherSample& WeatherSeries::at(Instant t) const {
  require_coverage(t, seconds{0});
  if (t == end()) fail(ErrorKind::kCoverage, "no sample at " + format_instant(t));
  const auto idx = static_cast<std::size_t>(floor<hours>(t - first()).count());
  return samples_[idx];
}

WeatherSeries load_weather(const std::filesystem::path& csv) {
  std::ifstream in = detail::open_input(csv);
  std::string line;
  if (!std::getline(in, line) || detail::trim(line) != kHeader) {
    fail(ErrorKind::kMalformedSeries, csv.string() + ": expected header '" + std::string(kHeader) + "'");
  }
  std::vector<WeatherSample> samples;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (detail::trim(line).empty()) continue;
    const auto f = detail::split(line);
    WeatherSample s;
    const std::string where = csv.string() + " row " + std::to_string(row);
    if (f.size() != 5) fail(ErrorKind::kInvalidSample, where + ": expected 5 fields");
    try {
      s.timestamp = parse_instant(f[0]);
    } catch (const Error& e) {
      fail(ErrorKind::kInvalidSample, where + ": " + e.what());
    }
    if (!detail::parse_double(f[1], s.wind_speed) || !detail::parse_double(f[2], s.wind_dir_from) ||
        !detail::parse_double(f[3], s.temperature) || !detail::parse_double(f[4], s.rel_humidity)) {
      fail(ErrorKind::kInvalidSample, where + ": non-numeric field");
    }
    try {
      validate(s);
    } catch (const Error& e) {
      fail(ErrorKind::kInvalidSample, where + ": " + e.what());
    }
    samples.push_back(s);
  }
  return WeatherSeries(std::move(samples));
}

void write_weather(const WeatherSeries& series, const std::filesystem::path& csv) {
  std::string out(kHeader);
  out += '\n';
  for (const WeatherSample& s : series.samples()) {
    out += format_instant(s.timestamp) + "," + detail::format_double(s.wind_speed) + "," +
           detail::format_double(s.wind_dir_from) + "," + detail::format_double(s.temperature) + "," +
           detail::format_double(s.rel_humidity) + "\n";
  }
  detail::write_file(csv, out);
}

WeatherSeries window(const WeatherSeries& series, Instant start, int hours_count) {
  if (hours_count <= 0) fail(ErrorKind::kInvalidInput, "window length must be positive");
  series.require_coverage(start, hours{hours_count});
  if (start - series.first() != floor<hours>(start - series.first())) {
    fail(ErrorKind::kInvalidInput, "window start " + format_instant(start) + " is not on a sample hour");
  }
  const auto offset = static_cast<std::size_t>(floor<hours>(start - series.first()).count());
  const auto s = series.samples().subspan(offset, static_cast<std::size_t>(hours_count));
  return WeatherSeries(std::vector<WeatherSample>(s.begin(), s.end()));
}

std::vector<Instant> season_starts(int year_value, int hour) {
  if (hour < 0 || hour > 23) fail(ErrorKind::kInvalidInput, "ignition hour must be in [0, 23]");
  std::vector<Instant> out;
  for (unsigned m : {1u, 4u, 7u, 10u}) {
    out.push_back(sys_days{year{year_value} / month{m} / day{1}} + hours{hour});
  }
  return out;
}

WeatherSeries synth_weather(int year_value, std::uint64_t seed) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  const Instant begin = sys_days{year{year_value} / January / day{1}};
  const Instant stop = sys_days{year{year_value + 1} / January / day{1}};
  SplitMix64 rng(seed);
  std::vector<WeatherSample> samples;
  for (Instant t = begin; t < stop; t += hours{1}) {
    const double doy = static_cast<double>(floor<days>(t - begin).count());
    const double hod = static_cast<double>(floor<hours>(t - floor<days>(t)).count());
    // +1 in mid-July, -1 in mid-January.
    const double season = -std::cos(kTwoPi * (doy - 15.0) / 365.0);
    const double diurnal = std::sin(kTwoPi * (hod - 9.0) / 24.0);  // peaks mid-afternoon

    WeatherSample s;
    s.timestamp = t;
    s.temperature = round2(12.0 + 11.0 * season + 7.0 * diurnal + rng.uniform(-1.5, 1.5));
    s.rel_humidity = round2(std::clamp(52.0 - 30.0 * season - 12.0 * diurnal + rng.uniform(-5.0, 5.0), 5.0, 100.0));
    // Prevailing south-westerly in the warm season, north-easterly in winter.
    const double base_dir = season > 0.0 ? 225.0 : 225.0 + 180.0 * std::min(1.0, -season * 1.6);
    double dir = std::fmod(base_dir + rng.uniform(-25.0, 25.0) + 360.0, 360.0);
    dir = round2(dir);
    if (dir >= 360.0) dir -= 360.0;
    s.wind_dir_from = dir;
    s.wind_speed = round2(std::max(0.0, 2.5 + 1.5 * diurnal + (season < 0.0 ? -1.5 * season : 0.0) +
                                            rng.uniform(-1.0, 1.0)));
    samples.push_back(s);
  }
  return WeatherSeries(std::move(samples));
}

}  // namespace wildrisk
