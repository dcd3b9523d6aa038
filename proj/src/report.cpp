#include "wildrisk/report.hpp"

#include "text_util.hpp"
#include "wildrisk/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace wildrisk {

namespace {

std::string fmt(double v, int digits) {
  return digits < 0 ? detail::format_double(v) : detail::format_fixed(v, digits);
}

std::string join_ids(const std::vector<int>& ids) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(ids[i]);
  }
  return s;
}

constexpr std::string_view kResultsHeader =
    "line_id,season,ignition_idx,burned_cells,burned_acres,affected_line_ids,affected_miles";
constexpr std::string_view kRiskHeader = "line_id,lbe,lbl,wfl,metric,rank";

}  // namespace

const SeasonTable::Row& SeasonTable::row(int id) const {
  for (const Row& r : rows) {
    if (r.id == id) return r;
  }
  fail(ErrorKind::kInvalidInput, "table has no row for branch " + std::to_string(id));
}

std::vector<double> SeasonTable::column(std::size_t season) const {
  std::vector<double> out;
  for (const Row& r : rows) out.push_back(r.values.at(season));
  return out;
}

int SeasonTable::season_column(const std::string& name) const {
  const auto it = std::find(seasons.begin(), seasons.end(), name);
  return it == seasons.end() ? -1 : static_cast<int>(it - seasons.begin());
}

std::vector<std::string> season_names(std::size_t count) {
  if (count == 4) return {"winter", "spring", "summer", "fall"};
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= count; ++i) out.push_back("season_" + std::to_string(i));
  return out;
}

void write_season_table(const SeasonTable& t, const std::filesystem::path& csv, int digits) {
  std::string out = "branch_id";
  for (const std::string& s : t.seasons) out += "," + s;
  out += ",avg\n";
  for (const SeasonTable::Row& r : t.rows) {
    out += std::to_string(r.id);
    for (double v : r.values) out += "," + fmt(v, digits);
    out += "," + fmt(r.avg, digits) + "\n";
  }
  detail::write_file(csv, out);
}

SeasonTable read_season_table(const std::filesystem::path& csv) {
  std::ifstream in = detail::open_input(csv);
  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::kInvalidInput, csv.string() + ": empty table");
  const auto head = detail::split(line);
  if (head.size() < 3 || head.front() != "branch_id" || head.back() != "avg") {
    fail(ErrorKind::kInvalidInput, csv.string() + ": header must be branch_id,<seasons...>,avg");
  }
  SeasonTable t;
  t.seasons.assign(head.begin() + 1, head.end() - 1);
  int row = 1;
  std::set<int> ids;
  while (std::getline(in, line)) {
    ++row;
    if (detail::trim(line).empty()) continue;
    const auto f = detail::split(line);
    SeasonTable::Row r;
    long long id = 0;
    bool ok = f.size() == head.size() && detail::parse_int(f[0], id);
    for (std::size_t i = 1; ok && i + 1 < f.size(); ++i) {
      double v = 0.0;
      ok = detail::parse_double(f[i], v);
      r.values.push_back(v);
    }
    ok = ok && detail::parse_double(f.back(), r.avg);
    if (!ok) fail(ErrorKind::kInvalidInput, csv.string() + ": malformed row " + std::to_string(row));
    r.id = static_cast<int>(id);
    if (!ids.insert(r.id).second) fail(ErrorKind::kInvalidInput, csv.string() + ": duplicate branch " + std::to_string(r.id));
    t.rows.push_back(std::move(r));
  }
  if (t.rows.empty()) fail(ErrorKind::kInvalidInput, csv.string() + ": table has no rows");
  std::sort(t.rows.begin(), t.rows.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return t;
}

void write_results(std::span<const ScenarioResult> results, const std::filesystem::path& csv) {
  std::string out(kResultsHeader);
  out += '\n';
  for (const ScenarioResult& r : results) {
    out += std::to_string(r.line_id) + "," + std::to_string(r.season_index) + "," + std::to_string(r.ignition_index) +
           "," + std::to_string(r.burned_cells) + "," + detail::format_double(r.burned_acres) + "," +
           join_ids(r.affected_line_ids) + "," + detail::format_double(r.affected_miles) + "\n";
  }
  detail::write_file(csv, out);
}

std::vector<ScenarioResult> read_results(const std::filesystem::path& csv) {
  std::ifstream in = detail::open_input(csv);
  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::kInvalidInput, csv.string() + ": empty results file");
  if (detail::trim(line) != kResultsHeader) {
    fail(ErrorKind::kInvalidInput, csv.string() + ": row 1: expected header '" + std::string(kResultsHeader) + "'");
  }
  std::vector<ScenarioResult> out;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (detail::trim(line).empty()) continue;
    const auto f = detail::split(line);
    ScenarioResult r;
    long long line_id = 0, season = 0, ign = 0, cells = 0;
    bool ok = f.size() == 7 && detail::parse_int(f[0], line_id) && detail::parse_int(f[1], season) &&
              detail::parse_int(f[2], ign) && detail::parse_int(f[3], cells) &&
              detail::parse_double(f[4], r.burned_acres) && detail::parse_double(f[6], r.affected_miles) &&
              season >= 1 && ign >= 1 && cells >= 0 && r.burned_acres >= 0.0 && r.affected_miles >= 0.0;
    if (ok && !f[5].empty()) {
      for (const std::string& s : detail::split(f[5], ';')) {
        long long id = 0;
        ok = ok && detail::parse_int(s, id);
        r.affected_line_ids.push_back(static_cast<int>(id));
      }
    }
    if (!ok) fail(ErrorKind::kInvalidInput, csv.string() + ": malformed results row " + std::to_string(row));
    r.line_id = static_cast<int>(line_id);
    r.season_index = static_cast<int>(season);
    r.ignition_index = static_cast<int>(ign);
    r.burned_cells = static_cast<std::size_t>(cells);
    out.push_back(std::move(r));
  }
  if (out.empty()) fail(ErrorKind::kInvalidInput, csv.string() + ": no scenario rows");
  return out;
}

StudyReport assess_results(std::span<const ScenarioResult> results, const GridNetwork& network,
                           const CostParams& costs, const std::vector<std::string>& seasons) {
  costs.validate();
  if (results.empty()) fail(ErrorKind::kInvalidInput, "no scenario results to assess");
  int season_count = 0;
  for (const ScenarioResult& r : results) season_count = std::max(season_count, r.season_index);
  if (!seasons.empty() && static_cast<int>(seasons.size()) != season_count) {
    fail(ErrorKind::kInvalidInput, "results span " + std::to_string(season_count) + " seasons but " +
                                       std::to_string(seasons.size()) + " season names were given");
  }

  // line -> season -> per-ignition records
  std::map<int, std::vector<std::vector<const ScenarioResult*>>> grouped;
  for (const ScenarioResult& r : results) {
    auto& by_season = grouped[r.line_id];
    by_season.resize(static_cast<std::size_t>(season_count));
    by_season[static_cast<std::size_t>(r.season_index - 1)].push_back(&r);
  }

  StudyReport rep;
  rep.source = "scenario results";
  rep.acres.seasons = seasons.empty() ? season_names(static_cast<std::size_t>(season_count)) : seasons;
  rep.miles.seasons = rep.acres.seasons;
  std::vector<LineRisk> lines;
  for (const auto& [line_id, by_season] : grouped) {
    if (!network.has_branch(line_id) || !network.branch(line_id).is_line()) {
      fail(ErrorKind::kTopology, "results reference line " + std::to_string(line_id) + " absent from the network");
    }
    LineRisk lr;
    lr.line_id = line_id;
    std::vector<double> season_lbe;
    std::vector<double> season_lbl;
    const std::size_t ignitions = by_season.front().size();
    for (std::size_t s = 0; s < by_season.size(); ++s) {
      const auto& recs = by_season[s];
      if (recs.empty() || recs.size() != ignitions) {
        fail(ErrorKind::kInvalidInput, "line " + std::to_string(line_id) + " season " + std::to_string(s + 1) +
                                           " has " + std::to_string(recs.size()) + " ignitions, expected " +
                                           std::to_string(ignitions));
      }
      std::vector<double> acres;
      std::vector<double> miles;
      std::vector<std::vector<int>> sets;
      for (const ScenarioResult* r : recs) {
        acres.push_back(r->burned_acres);
        miles.push_back(affected_miles(r->affected_line_ids, network));
        sets.push_back(r->affected_line_ids);
      }
      season_lbe.push_back(lbe(acres, costs));
      season_lbl.push_back(lbl(sets, network, costs));
      lr.season_acres.push_back(seasonal_average(acres));
      lr.season_miles.push_back(seasonal_average(miles));
    }
    lr.lbe = seasonal_average(season_lbe);
    lr.lbl = seasonal_average(season_lbl);
    rep.acres.rows.push_back({line_id, lr.season_acres, seasonal_average(lr.season_acres)});
    rep.miles.rows.push_back({line_id, lr.season_miles, seasonal_average(lr.season_miles)});
    lines.push_back(std::move(lr));
  }
  rep.ranking = rank_lines(std::move(lines));
  return rep;
}

StudyReport assess_tables(const SeasonTable& acres, const SeasonTable& miles, const CostParams& costs) {
  costs.validate();
  if (acres.rows.size() != miles.rows.size()) fail(ErrorKind::kInvalidInput, "acre and mile tables list different lines");
  StudyReport rep;
  rep.source = "tables";
  rep.acres = acres;
  rep.miles = miles;
  std::vector<LineRisk> lines;
  for (const SeasonTable::Row& a : acres.rows) {
    const SeasonTable::Row& m = miles.row(a.id);
    LineRisk lr;
    lr.line_id = a.id;
    lr.lbe = lbe(std::span<const double>(&a.avg, 1), costs);
    lr.lbl = lbl_from_miles(std::span<const double>(&m.avg, 1), costs);
    lr.season_acres = a.values;
    lr.season_miles = m.values;
    lines.push_back(std::move(lr));
  }
  rep.ranking = rank_lines(std::move(lines));
  return rep;
}

void write_report(const StudyReport& rep, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorKind::kIo, "cannot create '" + dir.string() + "': " + ec.message());
  write_season_table(rep.acres, dir / "table1.csv", rep.source == "tables" ? -1 : 3);
  write_season_table(rep.miles, dir / "table2.csv", rep.source == "tables" ? -1 : 3);

  std::string risk(kRiskHeader);
  risk += '\n';
  std::string plot = "line_id,metric\n";
  for (const LineRisk& l : rep.ranking) {
    risk += std::to_string(l.line_id) + "," + detail::format_fixed(l.lbe, 2) + "," + detail::format_fixed(l.lbl, 2) +
            "," + detail::format_fixed(l.wfl, 2) + "," + detail::format_fixed(l.metric, 6) + "," +
            std::to_string(l.rank) + "\n";
  }
  std::vector<const LineRisk*> by_id;
  for (const LineRisk& l : rep.ranking) by_id.push_back(&l);
  std::sort(by_id.begin(), by_id.end(), [](auto* a, auto* b) { return a->line_id < b->line_id; });
  for (const LineRisk* l : by_id) plot += std::to_string(l->line_id) + "," + detail::format_fixed(l->metric, 6) + "\n";
  detail::write_file(dir / "risk.csv", risk);
  detail::write_file(dir / "fig6.csv", plot);

  nlohmann::ordered_json meta;
  meta["source"] = rep.source;
  meta["config_hash"] = rep.config_hash;
  meta["duration_hours"] = rep.duration_hours;
  meta["lines"] = rep.ranking.size();
  meta["warnings"] = rep.warnings;
  detail::write_file(dir / "report.json", meta.dump(2) + "\n");
}

StudyReport read_report(const std::filesystem::path& dir) {
  for (const char* name : {"table1.csv", "table2.csv", "risk.csv"}) {
    if (!std::filesystem::exists(dir / name)) fail(ErrorKind::kIo, "report file '" + (dir / name).string() + "' not found");
  }
  StudyReport rep;
  rep.acres = read_season_table(dir / "table1.csv");
  rep.miles = read_season_table(dir / "table2.csv");
  std::ifstream in = detail::open_input(dir / "risk.csv");
  std::string line;
  if (!std::getline(in, line) || detail::trim(line) != kRiskHeader) {
    fail(ErrorKind::kInvalidInput, (dir / "risk.csv").string() + ": unexpected header");
  }
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (detail::trim(line).empty()) continue;
    const auto f = detail::split(line);
    LineRisk l;
    long long id = 0, rank = 0;
    if (f.size() != 6 || !detail::parse_int(f[0], id) || !detail::parse_double(f[1], l.lbe) ||
        !detail::parse_double(f[2], l.lbl) || !detail::parse_double(f[3], l.wfl) ||
        !detail::parse_double(f[4], l.metric) || !detail::parse_int(f[5], rank)) {
      fail(ErrorKind::kInvalidInput, (dir / "risk.csv").string() + ": malformed row " + std::to_string(row));
    }
    l.line_id = static_cast<int>(id);
    l.rank = static_cast<int>(rank);
    rep.ranking.push_back(std::move(l));
  }
  if (std::filesystem::exists(dir / "report.json")) {
    try {
      const auto meta = nlohmann::json::parse(detail::read_file(dir / "report.json"));
      rep.source = meta.value("source", "");
      rep.config_hash = meta.value("config_hash", "");
      rep.duration_hours = meta.value("duration_hours", 0.0);
      rep.warnings = meta.value("warnings", std::vector<std::string>{});
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::kInvalidInput, (dir / "report.json").string() + ": " + e.what());
    }
  }
  return rep;
}

double summer_winter_ratio(const SeasonTable& acres) {
  const int summer = acres.season_column("summer");
  const int winter = acres.season_column("winter");
  if (summer < 0 || winter < 0) fail(ErrorKind::kInvalidInput, "table lacks summer and winter columns");
  const double w = seasonal_average(acres.column(static_cast<std::size_t>(winter)));
  if (!(w > 0.0)) fail(ErrorKind::kInvalidInput, "winter mean burned area is zero");
  return seasonal_average(acres.column(static_cast<std::size_t>(summer))) / w;
}

std::string render_summary(const StudyReport& rep, int top_n) {
  std::ostringstream os;
  char buf[160];
  const std::size_t shown = std::min<std::size_t>(rep.ranking.size(), static_cast<std::size_t>(std::max(top_n, 0)));
  os << "Line risk ranking (top " << shown << " of " << rep.ranking.size() << ")\n";
  os << "rank  line        WFL ($)          LBE ($)          LBL ($)   metric\n";
  for (std::size_t i = 0; i < shown; ++i) {
    const LineRisk& l = rep.ranking[i];
    std::snprintf(buf, sizeof buf, "%4d  %4d  %15.2f  %15.2f  %15.2f   %.3f\n", l.rank, l.line_id, l.wfl, l.lbe, l.lbl,
                  l.metric);
    os << buf;
  }

  os << "\nSeasonal extremes\n";
  for (std::size_t s = 0; s < rep.acres.seasons.size(); ++s) {
    auto top = [&](const SeasonTable& t) {
      const SeasonTable::Row* best = nullptr;
      for (const auto& r : t.rows) {
        if (!best || r.values[s] > best->values[s]) best = &r;
      }
      return best;
    };
    const auto* a = top(rep.acres);
    const auto* m = s < rep.miles.seasons.size() ? top(rep.miles) : nullptr;
    std::snprintf(buf, sizeof buf, "  %-10s largest burn: line %d (%.1f acres)", rep.acres.seasons[s].c_str(), a->id,
                  a->values[s]);
    os << buf;
    if (m) {
      std::snprintf(buf, sizeof buf, "; most grid damage: line %d (%.2f miles)", m->id, m->values[s]);
      os << buf;
    }
    os << "\n";
  }

  os << "\nSummer/winter mean burned-area ratio: ";
  try {
    std::snprintf(buf, sizeof buf, "%.2f\n", summer_winter_ratio(rep.acres));
    os << buf;
  } catch (const Error&) {
    os << "n/a\n";
  }
  if (!rep.warnings.empty()) os << "\n" << rep.warnings.size() << " scenario warning(s) recorded in report.json\n";
  return os.str();
}

}  // namespace wildrisk
