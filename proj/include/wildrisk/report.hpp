#pragma once

#include "wildrisk/grid_network.hpp"
#include "wildrisk/risk.hpp"
#include "wildrisk/scenario.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace wildrisk {

/// A per-line, per-season table with an average column, e.g. burned acres
/// or damaged miles.
struct SeasonTable {
  struct Row {
    int id = 0;
    std::vector<double> values;  // one per season
    double avg = 0.0;
    friend bool operator==(const Row&, const Row&) = default;
  };

  std::vector<std::string> seasons;
  std::vector<Row> rows;  // ascending id

  const Row& row(int id) const;
  std::vector<double> column(std::size_t season) const;
  /// Index of the season column with the given name, or -1.
  int season_column(const std::string& name) const;

  friend bool operator==(const SeasonTable&, const SeasonTable&) = default;
};

/// Header `branch_id,<season...>,avg`. digits < 0 writes the shortest
/// round-trip form.
void write_season_table(const SeasonTable& table, const std::filesystem::path& csv, int digits = -1);
SeasonTable read_season_table(const std::filesystem::path& csv);

/// Scenario results CSV:
/// `line_id,season,ignition_idx,burned_cells,burned_acres,affected_line_ids,affected_miles`,
/// affected ids separated by ';'.
void write_results(std::span<const ScenarioResult> results, const std::filesystem::path& csv);
std::vector<ScenarioResult> read_results(const std::filesystem::path& csv);

/// Default season names for the four quarterly ignition dates.
std::vector<std::string> season_names(std::size_t count);

struct StudyReport {
  SeasonTable acres;
  SeasonTable miles;
  std::vector<LineRisk> ranking;  // metric descending, then line id
  std::string source;
  std::string config_hash;
  double duration_hours = 0.0;
  std::vector<std::string> warnings;
};

/// Per line: per-season means over ignitions, then LBE/LBL averaged over
/// seasons, then WFL and the normalized metric.
StudyReport assess_results(std::span<const ScenarioResult> results, const GridNetwork& network,
                           const CostParams& costs, const std::vector<std::string>& seasons);

/// Metric straight from acre and mile tables, using their average columns.
StudyReport assess_tables(const SeasonTable& acres, const SeasonTable& miles, const CostParams& costs);

/// table1.csv, table2.csv, risk.csv, fig6.csv and report.json in `dir`.
void write_report(const StudyReport& report, const std::filesystem::path& dir);
StudyReport read_report(const std::filesystem::path& dir);

/// Ratio of the mean of the "summer" column to the mean of the "winter" column.
double summer_winter_ratio(const SeasonTable& acres);

/// Human-readable summary: top-N ranking, seasonal extremes, summer/winter ratio.
std::string render_summary(const StudyReport& report, int top_n);

}  // namespace wildrisk
