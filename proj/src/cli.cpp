#include "wildrisk/cli.hpp"

#include "text_util.hpp"
#include "wildrisk/error.hpp"
#include "wildrisk/fixtures.hpp"
#include "wildrisk/report.hpp"
#include "wildrisk/scenario.hpp"
#include "wildrisk/study_config.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <optional>
#include <ostream>
#include <thread>

namespace wildrisk {

namespace fs = std::filesystem;

namespace {

struct GlobalOptions {
  std::string config;
  std::optional<int> workers;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::vector<std::string> overrides;
};

StudyFile load_config(const GlobalOptions& g) {
  std::vector<std::string> overrides = g.overrides;
  if (g.seed) {
    overrides.push_back("study.seed=" + std::to_string(*g.seed));
    overrides.push_back("synth.seed=" + std::to_string(*g.seed));
  }
  if (g.workers) overrides.push_back("study.workers=" + std::to_string(*g.workers));
  if (g.config.empty()) return parse_study_ini("", fs::current_path(), overrides);
  return load_study_file(g.config, overrides);
}

FuelCatalog load_catalog(const StudyFile& f) {
  return f.paths.fuel_catalog.empty() ? FuelCatalog::defaults() : load_fuel_catalog(f.paths.fuel_catalog);
}

fs::path meta_path(const fs::path& results) {
  fs::path p = results;
  p += ".meta.json";
  return p;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) fail(ErrorKind::kIo, "cannot create directory '" + dir.string() + "'");
}

int cmd_synth(const GlobalOptions& g, std::ostream& out) {
  StudyFile f = load_config(g);
  const fs::path dir = g.out.empty() ? fs::path("study") : fs::path(g.out);
  ensure_dir(dir);

  const LandscapeRaster land = foothill_landscape(f.synth.seed, f.synth.cells, f.synth.cell_size);
  write_landscape(land, dir / "landscape");
  write_fuel_catalog(FuelCatalog::defaults(), dir / "fuel_catalog.csv");
  write_network(ieee30_network(land.frame), dir / "network.json");
  write_weather(synth_weather(f.synth.year, f.synth.seed), dir / "weather.csv");
  write_season_table(ieee30_reference_acres(), dir / "table1.csv");
  write_season_table(ieee30_reference_miles(), dir / "table2.csv");

  StudyFile written = f;
  written.paths = StudyPaths{};
  written.paths.fuel_catalog = "fuel_catalog.csv";
  written.year = f.synth.year;
  written.study.seasons = season_starts(written.year, written.ignition_hour);
  written.workers = 1;
  detail::write_file(dir / "study.ini", to_ini(written));
  out << "wrote synthetic study to " << dir.string() << "\n";
  return kExitOk;
}

int cmd_simulate(const GlobalOptions& g, const std::string& dump_dir, std::ostream& out, std::ostream& err) {
  const StudyFile f = load_config(g);
  for (const fs::path& p : {f.paths.weather, f.paths.network}) {
    if (!fs::exists(p)) fail(ErrorKind::kIo, "input file '" + p.string() + "' not found");
  }
  const FuelCatalog catalog = load_catalog(f);
  const LandscapeRaster land = load_landscape(f.paths.landscape, catalog);
  const WeatherSeries weather = load_weather(f.paths.weather);
  const GridNetwork network = load_network(f.paths.network);

  const std::vector<IgnitionSpec> specs = build_matrix(network, land.frame, f.study);
  const int workers = g.workers ? *g.workers : std::max(1u, std::thread::hardware_concurrency());
  const BatchResult batch = run_batch(specs, {land, catalog, weather, network}, f.study, workers);

  const fs::path results = g.out.empty() ? f.paths.results : fs::path(g.out) / "results.csv";
  if (results.has_parent_path()) ensure_dir(results.parent_path());
  write_results(batch.results, results);

  nlohmann::ordered_json meta;
  meta["config_hash"] = config_hash(f);
  meta["scenarios"] = batch.results.size();
  meta["duration_hours"] = f.study.duration_hours;
  meta["seasons"] = nlohmann::json::array();
  for (Instant t : f.study.seasons) meta["seasons"].push_back(format_instant(t));
  meta["warnings"] = batch.warnings;
  detail::write_file(meta_path(results), meta.dump(2) + "\n");

  if (!dump_dir.empty()) {
    ensure_dir(dump_dir);
    const SpreadSimulator sim(land, catalog, f.study.spread);
    for (const IgnitionSpec& s : specs) {
      const std::string name = "burn_l" + std::to_string(s.line_id) + "_s" + std::to_string(s.season_index) + "_i" +
                               std::to_string(s.ignition_index) + ".asc";
      write_arrival_grid(sim.simulate(s, weather), land.frame, fs::path(dump_dir) / name);
    }
  }

  out << "simulated " << batch.results.size() << " scenarios -> " << results.string() << "\n";
  if (!batch.warnings.empty()) err << batch.warnings.size() << " scenario warning(s); see " << meta_path(results).string() << "\n";
  return kExitOk;
}

int cmd_assess(const GlobalOptions& g, const std::string& results_arg, const std::vector<std::string>& tables,
               std::ostream& out) {
  const StudyFile f = load_config(g);
  const fs::path dir = g.out.empty() ? f.paths.report : fs::path(g.out);
  StudyReport rep;
  if (!tables.empty()) {
    rep = assess_tables(read_season_table(tables.at(0)), read_season_table(tables.at(1)), f.study.costs);
    rep.config_hash = config_hash(f);
  } else {
    const fs::path results = results_arg.empty() ? f.paths.results : fs::path(results_arg);
    const std::vector<ScenarioResult> rows = read_results(results);
    const GridNetwork network = load_network(f.paths.network);
    std::vector<std::string> names;
    rep = assess_results(rows, network, f.study.costs, names);
    rep.config_hash = config_hash(f);
    rep.duration_hours = f.study.duration_hours;
    if (fs::exists(meta_path(results))) {
      try {
        const auto meta = nlohmann::json::parse(detail::read_file(meta_path(results)));
        rep.config_hash = meta.value("config_hash", rep.config_hash);
        rep.duration_hours = meta.value("duration_hours", rep.duration_hours);
        rep.warnings = meta.value("warnings", std::vector<std::string>{});
      } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::kInvalidInput, meta_path(results).string() + ": " + e.what());
      }
    }
  }
  write_report(rep, dir);
  const LineRisk& top = rep.ranking.front();
  out << "assessed " << rep.ranking.size() << " lines; highest risk: line " << top.line_id << " -> " << dir.string()
      << "\n";
  return kExitOk;
}

int cmd_report(const GlobalOptions& g, const std::string& dir_arg, int top, std::ostream& out) {
  fs::path dir = dir_arg;
  if (dir.empty()) dir = load_config(g).paths.report;
  out << render_summary(read_report(dir), top);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grid-ignited wildfire risk engine"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions g;
  int workers = 0;
  std::uint64_t seed = 0;
  app.add_option("--config", g.config, "Study configuration (INI)");
  auto* workers_opt = app.add_option("--workers", workers, "Worker threads for the scenario batch")->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "Seed for synthetic fixtures and random placement");
  app.add_option("--out", g.out, "Output directory");
  app.add_option("--set", g.overrides, "Override a config value: section.key=value");

  auto* synth = app.add_subcommand("synth", "Write the synthetic IEEE 30-bus study fixtures");
  auto* simulate = app.add_subcommand("simulate", "Run the scenario batch and write per-scenario results");
  std::string dump_dir;
  simulate->add_option("--dump-burns", dump_dir, "Directory for per-scenario arrival-time grids");
  auto* assess = app.add_subcommand("assess", "Compute losses, risk metric and ranking");
  std::string results_arg;
  std::vector<std::string> tables;
  assess->add_option("results", results_arg, "Scenario results CSV");
  assess->add_option("--from-tables", tables, "Assess acre and mile tables directly")->expected(2);
  auto* report = app.add_subcommand("report", "Print a summary of an assessment");
  std::string report_dir;
  int top = 10;
  report->add_option("dir", report_dir, "Report directory");
  report->add_option("--top", top, "Number of ranked lines to print")->check(CLI::NonNegativeNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  if (*workers_opt) g.workers = workers;
  if (*seed_opt) g.seed = seed;

  try {
    if (*synth) return cmd_synth(g, out);
    if (*simulate) return cmd_simulate(g, dump_dir, out, err);
    if (*assess) return cmd_assess(g, results_arg, tables, out);
    if (*report) return cmd_report(g, report_dir, top, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::kInvariant ? kExitInternal : kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInput;
}

}  // namespace wildrisk
