#include "wildrisk/study_config.hpp"

#include "text_util.hpp"
#include "wildrisk/error.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace wildrisk {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"paths", {"landscape", "fuel_catalog", "network", "weather", "results", "report"}},
      {"study", {"ignitions_per_line", "year", "ignition_hour", "seasons", "duration_hours", "placement", "seed",
                 "lines", "workers"}},
      {"spread", {"neighborhood", "humidity_ref", "min_ros", "max_eccentricity"}},
      {"costs", {"cbe", "cbl", "buffer_cells"}},
      {"synth", {"cells", "cell_size", "year", "seed"}},
  };
  return keys;
}

template <typename T>
void read(const pt::ptree& tree, const std::string& key, T& out) {
  const auto node = tree.get_child_optional(pt::ptree::path_type(key, '.'));
  if (!node) return;
  const std::string raw(detail::trim(node->data()));
  if constexpr (std::is_same_v<T, std::string>) {
    out = raw;
  } else if constexpr (std::is_integral_v<T>) {
    long long v = 0;
    if (!detail::parse_int(raw, v) || (std::is_unsigned_v<T> && v < 0)) {
      fail(ErrorKind::kConfig, "'" + key + "' must be an integer, got '" + raw + "'");
    }
    out = static_cast<T>(v);
  } else {
    double v = 0.0;
    if (!detail::parse_double(raw, v)) fail(ErrorKind::kConfig, "'" + key + "' must be a number, got '" + raw + "'");
    out = v;
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  if (p.empty()) return {};
  const std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

}  // namespace

StudyFile parse_study_ini(const std::string& text, const std::filesystem::path& base_dir,
                          const std::vector<std::string>& overrides) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    fail(ErrorKind::kConfig, std::string("cannot parse config: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  for (const std::string& o : overrides) {
    const auto eq = o.find('=');
    const auto dot = o.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
      fail(ErrorKind::kConfig, "override '" + o + "' must look like section.key=value");
    }
    tree.put(pt::ptree::path_type(std::string(detail::trim(o.substr(0, eq))), '.'),
             std::string(detail::trim(o.substr(eq + 1))));
  }
  for (const auto& [section, child] : tree) {
    const auto it = known_keys().find(section);
    if (it == known_keys().end() || child.empty()) fail(ErrorKind::kConfig, "unknown section [" + section + "]");
    for (const auto& [key, value] : child) {
      if (!it->second.contains(key)) fail(ErrorKind::kConfig, "unknown key '" + key + "' in [" + section + "]");
    }
  }

  StudyFile f;
  std::string landscape, catalog, network, weather, results, report;
  read(tree, "paths.landscape", landscape);
  read(tree, "paths.fuel_catalog", catalog);
  read(tree, "paths.network", network);
  read(tree, "paths.weather", weather);
  read(tree, "paths.results", results);
  read(tree, "paths.report", report);
  if (!landscape.empty()) f.paths.landscape = landscape;
  if (!catalog.empty()) f.paths.fuel_catalog = catalog;
  if (!network.empty()) f.paths.network = network;
  if (!weather.empty()) f.paths.weather = weather;
  if (!results.empty()) f.paths.results = results;
  if (!report.empty()) f.paths.report = report;
  for (auto* p : {&f.paths.landscape, &f.paths.fuel_catalog, &f.paths.network, &f.paths.weather, &f.paths.results,
                  &f.paths.report}) {
    *p = resolve(base_dir, p->string());
  }

  StudyConfig& s = f.study;
  read(tree, "study.ignitions_per_line", s.ignitions_per_line);
  read(tree, "study.year", f.year);
  read(tree, "study.ignition_hour", f.ignition_hour);
  read(tree, "study.duration_hours", s.duration_hours);
  read(tree, "study.seed", s.seed);
  read(tree, "study.workers", f.workers);
  std::string placement = "even";
  read(tree, "study.placement", placement);
  if (placement == "even") s.placement = Placement::kEven;
  else if (placement == "seeded-random") s.placement = Placement::kSeededRandom;
  else fail(ErrorKind::kConfig, "placement must be 'even' or 'seeded-random', got '" + placement + "'");

  std::string seasons;
  read(tree, "study.seasons", seasons);
  try {
    if (seasons.empty()) {
      s.seasons = season_starts(f.year, f.ignition_hour);
    } else {
      s.seasons.clear();
      for (const std::string& t : detail::split(seasons)) s.seasons.push_back(parse_instant(t));
    }
  } catch (const Error& e) {
    fail(ErrorKind::kConfig, e.what());
  }
  std::string lines;
  read(tree, "study.lines", lines);
  if (!lines.empty()) {
    for (const std::string& t : detail::split(lines)) {
      long long id = 0;
      if (!detail::parse_int(t, id)) fail(ErrorKind::kConfig, "'study.lines' must list integers, got '" + t + "'");
      s.lines.push_back(static_cast<int>(id));
    }
  }

  read(tree, "spread.neighborhood", s.spread.neighborhood);
  read(tree, "spread.humidity_ref", s.spread.humidity_ref);
  read(tree, "spread.min_ros", s.spread.min_ros);
  read(tree, "spread.max_eccentricity", s.spread.max_eccentricity);
  read(tree, "costs.cbe", s.costs.cbe);
  read(tree, "costs.cbl", s.costs.cbl);
  read(tree, "costs.buffer_cells", s.buffer_cells);
  read(tree, "synth.cells", f.synth.cells);
  read(tree, "synth.cell_size", f.synth.cell_size);
  read(tree, "synth.year", f.synth.year);
  read(tree, "synth.seed", f.synth.seed);

  try {
    s.validate();
  } catch (const Error& e) {
    fail(ErrorKind::kConfig, e.what());
  }
  if (f.workers < 1) fail(ErrorKind::kConfig, "workers must be >= 1");
  if (f.synth.cells < 1 || !(f.synth.cell_size > 0.0)) fail(ErrorKind::kConfig, "synth grid must be positive");
  return f;
}

StudyFile load_study_file(const std::filesystem::path& ini, const std::vector<std::string>& overrides) {
  if (!std::filesystem::exists(ini)) fail(ErrorKind::kConfig, "config file '" + ini.string() + "' not found");
  return parse_study_ini(detail::read_file(ini), ini.parent_path(), overrides);
}

std::string to_ini(const StudyFile& f) {
  const StudyConfig& s = f.study;
  std::ostringstream os;
  os << "[paths]\n"
     << "landscape = " << f.paths.landscape.string() << "\n";
  if (!f.paths.fuel_catalog.empty()) os << "fuel_catalog = " << f.paths.fuel_catalog.string() << "\n";
  os << "network = " << f.paths.network.string() << "\n"
     << "weather = " << f.paths.weather.string() << "\n"
     << "results = " << f.paths.results.string() << "\n"
     << "report = " << f.paths.report.string() << "\n\n";
  os << "[study]\n"
     << "ignitions_per_line = " << s.ignitions_per_line << "\n"
     << "year = " << f.year << "\n"
     << "ignition_hour = " << f.ignition_hour << "\n"
     << "seasons = ";
  for (std::size_t i = 0; i < s.seasons.size(); ++i) os << (i ? "," : "") << format_instant(s.seasons[i]);
  os << "\n"
     << "duration_hours = " << detail::format_double(s.duration_hours) << "\n"
     << "placement = " << (s.placement == Placement::kEven ? "even" : "seeded-random") << "\n"
     << "seed = " << s.seed << "\n";
  if (!s.lines.empty()) {
    os << "lines = ";
    for (std::size_t i = 0; i < s.lines.size(); ++i) os << (i ? "," : "") << s.lines[i];
    os << "\n";
  }
  os << "workers = " << f.workers << "\n\n";
  os << "[spread]\n"
     << "neighborhood = " << s.spread.neighborhood << "\n"
     << "humidity_ref = " << detail::format_double(s.spread.humidity_ref) << "\n"
     << "min_ros = " << detail::format_double(s.spread.min_ros) << "\n"
     << "max_eccentricity = " << detail::format_double(s.spread.max_eccentricity) << "\n\n";
  os << "[costs]\n"
     << "cbe = " << detail::format_double(s.costs.cbe) << "\n"
     << "cbl = " << detail::format_double(s.costs.cbl) << "\n"
     << "buffer_cells = " << s.buffer_cells << "\n\n";
  os << "[synth]\n"
     << "cells = " << f.synth.cells << "\n"
     << "cell_size = " << detail::format_double(f.synth.cell_size) << "\n"
     << "year = " << f.synth.year << "\n"
     << "seed = " << f.synth.seed << "\n";
  return os.str();
}

std::string config_hash(const StudyFile& f) {
  // Workers never change results, so they stay out of the hash.
  StudyFile copy = f;
  copy.workers = 1;
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(detail::fnv1a(to_ini(copy))));
  return buf;
}

}  // namespace wildrisk
