#pragma once

#include "wildrisk/scenario.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace wildrisk {

struct StudyPaths {
  std::filesystem::path landscape = "landscape";
  std::filesystem::path fuel_catalog;  // empty: built-in catalog
  std::filesystem::path network = "network.json";
  std::filesystem::path weather = "weather.csv";
  std::filesystem::path results = "results.csv";
  std::filesystem::path report = "report";
};

struct SynthSettings {
  int cells = 128;
  double cell_size = 30.0;
  int year = 2022;
  std::uint64_t seed = 42;
};

/// Everything a study run needs: input/output paths, the study itself and
/// the fixture generator settings.
struct StudyFile {
  StudyPaths paths;
  StudyConfig study;
  SynthSettings synth;
  int year = 2022;
  int ignition_hour = 12;
  int workers = 1;
};

/// INI text with sections [paths], [study], [spread], [costs] and [synth].
/// Relative paths are resolved against `base_dir`. Unknown keys and values of
/// the wrong type are config errors.
/// `overrides` are "section.key=value" assignments applied on top of the text.
StudyFile parse_study_ini(const std::string& text, const std::filesystem::path& base_dir,
                          const std::vector<std::string>& overrides = {});
StudyFile load_study_file(const std::filesystem::path& ini, const std::vector<std::string>& overrides = {});

/// Canonical INI rendering; paths are written as stored.
std::string to_ini(const StudyFile& file);

/// Hex FNV-1a of the canonical rendering.
std::string config_hash(const StudyFile& file);

}  // namespace wildrisk
