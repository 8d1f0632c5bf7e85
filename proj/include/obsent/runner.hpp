#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "obsent/config.hpp"

namespace obsent {

inline constexpr const char* kVersion = "0.1.0";

struct RunReport {
  std::vector<std::filesystem::path> files;  // CSVs, then the manifest
  std::filesystem::path manifest;
  double wall_time_s = 0.0;
};

// Runs the configured sweep and writes one CSV per panel plus manifest.json
// into config.output_dir. CSV bodies depend only on the config (not on jobs
// or wall time). Throws ConfigError with every diagnostic when the config is
// invalid, NumericalError on numerical failure.
RunReport run(const ExperimentConfig& config);

// 17 significant digits, '.' decimal separator.
std::string format_double(double value);

}  // namespace obsent
