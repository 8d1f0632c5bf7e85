#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "obsent/analysis.hpp"
#include "obsent/entropy.hpp"
#include "obsent/model.hpp"

namespace obsent {

enum class Preset { fig1, fig3, fig4, fig5, custom };

std::string_view to_string(Preset preset);
Preset parse_preset(std::string_view text);

// Full description of one run. Layering is preset defaults, then the config
// file, then command-line flags.
struct ExperimentConfig {
  Preset preset = Preset::custom;
  std::vector<std::size_t> L_list;
  std::vector<double> delta_list;
  // Empty selects every dyadic block size 1, 2, 4, ..., L for each L.
  std::vector<std::size_t> m_list;
  std::vector<Basis> bases{Basis::real};
  Boundary bc = Boundary::open;
  double alpha = kInverseGoldenRatio;
  std::size_t n_phi = kDefaultPhaseCount;
  std::uint64_t seed = 42;

  // Quench time grid: `times` when non-empty, otherwise t = 0 followed by
  // t_points log-spaced values in [t_min, t_max].
  double t_min = 0.1;
  double t_max = 100.0;
  std::size_t t_points = 60;
  std::vector<double> times;
  double fit_t_lo = 3.0;
  double fit_t_hi = 30.0;

  std::size_t mid_spectrum_count = kDefaultMidSpectrumCount;
  MomentumOrder momentum_order = MomentumOrder::dft_index;
  std::size_t jobs = 1;
  std::string output_dir = "obsent-out";

  std::vector<std::size_t> block_sizes_for(std::size_t L) const;
  std::vector<double> time_grid() const;
};

ExperimentConfig preset_defaults(Preset preset);

// Every violation found, without running anything. Empty means valid.
std::vector<std::string> validate(const ExperimentConfig& config);

nlohmann::json to_json(const ExperimentConfig& config);

// Overlays the keys present in `j` onto `base`. Unknown keys and malformed
// values throw ConfigError.
ExperimentConfig apply_json(ExperimentConfig base, const nlohmann::json& j);

// Reads a JSON config file. A "preset" key selects the defaults the other
// keys are layered on.
ExperimentConfig load_config_file(const std::string& path);

}  // namespace obsent
