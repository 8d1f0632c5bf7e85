#include "obsent/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "obsent/dynamics.hpp"
#include "obsent/errors.hpp"

namespace obsent {

namespace {

std::vector<double> delta_range(double lo, double hi, double step) {
  std::vector<double> out;
  const auto n = static_cast<int>(std::lround((hi - lo) / step));
  for (int i = 0; i <= n; ++i) {
    // Round to 1e-12 so 0.2 * 11 prints as 2.2 rather than 2.2000000000000002.
    out.push_back(std::round((lo + step * i) * 1e12) / 1e12);
  }
  return out;
}

template <typename T>
T get_as(const nlohmann::json& j, const char* key) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type");
  }
}

// Accepts either a scalar or an array for list-valued keys.
template <typename T>
std::vector<T> get_list(const nlohmann::json& j, const char* key) {
  if (j.is_array()) return get_as<std::vector<T>>(j, key);
  return {get_as<T>(j, key)};
}

}  // namespace

std::string_view to_string(Preset preset) {
  switch (preset) {
    case Preset::fig1: return "fig1";
    case Preset::fig3: return "fig3";
    case Preset::fig4: return "fig4";
    case Preset::fig5: return "fig5";
    case Preset::custom: return "custom";
  }
  return "custom";
}

Preset parse_preset(std::string_view text) {
  for (auto p : {Preset::fig1, Preset::fig3, Preset::fig4, Preset::fig5, Preset::custom}) {
    if (text == to_string(p)) return p;
  }
  throw ConfigError("unknown preset '" + std::string(text) + "'");
}

std::vector<std::size_t> ExperimentConfig::block_sizes_for(std::size_t L) const {
  return m_list.empty() ? dyadic_block_sizes(L) : m_list;
}

std::vector<double> ExperimentConfig::time_grid() const {
  if (!times.empty()) return times;
  return log_time_grid(t_min, t_max, t_points, true);
}

ExperimentConfig preset_defaults(Preset preset) {
  ExperimentConfig c;
  c.preset = preset;
  switch (preset) {
    case Preset::fig1:
      c.L_list = {256};
      c.delta_list = {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 6.0, 10.0};
      break;
    case Preset::fig3:
      c.L_list = {256};
      c.delta_list = {1.0, 2.0, 3.0};
      c.m_list = {1, 4, 16, 256};
      break;
    case Preset::fig4:
      c.L_list = {128, 256};
      c.delta_list = delta_range(0.0, 5.0, 0.25);
      c.m_list = {1, 2, 4, 8};
      c.bases = {Basis::real, Basis::momentum};
      break;
    case Preset::fig5:
      c.L_list = {16, 32, 64, 128};
      c.delta_list = delta_range(0.2, 4.0, 0.2);
      c.m_list = {1, 2, 4};
      break;
    case Preset::custom:
      c.L_list = {64};
      c.delta_list = {1.0};
      break;
  }
  return c;
}

std::vector<std::string> validate(const ExperimentConfig& c) {
  std::vector<std::string> diag;
  if (c.L_list.empty()) diag.push_back("empty L list");
  for (auto L : c.L_list) {
    if (L < 2) diag.push_back("L=" + std::to_string(L) + ": L must be at least 2");
    if (!is_power_of_two(L)) diag.push_back("L=" + std::to_string(L) + ": L not a power of 2");
  }
  if (c.delta_list.empty()) diag.push_back("empty delta list");
  for (double d : c.delta_list) {
    if (!(d >= 0.0) || !std::isfinite(d)) {
      diag.push_back("delta=" + std::to_string(d) + ": delta must be finite and non-negative");
    }
  }
  for (auto m : c.m_list) {
    if (m == 0) {
      diag.push_back("m=0: block size must be positive");
      continue;
    }
    for (auto L : c.L_list) {
      if (L % m != 0) {
        diag.push_back("m=" + std::to_string(m) + ", L=" + std::to_string(L) +
                       ": m does not divide L");
      }
    }
  }
  if (c.bases.empty()) diag.push_back("empty basis list");
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) diag.push_back("alpha must lie in (0, 1)");
  if (c.n_phi == 0) diag.push_back("n_phi must be at least 1");
  if (c.jobs == 0) diag.push_back("jobs must be at least 1");
  if (c.output_dir.empty()) diag.push_back("empty output directory");

  const bool needs_states = c.preset != Preset::fig3;
  if (needs_states) {
    if (c.mid_spectrum_count == 0) diag.push_back("mid_spectrum_count must be at least 1");
    for (auto L : c.L_list) {
      if (c.mid_spectrum_count > L) {
        diag.push_back("L=" + std::to_string(L) + ": mid_spectrum_count exceeds L");
      }
    }
  }
  if (c.preset == Preset::fig5 && c.L_list.size() < 2) {
    diag.push_back("fig5 needs at least two system sizes for the fluctuation f");
  }

  if (c.preset == Preset::fig3) {
    std::vector<double> grid;
    if (!c.times.empty()) {
      grid = c.times;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= 0.0)) diag.push_back("times must be non-negative");
        if (i > 0 && !(grid[i] > grid[i - 1])) diag.push_back("times must be strictly ascending");
      }
    } else if (c.t_points == 0) {
      diag.push_back("empty time grid");
    } else if (!(c.t_min > 0.0) || !(c.t_max > c.t_min)) {
      diag.push_back("time grid needs 0 < t_min < t_max");
    } else {
      grid = c.time_grid();
    }
    if (!grid.empty()) {
      const auto inside = std::count_if(grid.begin(), grid.end(), [&](double t) {
        return t > 0.0 && t >= c.fit_t_lo && t <= c.fit_t_hi;
      });
      if (static_cast<std::size_t>(inside) < kMinFitWindowPoints) {
        diag.push_back("fit window holds " + std::to_string(inside) + " time points, need " +
                       std::to_string(kMinFitWindowPoints));
      }
    }
  }
  return diag;
}

nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["preset"] = to_string(c.preset);
  j["L"] = c.L_list;
  j["delta"] = c.delta_list;
  j["m"] = c.m_list;
  std::vector<std::string> bases;
  for (auto b : c.bases) bases.emplace_back(to_string(b));
  j["basis"] = bases;
  j["bc"] = to_string(c.bc);
  j["alpha"] = c.alpha;
  j["n_phi"] = c.n_phi;
  j["seed"] = c.seed;
  j["t_min"] = c.t_min;
  j["t_max"] = c.t_max;
  j["t_points"] = c.t_points;
  j["times"] = c.times;
  j["fit_window"] = {c.fit_t_lo, c.fit_t_hi};
  j["mid_spectrum_count"] = c.mid_spectrum_count;
  j["momentum_order"] = to_string(c.momentum_order);
  j["jobs"] = c.jobs;
  j["out"] = c.output_dir;
  return j;
}

ExperimentConfig apply_json(ExperimentConfig c, const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known{
      "preset", "L",        "delta", "m",      "basis",      "bc",
      "alpha",  "n_phi",    "seed",  "t_min",  "t_max",      "t_points",
      "times",  "fit_window", "mid_spectrum_count", "momentum_order", "jobs", "out"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  if (j.contains("preset")) c.preset = parse_preset(get_as<std::string>(j["preset"], "preset"));
  if (j.contains("L")) c.L_list = get_list<std::size_t>(j["L"], "L");
  if (j.contains("delta")) c.delta_list = get_list<double>(j["delta"], "delta");
  if (j.contains("m")) c.m_list = get_list<std::size_t>(j["m"], "m");
  if (j.contains("basis")) {
    c.bases.clear();
    for (const auto& s : get_list<std::string>(j["basis"], "basis")) c.bases.push_back(parse_basis(s));
  }
  if (j.contains("bc")) c.bc = parse_boundary(get_as<std::string>(j["bc"], "bc"));
  if (j.contains("alpha")) c.alpha = get_as<double>(j["alpha"], "alpha");
  if (j.contains("n_phi")) c.n_phi = get_as<std::size_t>(j["n_phi"], "n_phi");
  if (j.contains("seed")) c.seed = get_as<std::uint64_t>(j["seed"], "seed");
  if (j.contains("t_min")) c.t_min = get_as<double>(j["t_min"], "t_min");
  if (j.contains("t_max")) c.t_max = get_as<double>(j["t_max"], "t_max");
  if (j.contains("t_points")) c.t_points = get_as<std::size_t>(j["t_points"], "t_points");
  if (j.contains("times")) c.times = get_list<double>(j["times"], "times");
  if (j.contains("fit_window")) {
    const auto w = get_as<std::vector<double>>(j["fit_window"], "fit_window");
    if (w.size() != 2) throw ConfigError("fit_window must be [t_lo, t_hi]");
    c.fit_t_lo = w[0];
    c.fit_t_hi = w[1];
  }
  if (j.contains("mid_spectrum_count")) {
    c.mid_spectrum_count = get_as<std::size_t>(j["mid_spectrum_count"], "mid_spectrum_count");
  }
  if (j.contains("momentum_order")) {
    c.momentum_order = parse_momentum_order(get_as<std::string>(j["momentum_order"], "momentum_order"));
  }
  if (j.contains("jobs")) c.jobs = get_as<std::size_t>(j["jobs"], "jobs");
  if (j.contains("out")) c.output_dir = get_as<std::string>(j["out"], "out");
  return c;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  ExperimentConfig base;
  if (j.is_object() && j.contains("preset")) {
    base = preset_defaults(parse_preset(get_as<std::string>(j["preset"], "preset")));
  } else {
    base = preset_defaults(Preset::custom);
  }
  return apply_json(std::move(base), j);
}

}  // namespace obsent
