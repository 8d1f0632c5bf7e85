// obsent: observational entropy sweeps for the Aubry-Andre chain.
//
//   obsent run --preset fig3 --L 256 --delta 1,2,3 --m 1,4,16,256 --n-phi 100 \
//       --seed 42 --bc open --basis real --t-min 0.1 --t-max 100 --t-points 60 \
//       --jobs 4 --out DIR
//   obsent validate --config FILE
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure. Errors
// are reported on stderr as a single JSON object.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "obsent/config.hpp"
#include "obsent/errors.hpp"
#include "obsent/runner.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Overrides {
  std::string preset;
  std::string config_file;
  std::vector<std::size_t> L;
  std::vector<double> delta;
  std::vector<std::size_t> m;
  std::vector<std::string> basis;
  std::string bc;
  std::optional<double> alpha;
  std::optional<std::size_t> n_phi;
  std::optional<std::uint64_t> seed;
  std::optional<double> t_min;
  std::optional<double> t_max;
  std::optional<std::size_t> t_points;
  std::vector<double> fit_window;
  std::optional<std::size_t> count;
  std::string momentum_order;
  std::optional<std::size_t> jobs;
  std::string out;
};

void add_grid_options(CLI::App& cmd, Overrides& o) {
  cmd.add_option("--preset", o.preset, "fig1 | fig3 | fig4 | fig5 | custom");
  cmd.add_option("--config", o.config_file, "JSON config file (flags override its values)");
  cmd.add_option("--L", o.L, "system sizes, powers of 2")->delimiter(',');
  cmd.add_option("--delta", o.delta, "potential strengths")->delimiter(',');
  cmd.add_option("--m", o.m, "block sizes (default: all dyadic up to L)")->delimiter(',');
  cmd.add_option("--basis", o.basis, "real | momentum")->delimiter(',');
  cmd.add_option("--bc", o.bc, "open | periodic");
  cmd.add_option("--alpha", o.alpha, "incommensurate frequency");
  cmd.add_option("--n-phi", o.n_phi, "phase realizations");
  cmd.add_option("--seed", o.seed, "root seed");
  cmd.add_option("--t-min", o.t_min, "first non-zero time");
  cmd.add_option("--t-max", o.t_max, "last time");
  cmd.add_option("--t-points", o.t_points, "log-spaced times after t = 0");
  cmd.add_option("--fit-window", o.fit_window, "t_lo,t_hi for the ln t fit")
      ->delimiter(',')
      ->expected(2);
  cmd.add_option("--count", o.count, "mid-spectrum states per realization");
  cmd.add_option("--momentum-order", o.momentum_order, "dft_index | kinetic_energy");
  cmd.add_option("--jobs", o.jobs, "worker threads")->envname("OBSENT_JOBS");
  cmd.add_option("--out", o.out, "output directory");
}

obsent::ExperimentConfig build_config(const Overrides& o) {
  using namespace obsent;
  ExperimentConfig c = o.config_file.empty() ? preset_defaults(Preset::custom)
                                             : load_config_file(o.config_file);
  if (!o.preset.empty()) {
    const Preset p = parse_preset(o.preset);
    // A preset flag restores that preset's defaults; explicit config-file
    // values only survive when they name the same preset.
    if (o.config_file.empty() || c.preset != p) c = preset_defaults(p);
  }
  nlohmann::json j = nlohmann::json::object();
  if (!o.L.empty()) j["L"] = o.L;
  if (!o.delta.empty()) j["delta"] = o.delta;
  if (!o.m.empty()) j["m"] = o.m;
  if (!o.basis.empty()) j["basis"] = o.basis;
  if (!o.bc.empty()) j["bc"] = o.bc;
  if (o.alpha) j["alpha"] = *o.alpha;
  if (o.n_phi) j["n_phi"] = *o.n_phi;
  if (o.seed) j["seed"] = *o.seed;
  if (o.t_min) j["t_min"] = *o.t_min;
  if (o.t_max) j["t_max"] = *o.t_max;
  if (o.t_points) j["t_points"] = *o.t_points;
  if (!o.fit_window.empty()) j["fit_window"] = o.fit_window;
  if (o.count) j["mid_spectrum_count"] = *o.count;
  if (!o.momentum_order.empty()) j["momentum_order"] = o.momentum_order;
  if (o.jobs) j["jobs"] = *o.jobs;
  if (!o.out.empty()) j["out"] = o.out;
  return apply_json(std::move(c), j);
}

void report_error(const char* kind, const std::string& message,
                  const std::vector<std::string>& diagnostics = {}) {
  nlohmann::json j;
  j["status"] = "error";
  j["kind"] = kind;
  j["message"] = message;
  if (!diagnostics.empty()) j["diagnostics"] = diagnostics;
  std::cerr << j.dump() << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Observational entropy of the Aubry-Andre model"};
  app.require_subcommand(1);

  Overrides run_opts;
  auto* run_cmd = app.add_subcommand("run", "run a sweep and write CSV + manifest");
  add_grid_options(*run_cmd, run_opts);

  Overrides val_opts;
  auto* val_cmd = app.add_subcommand("validate", "check a configuration without running it");
  add_grid_options(*val_cmd, val_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("usage", e.what());
    return kExitConfig;
  }

  const bool validating = val_cmd->parsed();
  const Overrides& opts = validating ? val_opts : run_opts;
  try {
    const auto config = build_config(opts);
    const auto diagnostics = obsent::validate(config);
    if (validating) {
      nlohmann::json j;
      j["valid"] = diagnostics.empty();
      j["diagnostics"] = diagnostics;
      j["config"] = obsent::to_json(config);
      std::cout << j.dump(2) << std::endl;
      return diagnostics.empty() ? EXIT_SUCCESS : kExitConfig;
    }
    if (!diagnostics.empty()) {
      report_error("config", "invalid configuration", diagnostics);
      return kExitConfig;
    }
    const auto report = obsent::run(config);
    for (const auto& f : report.files) std::cout << f.string() << '\n';
    return EXIT_SUCCESS;
  } catch (const obsent::ConfigError& e) {
    report_error("config", e.what());
    return kExitConfig;
  } catch (const obsent::NumericalError& e) {
    report_error("numerical", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    report_error("numerical", e.what());
    return kExitNumerical;
  }
}
