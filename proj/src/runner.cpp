#include "obsent/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <fstream>
#include <functional>
#include <iomanip>
#include <locale>
#include <sstream>
#include <thread>

#include "obsent/analysis.hpp"
#include "obsent/dynamics.hpp"
#include "obsent/errors.hpp"

namespace obsent {

namespace fs = std::filesystem;

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17) << value;
  return os.str();
}

namespace {

// Runs tasks[0..n) on up to `jobs` threads. Each task writes only its own
// result slot, so the output is independent of scheduling. The first failure
// (by task index) is rethrown after all workers finish.
void run_parallel(std::size_t jobs, std::vector<std::function<void()>>& tasks) {
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n_threads = std::max<std::size_t>(1, std::min(jobs, tasks.size()));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

class CsvFile {
 public:
  CsvFile(const fs::path& path, const std::vector<std::string>& header) : path_(path), out_(path) {
    if (!out_) throw ConfigError("cannot write '" + path.string() + "'");
    row(header);
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
  std::ofstream out_;
};

std::string str(std::size_t v) { return std::to_string(v); }
std::string str(double v) { return format_double(v); }
std::string str(Basis b) { return std::string(to_string(b)); }

EigenEntropyRequest eigen_request(const ExperimentConfig& c, std::size_t L, double delta) {
  EigenEntropyRequest r;
  r.L = L;
  r.delta = delta;
  r.ms = c.block_sizes_for(L);
  r.bases = c.bases;
  r.n_phi = c.n_phi;
  r.seed = c.seed;
  r.count = c.mid_spectrum_count;
  r.bc = c.bc;
  r.alpha = c.alpha;
  r.momentum_order = c.momentum_order;
  return r;
}

// Eigenstate sweep over every (L, delta) of the config. results[iL][iD]
// holds the entries for all (basis, m).
std::vector<std::vector<SweepResult>> eigen_grid(const ExperimentConfig& c) {
  const auto nL = c.L_list.size();
  const auto nD = c.delta_list.size();
  std::vector<std::vector<SweepResult>> results(nL, std::vector<SweepResult>(nD));
  std::vector<std::function<void()>> tasks;
  for (std::size_t i = 0; i < nL; ++i) {
    for (std::size_t k = 0; k < nD; ++k) {
      tasks.emplace_back([&, i, k] {
        results[i][k] = eigen_entropy_sweep(eigen_request(c, c.L_list[i], c.delta_list[k]));
      });
    }
  }
  run_parallel(c.jobs, tasks);
  return results;
}

const SweepEntry& find_entry(const SweepResult& r, Basis basis, std::size_t m) {
  for (const auto& e : r.entries) {
    if (e.basis == basis && e.m == m) return e;
  }
  throw NumericalError("missing sweep entry");
}

std::vector<fs::path> write_fig1(const ExperimentConfig& c, const fs::path& dir) {
  const auto grid = eigen_grid(c);
  std::vector<fs::path> files;
  for (auto basis : c.bases) {
    for (std::size_t i = 0; i < c.L_list.size(); ++i) {
      const auto L = c.L_list[i];
      CsvFile csv(dir / ("fig1_" + str(basis) + "_L" + str(L) + ".csv"),
                  {"delta", "m", "mean_S", "stderr_S", "n_phi"});
      for (std::size_t k = 0; k < c.delta_list.size(); ++k) {
        for (auto m : c.block_sizes_for(L)) {
          const auto& e = find_entry(grid[i][k], basis, m);
          csv.row({str(e.delta), str(e.m), str(e.mean_S), str(e.stderr_S), str(c.n_phi)});
        }
      }
      files.push_back(csv.path());
    }
  }
  return files;
}

std::vector<fs::path> write_fig3(const ExperimentConfig& c, const fs::path& dir) {
  const auto times = c.time_grid();
  const auto nL = c.L_list.size();
  const auto nD = c.delta_list.size();
  // series[iL][iD][basis * ms + k]
  std::vector<std::vector<std::vector<EntropySeries>>> series(
      nL, std::vector<std::vector<EntropySeries>>(nD));
  std::vector<std::function<void()>> tasks;
  for (std::size_t i = 0; i < nL; ++i) {
    for (std::size_t k = 0; k < nD; ++k) {
      tasks.emplace_back([&, i, k] {
        const auto L = c.L_list[i];
        QuenchSpec spec;
        spec.params = {L, c.delta_list[k], c.alpha, 0.0, c.bc};
        spec.times = times;
        spec.n_phi = c.n_phi;
        spec.seed = c.seed;
        std::vector<CoarseGraining> cgs;
        const MomentumBasis kb = make_momentum_basis(L);
        for (auto basis : c.bases) {
          for (auto m : c.block_sizes_for(L)) {
            cgs.push_back(make_coarse_graining(L, m, basis, c.momentum_order, &kb));
          }
        }
        series[i][k] = quench_entropy_series(spec, cgs);
      });
    }
  }
  run_parallel(c.jobs, tasks);

  std::vector<fs::path> files;
  for (std::size_t b = 0; b < c.bases.size(); ++b) {
    const auto basis = c.bases[b];
    for (std::size_t i = 0; i < nL; ++i) {
      const auto L = c.L_list[i];
      const auto ms = c.block_sizes_for(L);
      const std::string stem = "fig3_" + str(basis) + "_L" + str(L);
      CsvFile curves(dir / (stem + ".csv"), {"delta", "m", "t", "mean_S", "stderr_S"});
      CsvFile slopes(dir / (stem + "_slopes.csv"),
                     {"delta", "m", "t_lo", "t_hi", "slope", "intercept", "r2", "points"});
      for (std::size_t k = 0; k < nD; ++k) {
        for (std::size_t q = 0; q < ms.size(); ++q) {
          const auto& s = series[i][k][b * ms.size() + q];
          for (std::size_t t = 0; t < s.abscissa.size(); ++t) {
            curves.row({str(c.delta_list[k]), str(ms[q]), str(s.abscissa[t]), str(s.values[t]),
                        str(s.spread[t])});
          }
          const auto fit = fit_log_slope(s.abscissa, s.values, c.fit_t_lo, c.fit_t_hi);
          slopes.row({str(c.delta_list[k]), str(ms[q]), str(c.fit_t_lo), str(c.fit_t_hi),
                      str(fit.slope), str(fit.intercept), str(fit.r2), str(fit.points)});
        }
      }
      files.push_back(curves.path());
      files.push_back(slopes.path());
    }
  }
  return files;
}

std::vector<fs::path> write_fig4(const ExperimentConfig& c, const fs::path& dir) {
  const auto grid = eigen_grid(c);
  std::vector<fs::path> files;
  for (auto basis : c.bases) {
    CsvFile curves(dir / ("fig4_" + str(basis) + ".csv"),
                   {"L", "delta", "m", "mean_S", "stderr_S", "n_phi"});
    for (std::size_t i = 0; i < c.L_list.size(); ++i) {
      for (std::size_t k = 0; k < c.delta_list.size(); ++k) {
        for (auto m : c.block_sizes_for(c.L_list[i])) {
          const auto& e = find_entry(grid[i][k], basis, m);
          curves.row({str(e.L), str(e.delta), str(e.m), str(e.mean_S), str(e.stderr_S),
                      str(c.n_phi)});
        }
      }
    }
    files.push_back(curves.path());

    // Successive differences S(L_i) - S(L_{i-1}) for block sizes shared by all L.
    CsvFile scaling(dir / ("fig4_" + str(basis) + "_scaling.csv"),
                    {"delta", "m", "L", "mean_S", "diff_from_previous"});
    for (std::size_t k = 0; k < c.delta_list.size(); ++k) {
      for (auto m : c.block_sizes_for(c.L_list.front())) {
        bool shared = true;
        for (auto L : c.L_list) shared = shared && L % m == 0;
        if (!shared) continue;
        double prev = std::nan("");
        for (std::size_t i = 0; i < c.L_list.size(); ++i) {
          const auto& e = find_entry(grid[i][k], basis, m);
          scaling.row({str(e.delta), str(m), str(e.L), str(e.mean_S),
                       str(i == 0 ? std::nan("") : e.mean_S - prev)});
          prev = e.mean_S;
        }
      }
    }
    files.push_back(scaling.path());
  }
  return files;
}

std::vector<fs::path> write_fig5(const ExperimentConfig& c, const fs::path& dir) {
  const auto grid = eigen_grid(c);
  const auto ms = c.m_list.empty()
                      ? c.block_sizes_for(*std::min_element(c.L_list.begin(), c.L_list.end()))
                      : c.m_list;
  std::vector<fs::path> files;
  std::string L_set;
  for (auto L : c.L_list) L_set += (L_set.empty() ? "" : ";") + str(L);
  for (auto basis : c.bases) {
    CsvFile curves(dir / ("fig5_" + str(basis) + "_curves.csv"),
                   {"L", "delta", "m", "mean_S", "stderr_S", "n_phi"});
    for (auto m : ms) {
      for (std::size_t i = 0; i < c.L_list.size(); ++i) {
        for (std::size_t k = 0; k < c.delta_list.size(); ++k) {
          const auto& e = find_entry(grid[i][k], basis, m);
          curves.row({str(e.L), str(e.delta), str(e.m), str(e.mean_S), str(e.stderr_S),
                      str(c.n_phi)});
        }
      }
    }
    files.push_back(curves.path());

    CsvFile fluct(dir / ("fig5_" + str(basis) + "_fluctuation.csv"), {"delta", "m", "f", "L_set"});
    for (std::size_t k = 0; k < c.delta_list.size(); ++k) {
      for (auto m : ms) {
        std::vector<double> by_L;
        for (std::size_t i = 0; i < c.L_list.size(); ++i) {
          by_L.push_back(find_entry(grid[i][k], basis, m).mean_S);
        }
        fluct.row({str(c.delta_list[k]), str(m), str(normalized_fluctuation(by_L)), L_set});
      }
    }
    files.push_back(fluct.path());
  }
  return files;
}

std::vector<fs::path> write_custom(const ExperimentConfig& c, const fs::path& dir) {
  const auto grid = eigen_grid(c);
  std::vector<fs::path> files;
  for (auto basis : c.bases) {
    CsvFile csv(dir / ("custom_" + str(basis) + ".csv"),
                {"L", "delta", "m", "mean_S", "stderr_S", "n_phi"});
    for (std::size_t i = 0; i < c.L_list.size(); ++i) {
      for (std::size_t k = 0; k < c.delta_list.size(); ++k) {
        for (auto m : c.block_sizes_for(c.L_list[i])) {
          const auto& e = find_entry(grid[i][k], basis, m);
          csv.row({str(e.L), str(e.delta), str(e.m), str(e.mean_S), str(e.stderr_S),
                   str(c.n_phi)});
        }
      }
    }
    files.push_back(csv.path());
  }
  return files;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace

RunReport run(const ExperimentConfig& config) {
  const auto diagnostics = validate(config);
  if (!diagnostics.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& d : diagnostics) msg += " " + d + ";";
    throw ConfigError(msg);
  }
  const fs::path dir(config.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());

  const auto start = std::chrono::steady_clock::now();
  const std::string started_at = utc_timestamp();
  RunReport report;
  switch (config.preset) {
    case Preset::fig1: report.files = write_fig1(config, dir); break;
    case Preset::fig3: report.files = write_fig3(config, dir); break;
    case Preset::fig4: report.files = write_fig4(config, dir); break;
    case Preset::fig5: report.files = write_fig5(config, dir); break;
    case Preset::custom: report.files = write_custom(config, dir); break;
  }
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  nlohmann::json manifest;
  manifest["tool"] = "obsent";
  manifest["version"] = kVersion;
  manifest["config"] = to_json(config);
  manifest["seed"] = config.seed;
  manifest["n_phi"] = config.n_phi;
  manifest["phase_scheme"] = "mt19937_64(seed_seq{seed_lo, seed_hi, L, r}) first draw -> 2*pi*u";
  manifest["eigen_version"] = std::to_string(EIGEN_WORLD_VERSION) + "." +
                              std::to_string(EIGEN_MAJOR_VERSION) + "." +
                              std::to_string(EIGEN_MINOR_VERSION);
  manifest["compiler"] = __VERSION__;
  manifest["started_at"] = started_at;
  manifest["wall_time_s"] = report.wall_time_s;
  std::vector<std::string> names;
  for (const auto& f : report.files) names.push_back(f.filename().string());
  manifest["files"] = names;

  report.manifest = dir / "manifest.json";
  std::ofstream out(report.manifest);
  if (!out) throw ConfigError("cannot write '" + report.manifest.string() + "'");
  out << manifest.dump(2) << '\n';
  report.files.push_back(report.manifest);
  return report;
}

}  // namespace obsent
