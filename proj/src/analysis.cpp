#include "obsent/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "obsent/errors.hpp"
#include "obsent/sampling.hpp"

namespace obsent {

namespace {

constexpr double kTieTolerance = 1e-12;

}  // namespace

std::vector<std::size_t> mid_spectrum_indices(const EigenSystem& eig, std::size_t count) {
  const std::size_t n = eig.size();
  if (count > n) {
    throw ConfigError("requested " + std::to_string(count) + " mid-spectrum states out of " +
                      std::to_string(n));
  }
  const auto E = [&](std::size_t i) { return eig.energies(static_cast<Eigen::Index>(i)); };
  // First index with E >= 0; candidates grow outwards from there.
  std::size_t right = 0;
  while (right < n && E(right) < 0.0) ++right;
  std::size_t left = right;  // next candidate on the negative side is left - 1

  std::vector<std::size_t> picked;
  picked.reserve(count);
  while (picked.size() < count) {
    const bool have_left = left > 0;
    const bool have_right = right < n;
    bool take_left;
    if (have_left && have_right) {
      const double dl = std::abs(E(left - 1));
      const double dr = std::abs(E(right));
      take_left = dl <= dr + kTieTolerance;
    } else {
      take_left = have_left;
    }
    if (take_left) {
      picked.push_back(--left);
    } else {
      picked.push_back(right++);
    }
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

std::vector<PureState> mid_spectrum_states(const EigenSystem& eig, std::size_t count) {
  std::vector<PureState> out;
  for (auto i : mid_spectrum_indices(eig, count)) out.push_back(eigenstate(eig, i));
  return out;
}

SweepResult eigen_entropy_sweep(const EigenEntropyRequest& req) {
  ModelParams base{req.L, req.delta, req.alpha, 0.0, req.bc};
  base.validate();
  if (req.n_phi == 0) throw ConfigError("n_phi must be at least 1");
  if (req.ms.empty() || req.bases.empty()) throw ConfigError("empty coarse-graining grid");
  const std::size_t count = req.selection == StateSelection::ground_state ? 1 : req.count;
  if (count == 0 || count > req.L) throw ConfigError("state count must lie in 1..L");

  const bool need_momentum =
      std::find(req.bases.begin(), req.bases.end(), Basis::momentum) != req.bases.end();
  std::optional<MomentumBasis> kbasis;
  if (need_momentum) kbasis = make_momentum_basis(req.L);

  // cgs[b * ms.size() + k] for basis b and block size ms[k].
  std::vector<CoarseGraining> cgs;
  for (auto basis : req.bases) {
    for (auto m : req.ms) {
      cgs.push_back(make_coarse_graining(req.L, m, basis, req.momentum_order,
                                         kbasis ? &*kbasis : nullptr));
    }
  }

  const std::vector<double> phases = draw_phases(req.seed, req.L, req.n_phi);
  std::vector<std::vector<double>> per_phase(cgs.size(), std::vector<double>(req.n_phi, 0.0));
  for (std::size_t r = 0; r < req.n_phi; ++r) {
    ModelParams params = base;
    params.phi = phases[r];
    const EigenSystem eig = eigendecompose(build_hamiltonian(params));
    const std::vector<std::size_t> chosen = req.selection == StateSelection::ground_state
                                                ? std::vector<std::size_t>{0}
                                                : mid_spectrum_indices(eig, count);
    std::vector<double> acc(cgs.size(), 0.0);
    for (auto idx : chosen) {
      const PureState psi = eigenstate(eig, idx);
      std::optional<PureState> psi_k;
      for (std::size_t c = 0; c < cgs.size(); ++c) {
        if (cgs[c].basis_tag() == Basis::momentum) {
          if (!psi_k) psi_k = to_momentum(psi, *kbasis);
          acc[c] += observational_entropy(*psi_k, cgs[c]);
        } else {
          acc[c] += observational_entropy(psi, cgs[c]);
        }
      }
    }
    for (std::size_t c = 0; c < cgs.size(); ++c) {
      per_phase[c][r] = acc[c] / static_cast<double>(chosen.size());
    }
  }

  SweepResult result;
  result.n_phi = req.n_phi;
  result.seed = req.seed;
  for (std::size_t c = 0; c < cgs.size(); ++c) {
    const auto stats = mean_and_stderr(per_phase[c]);
    result.entries.push_back(
        {req.L, req.delta, cgs[c].m(), cgs[c].basis_tag(), stats.mean, stats.std_error});
  }
  return result;
}

SweepEntry phase_averaged_eigen_entropy(std::size_t L, double delta, std::size_t m, Basis basis,
                                        std::size_t n_phi, std::uint64_t seed,
                                        std::size_t count) {
  EigenEntropyRequest req;
  req.L = L;
  req.delta = delta;
  req.ms = {m};
  req.bases = {basis};
  req.n_phi = n_phi;
  req.seed = seed;
  req.count = count;
  return eigen_entropy_sweep(req).entries.front();
}

double normalized_fluctuation(const std::vector<double>& values) {
  if (values.size() < 2) throw ConfigError("normalized fluctuation needs at least two values");
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  if (!(mean > 0.0)) throw ConfigError("normalized fluctuation needs a positive mean");
  // Two-pass variance; the textbook <S^2> - <S>^2 form cancels badly when
  // the values nearly collapse.
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= n;
  return std::sqrt(var) / mean;
}

LogFit fit_log_slope(const std::vector<double>& times, const std::vector<double>& entropies,
                     double t_lo, double t_hi) {
  if (times.size() != entropies.size()) throw ConfigError("times and entropies differ in length");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    if (t < t_lo || t > t_hi) continue;
    if (!(t > 0.0)) throw ConfigError("log fit needs positive times");
    const double x = std::log(t);
    const double y = entropies[i];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
    ++n;
  }
  if (n < kMinFitWindowPoints) {
    throw ConfigError("log fit window [" + std::to_string(t_lo) + ", " + std::to_string(t_hi) +
                      "] holds " + std::to_string(n) + " points, need " +
                      std::to_string(kMinFitWindowPoints));
  }
  const double dn = static_cast<double>(n);
  const double cxx = sxx - sx * sx / dn;
  const double cxy = sxy - sx * sy / dn;
  const double cyy = syy - sy * sy / dn;
  if (!(cxx > 0.0)) throw ConfigError("log fit needs distinct times");
  LogFit fit;
  fit.points = n;
  fit.slope = cxy / cxx;
  fit.intercept = (sy - fit.slope * sx) / dn;
  fit.r2 = cyy > 0.0 ? (cxy * cxy) / (cxx * cyy) : 1.0;
  return fit;
}

std::vector<ScalingRow> size_scaling_report(double delta, std::size_t m, Basis basis,
                                            const std::vector<std::size_t>& L_list,
                                            std::size_t n_phi, std::uint64_t seed,
                                            const EigenEntropyRequest& options) {
  if (L_list.empty()) throw ConfigError("empty system-size list");
  std::vector<ScalingRow> rows;
  for (auto L : L_list) {
    EigenEntropyRequest req = options;
    req.L = L;
    req.delta = delta;
    req.ms = {m};
    req.bases = {basis};
    req.n_phi = n_phi;
    req.seed = seed;
    const auto entry = eigen_entropy_sweep(req).entries.front();
    const double diff = rows.empty() ? std::numeric_limits<double>::quiet_NaN()
                                     : entry.mean_S - rows.back().mean_S;
    rows.push_back({L, entry.mean_S, entry.stderr_S, diff});
  }
  return rows;
}

}  // namespace obsent
