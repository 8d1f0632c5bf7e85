#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "obsent/entropy.hpp"
#include "obsent/model.hpp"

namespace obsent {

inline constexpr std::size_t kDefaultMidSpectrumCount = 10;
inline constexpr std::size_t kDefaultPhaseCount = 100;

// Indices (ascending) of the `count` eigenstates with energies nearest zero.
// Selection walks outwards from E = 0; when the candidates on either side are
// equally close (within 1e-12) the lower index wins.
std::vector<std::size_t> mid_spectrum_indices(const EigenSystem& eig, std::size_t count);
std::vector<PureState> mid_spectrum_states(const EigenSystem& eig, std::size_t count);

enum class StateSelection { mid_spectrum, ground_state };

// Which eigenstates of H(L, delta, phi_r) enter a phase-averaged entropy and
// under which coarse-grainings they are measured.
struct EigenEntropyRequest {
  std::size_t L = 256;
  double delta = 0.0;
  std::vector<std::size_t> ms;
  std::vector<Basis> bases{Basis::real};
  std::size_t n_phi = kDefaultPhaseCount;
  std::uint64_t seed = 0;
  std::size_t count = kDefaultMidSpectrumCount;
  StateSelection selection = StateSelection::mid_spectrum;
  Boundary bc = Boundary::open;
  double alpha = kInverseGoldenRatio;
  MomentumOrder momentum_order = MomentumOrder::dft_index;
};

struct SweepEntry {
  std::size_t L = 0;
  double delta = 0.0;
  std::size_t m = 0;
  Basis basis = Basis::real;
  double mean_S = 0.0;
  double stderr_S = 0.0;
};

struct SweepResult {
  std::vector<SweepEntry> entries;
  std::size_t n_phi = 0;
  std::uint64_t seed = 0;
};

// One diagonalization per phase realization, shared by every (basis, m) of
// the request. S is averaged over the selected states of a realization, then
// over realizations; stderr_S is the standard error of the per-realization
// means. Entries are ordered by basis (request order), then m.
SweepResult eigen_entropy_sweep(const EigenEntropyRequest& request);

SweepEntry phase_averaged_eigen_entropy(std::size_t L, double delta, std::size_t m, Basis basis,
                                        std::size_t n_phi, std::uint64_t seed,
                                        std::size_t count = kDefaultMidSpectrumCount);

// f = sqrt(<S^2> - <S>^2) / <S> with a plain (population) average over the
// values. Needs at least two values and a positive mean.
double normalized_fluctuation(const std::vector<double>& values_by_L);

struct FluctuationResult {
  double delta = 0.0;
  std::size_t m = 0;
  double f = 0.0;
  std::vector<std::size_t> L_set;
};

struct LogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t points = 0;
};

inline constexpr std::size_t kMinFitWindowPoints = 5;

// Ordinary least squares of S against ln t for t in [t_lo, t_hi].
LogFit fit_log_slope(const std::vector<double>& times, const std::vector<double>& entropies,
                     double t_lo, double t_hi);

struct ScalingRow {
  std::size_t L = 0;
  double mean_S = 0.0;
  double stderr_S = 0.0;
  // S(L) - S(previous L); NaN on the first row.
  double diff_from_previous = 0.0;
};

// Phase-averaged mid-spectrum S at each L (in the given order) for one
// (delta, m, basis).
std::vector<ScalingRow> size_scaling_report(double delta, std::size_t m, Basis basis,
                                            const std::vector<std::size_t>& L_list,
                                            std::size_t n_phi, std::uint64_t seed,
                                            const EigenEntropyRequest& options = {});

}  // namespace obsent
