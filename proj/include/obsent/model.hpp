#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string_view>

#include <Eigen/Dense>

namespace obsent {

using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

enum class Boundary { open, periodic };
enum class Basis { real, momentum };

std::string_view to_string(Boundary bc);
std::string_view to_string(Basis basis);
Boundary parse_boundary(std::string_view text);
Basis parse_basis(std::string_view text);

// Inverse golden ratio (sqrt(5) - 1) / 2.
inline constexpr double kInverseGoldenRatio = std::numbers::phi - 1.0;

// Parameters of the quasiperiodic chain
//   H = -sum_j (c_j^+ c_{j+1} + h.c.) + delta * sum_j cos(2 pi alpha j + phi) n_j
// with sites j = 1..L. Site j is stored at zero-based index j - 1.
struct ModelParams {
  std::size_t L = 2;
  double delta = 0.0;
  double alpha = kInverseGoldenRatio;
  double phi = 0.0;
  Boundary bc = Boundary::open;

  // Throws ConfigError on L < 2, negative delta or alpha outside (0, 1).
  void validate() const;
};

bool is_power_of_two(std::size_t n);

// On-site energy of site j (1-based).
inline double onsite_potential(const ModelParams& p, std::size_t j) {
  return p.delta * std::cos(2.0 * std::numbers::pi * p.alpha * static_cast<double>(j) + p.phi);
}

struct HamiltonianMatrix {
  RealMatrix entries;
  ModelParams params;
};

// Energies ascending; column n of `vectors` belongs to energies[n].
struct EigenSystem {
  RealVector energies;
  RealMatrix vectors;

  std::size_t size() const { return static_cast<std::size_t>(energies.size()); }
};

// Amplitudes over L sites (basis == real) or L momentum indices.
struct PureState {
  ComplexVector amplitudes;
  Basis basis = Basis::real;

  std::size_t size() const { return static_cast<std::size_t>(amplitudes.size()); }
};

// Plane-wave basis k_n = 2 pi n / L, n = 0..L-1. dft(j - 1, n) = exp(i k_n j) / sqrt(L)
// for site j, so a real-space column vector psi has momentum amplitudes dft^+ psi.
// The hopping term is diagonal here with eigenvalues o_diagonal[n] = -2 cos k_n
// (exactly so for periodic chains).
struct MomentumBasis {
  RealVector k_values;
  ComplexMatrix dft;
  RealVector o_diagonal;

  std::size_t size() const { return static_cast<std::size_t>(k_values.size()); }
};

HamiltonianMatrix build_hamiltonian(const ModelParams& params);

// Dense symmetric eigendecomposition. Throws NumericalError when the solver
// fails to converge.
EigenSystem eigendecompose(const HamiltonianMatrix& H);

MomentumBasis make_momentum_basis(std::size_t L);

PureState to_momentum(const PureState& state, const MomentumBasis& basis);
PureState to_real(const PureState& state, const MomentumBasis& basis);

// c_j^+ |0> for 1-based site j.
PureState site_state(std::size_t L, std::size_t site);
// (1/sqrt L) sum_j exp(i k_n j) |j>.
PureState plane_wave(std::size_t L, std::size_t n);
// Column n of the eigensystem as a real-space state.
PureState eigenstate(const EigenSystem& eig, std::size_t n);

struct LocalizationEstimate {
  enum class Status { localized, delocalized };

  Status status = Status::delocalized;
  // Localization length; meaningful only when status == localized.
  double xi = 0.0;
  // Number of sites entering the fit (amplitude^2 above the cutoff).
  std::size_t fit_points = 0;
  // Zero-based index of the amplitude peak.
  std::size_t peak = 0;
};

// Fits ln|psi(j)| against |j - j_peak| over sites with |psi(j)|^2 > 1e-12.
// The slope is -1/xi. A slope >= -1/L means no resolvable exponential decay
// and yields Status::delocalized. With fewer than kMinFitPoints sites above
// the cutoff the state decays faster than the lattice can resolve and is
// reported as localized with xi = 0.
LocalizationEstimate estimate_localization_length(const PureState& state);

inline constexpr double kAmplitudeCutoff = 1e-12;
inline constexpr std::size_t kMinFitPoints = 8;

}  // namespace obsent
