#include "obsent/model.hpp"

#include <algorithm>
#include <string>

#include "obsent/errors.hpp"

namespace obsent {

std::string_view to_string(Boundary bc) {
  return bc == Boundary::open ? "open" : "periodic";
}

std::string_view to_string(Basis basis) {
  return basis == Basis::real ? "real" : "momentum";
}

Boundary parse_boundary(std::string_view text) {
  if (text == "open") return Boundary::open;
  if (text == "periodic") return Boundary::periodic;
  throw ConfigError("unknown boundary condition '" + std::string(text) + "'");
}

Basis parse_basis(std::string_view text) {
  if (text == "real") return Basis::real;
  if (text == "momentum") return Basis::momentum;
  throw ConfigError("unknown basis '" + std::string(text) + "'");
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void ModelParams::validate() const {
  if (L < 2) throw ConfigError("L must be at least 2, got " + std::to_string(L));
  if (!(delta >= 0.0)) throw ConfigError("delta must be non-negative");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (!std::isfinite(phi)) throw ConfigError("phi must be finite");
}

HamiltonianMatrix build_hamiltonian(const ModelParams& params) {
  params.validate();
  const auto L = static_cast<Eigen::Index>(params.L);
  RealMatrix H = RealMatrix::Zero(L, L);
  for (Eigen::Index i = 0; i < L; ++i) {
    H(i, i) = onsite_potential(params, static_cast<std::size_t>(i) + 1);
  }
  for (Eigen::Index i = 0; i + 1 < L; ++i) {
    H(i, i + 1) = -1.0;
    H(i + 1, i) = -1.0;
  }
  // For L = 2 the wrap-around bond coincides with the open bond; keep a
  // single hopping so the matrix stays a simple 2-site chain.
  if (params.bc == Boundary::periodic && L > 2) {
    H(0, L - 1) = -1.0;
    H(L - 1, 0) = -1.0;
  }
  return {std::move(H), params};
}

EigenSystem eigendecompose(const HamiltonianMatrix& H) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(H.entries, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symmetric eigensolver did not converge (L = " +
                         std::to_string(H.entries.rows()) + ")");
  }
  // Eigen returns eigenvalues sorted ascending.
  return {solver.eigenvalues(), solver.eigenvectors()};
}

MomentumBasis make_momentum_basis(std::size_t L) {
  if (L < 2) throw ConfigError("momentum basis needs L >= 2");
  const auto n_sites = static_cast<Eigen::Index>(L);
  const double norm = 1.0 / std::sqrt(static_cast<double>(L));
  MomentumBasis basis;
  basis.k_values.resize(n_sites);
  basis.o_diagonal.resize(n_sites);
  basis.dft.resize(n_sites, n_sites);
  for (Eigen::Index n = 0; n < n_sites; ++n) {
    const double k = 2.0 * std::numbers::pi * static_cast<double>(n) / static_cast<double>(L);
    basis.k_values(n) = k;
    basis.o_diagonal(n) = -2.0 * std::cos(k);
    for (Eigen::Index i = 0; i < n_sites; ++i) {
      // Reduce the phase index modulo L before scaling so large n*j keep full precision.
      const auto j = static_cast<std::size_t>(i) + 1;
      const auto reduced = (static_cast<std::size_t>(n) * j) % L;
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(reduced) / static_cast<double>(L);
      basis.dft(i, n) = std::polar(norm, angle);
    }
  }
  return basis;
}

namespace {

void require_size(const PureState& state, std::size_t L, const char* what) {
  if (state.size() != L) {
    throw ConfigError(std::string(what) + ": state has " + std::to_string(state.size()) +
                      " amplitudes, basis has " + std::to_string(L));
  }
}

}  // namespace

PureState to_momentum(const PureState& state, const MomentumBasis& basis) {
  require_size(state, basis.size(), "to_momentum");
  if (state.basis != Basis::real) throw ConfigError("to_momentum expects a real-space state");
  return {basis.dft.adjoint() * state.amplitudes, Basis::momentum};
}

PureState to_real(const PureState& state, const MomentumBasis& basis) {
  require_size(state, basis.size(), "to_real");
  if (state.basis != Basis::momentum) throw ConfigError("to_real expects a momentum-space state");
  return {basis.dft * state.amplitudes, Basis::real};
}

PureState site_state(std::size_t L, std::size_t site) {
  if (site < 1 || site > L) throw ConfigError("site index out of range");
  PureState s{ComplexVector::Zero(static_cast<Eigen::Index>(L)), Basis::real};
  s.amplitudes(static_cast<Eigen::Index>(site - 1)) = 1.0;
  return s;
}

PureState plane_wave(std::size_t L, std::size_t n) {
  if (n >= L) throw ConfigError("momentum index out of range");
  const MomentumBasis basis = make_momentum_basis(L);
  return {basis.dft.col(static_cast<Eigen::Index>(n)), Basis::real};
}

PureState eigenstate(const EigenSystem& eig, std::size_t n) {
  if (n >= eig.size()) throw ConfigError("eigenstate index out of range");
  return {eig.vectors.col(static_cast<Eigen::Index>(n)).cast<std::complex<double>>(), Basis::real};
}

LocalizationEstimate estimate_localization_length(const PureState& state) {
  if (state.basis != Basis::real) throw ConfigError("localization length needs a real-space state");
  const auto L = state.size();
  if (L == 0) throw ConfigError("empty state");

  const RealVector weight = state.amplitudes.cwiseAbs2();
  Eigen::Index peak = 0;
  weight.maxCoeff(&peak);

  LocalizationEstimate est;
  est.peak = static_cast<std::size_t>(peak);

  // Accumulate the least-squares sums for y = ln|psi| against x = |j - j_peak|.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t n = 0;
  for (Eigen::Index i = 0; i < weight.size(); ++i) {
    if (weight(i) <= kAmplitudeCutoff) continue;
    const double x = static_cast<double>(i > peak ? i - peak : peak - i);
    const double y = 0.5 * std::log(weight(i));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  est.fit_points = n;

  if (n < kMinFitPoints) {
    est.status = LocalizationEstimate::Status::localized;
    est.xi = 0.0;
    return est;
  }

  const double dn = static_cast<double>(n);
  const double denom = dn * sxx - sx * sx;
  const double slope = denom > 0.0 ? (dn * sxy - sx * sy) / denom : 0.0;
  if (slope >= -1.0 / static_cast<double>(L)) {
    est.status = LocalizationEstimate::Status::delocalized;
    return est;
  }
  est.status = LocalizationEstimate::Status::localized;
  est.xi = -1.0 / slope;
  return est;
}

}  // namespace obsent
