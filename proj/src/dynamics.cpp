#include "obsent/dynamics.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "obsent/errors.hpp"
#include "obsent/sampling.hpp"

namespace obsent {

void QuenchSpec::validate() const {
  params.validate();
  const std::size_t site = start_site();
  if (site < 1 || site > params.L) {
    throw ConfigError("initial site " + std::to_string(site) + " outside 1.." +
                      std::to_string(params.L));
  }
  if (times.empty()) throw ConfigError("empty time grid");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || !std::isfinite(times[i])) {
      throw ConfigError("times must be finite and non-negative");
    }
    if (i > 0 && !(times[i] > times[i - 1])) throw ConfigError("times must be strictly ascending");
  }
}

Propagator::Propagator(const EigenSystem& eig, const PureState& psi0) : eig_(&eig) {
  if (psi0.size() != eig.size()) {
    throw ConfigError("initial state has " + std::to_string(psi0.size()) +
                      " amplitudes, Hamiltonian has dimension " + std::to_string(eig.size()));
  }
  if (psi0.basis != Basis::real) throw ConfigError("time evolution expects a real-space state");
  overlaps_ = eig.vectors.transpose().cast<std::complex<double>>() * psi0.amplitudes;
}

PureState Propagator::at(double t) const {
  const auto n = overlaps_.size();
  ComplexVector rotated(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    rotated(i) = overlaps_(i) * std::polar(1.0, -eig_->energies(i) * t);
  }
  // V is real: multiply real and imaginary parts separately.
  const RealVector re = eig_->vectors * rotated.real();
  const RealVector im = eig_->vectors * rotated.imag();
  PureState out{ComplexVector(n), Basis::real};
  out.amplitudes.real() = re;
  out.amplitudes.imag() = im;
  return out;
}

PureState evolve(const EigenSystem& eig, const PureState& psi0, double t) {
  if (!(t >= 0.0)) throw ConfigError("evolution time must be non-negative");
  if (t == 0.0) {
    if (psi0.size() != eig.size()) throw ConfigError("dimension mismatch in evolve");
    return psi0;
  }
  return Propagator(eig, psi0).at(t);
}

std::vector<EntropySeries> quench_entropy_series(const QuenchSpec& spec,
                                                 std::span<const CoarseGraining> cgs) {
  spec.validate();
  const std::size_t L = spec.params.L;
  bool need_momentum = false;
  for (const auto& cg : cgs) {
    if (cg.size() != L) {
      throw ConfigError("coarse-graining size " + std::to_string(cg.size()) +
                        " does not match L = " + std::to_string(L));
    }
    need_momentum = need_momentum || cg.basis_tag() == Basis::momentum;
  }
  std::optional<MomentumBasis> kbasis;
  if (need_momentum) kbasis = make_momentum_basis(L);

  const std::vector<double> phases =
      spec.n_phi == 0 ? std::vector<double>{spec.params.phi} : draw_phases(spec.seed, L, spec.n_phi);
  const std::size_t n_real = phases.size();
  const std::size_t n_t = spec.times.size();

  std::vector<EntropySeries> out(cgs.size());
  for (std::size_t c = 0; c < cgs.size(); ++c) {
    out[c].abscissa = spec.times;
    out[c].samples.assign(n_real, std::vector<double>(n_t, 0.0));
    out[c].meta = {L, spec.params.delta, cgs[c].m(), cgs[c].basis_tag(), spec.params.bc,
                   spec.n_phi, spec.seed};
  }

  const PureState psi0 = site_state(L, spec.start_site());
  for (std::size_t r = 0; r < n_real; ++r) {
    ModelParams params = spec.params;
    params.phi = phases[r];
    const EigenSystem eig = eigendecompose(build_hamiltonian(params));
    const Propagator prop(eig, psi0);
    for (std::size_t i = 0; i < n_t; ++i) {
      const double t = spec.times[i];
      const PureState psi = t == 0.0 ? psi0 : prop.at(t);
      const double norm = psi.amplitudes.squaredNorm();
      if (std::abs(norm - 1.0) > kUnitarityTolerance) {
        throw NumericalError("norm drifted to " + std::to_string(norm) + " at t = " +
                             std::to_string(t));
      }
      std::optional<PureState> psi_k;
      for (std::size_t c = 0; c < cgs.size(); ++c) {
        const PureState* view = &psi;
        if (cgs[c].basis_tag() == Basis::momentum) {
          if (!psi_k) psi_k = to_momentum(psi, *kbasis);
          view = &*psi_k;
        }
        out[c].samples[r][i] = observational_entropy(*view, cgs[c]);
      }
    }
  }

  for (auto& series : out) {
    series.values.resize(n_t);
    series.spread.resize(n_t);
    std::vector<double> column(n_real);
    for (std::size_t i = 0; i < n_t; ++i) {
      for (std::size_t r = 0; r < n_real; ++r) column[r] = series.samples[r][i];
      const auto stats = mean_and_stderr(column);
      series.values[i] = stats.mean;
      series.spread[i] = stats.std_error;
    }
  }
  return out;
}

EntropySeries quench_entropy_series(const QuenchSpec& spec, const CoarseGraining& cg) {
  return quench_entropy_series(spec, std::span<const CoarseGraining>(&cg, 1)).front();
}

std::vector<double> log_time_grid(double t_min, double t_max, std::size_t points,
                                  bool include_zero) {
  if (points == 0) throw ConfigError("time grid needs at least one point");
  if (!(t_min > 0.0) || !(t_max >= t_min)) {
    throw ConfigError("log time grid needs 0 < t_min <= t_max");
  }
  std::vector<double> out;
  if (include_zero) out.push_back(0.0);
  if (points == 1) {
    out.push_back(t_min);
    return out;
  }
  const double lo = std::log(t_min);
  const double step = (std::log(t_max) - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    out.push_back(i + 1 == points ? t_max : std::exp(lo + step * static_cast<double>(i)));
  }
  return out;
}

}  // namespace obsent
