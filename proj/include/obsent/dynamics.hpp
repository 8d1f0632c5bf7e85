#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "obsent/entropy.hpp"
#include "obsent/model.hpp"

namespace obsent {

// Quench from a single occupied site. params.phi is ignored when n_phi > 0;
// phases are then drawn with draw_phases(seed, L, n_phi).
struct QuenchSpec {
  ModelParams params;
  // 1-based starting site; 0 selects the middle site L/2.
  std::size_t initial_site = 0;
  // Non-negative, strictly ascending.
  std::vector<double> times;
  std::size_t n_phi = 1;
  std::uint64_t seed = 0;

  std::size_t start_site() const { return initial_site == 0 ? params.L / 2 : initial_site; }
  void validate() const;
};

struct SeriesMeta {
  std::size_t L = 0;
  double delta = 0.0;
  std::size_t m = 0;
  Basis basis = Basis::real;
  Boundary bc = Boundary::open;
  std::size_t n_phi = 0;
  std::uint64_t seed = 0;
};

// One curve S(abscissa) averaged over phase realizations.
struct EntropySeries {
  std::vector<double> abscissa;
  std::vector<double> values;
  // Standard error across realizations.
  std::vector<double> spread;
  // samples[r][i]: value of realization r at abscissa[i].
  std::vector<std::vector<double>> samples;
  SeriesMeta meta;
};

// exp(-i H t) psi0 through the eigenbasis. Holds the overlaps V^T psi0 so a
// whole time series costs one O(L^2) product per time.
class Propagator {
 public:
  Propagator(const EigenSystem& eig, const PureState& psi0);

  PureState at(double t) const;

 private:
  const EigenSystem* eig_;
  ComplexVector overlaps_;
};

// psi(t) = V diag(exp(-i E t)) V^T psi(0).
PureState evolve(const EigenSystem& eig, const PureState& psi0, double t);

// For each phase realization: diagonalize once, evolve to every time, move to
// the coarse-graining's basis and evaluate S. Throws NumericalError when the
// evolved norm drifts by more than 1e-10.
EntropySeries quench_entropy_series(const QuenchSpec& spec, const CoarseGraining& cg);

// Same, for several coarse-gradings sharing one evolution per realization.
std::vector<EntropySeries> quench_entropy_series(const QuenchSpec& spec,
                                                 std::span<const CoarseGraining> cgs);

// Logarithmically spaced times in [t_min, t_max], optionally preceded by t = 0.
std::vector<double> log_time_grid(double t_min, double t_max, std::size_t points,
                                  bool include_zero);

inline constexpr double kUnitarityTolerance = 1e-10;

}  // namespace obsent
