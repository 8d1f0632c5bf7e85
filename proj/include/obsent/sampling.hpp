#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace obsent {

// Phase phi_r in [0, 2 pi) for realization r of a lattice of size L.
//
// Each realization owns a substream: an mt19937_64 seeded through
// std::seed_seq{seed_lo, seed_hi, L, r}, whose first output u is mapped to
// 2 pi (u >> 11) 2^-53. Both engine and seed_seq are fully specified by the
// standard, so phases are identical on every platform and do not depend on
// the order in which grid points are evaluated. All potential strengths and
// coarse-grainings at a given (seed, L) share the same phase set.
double realization_phase(std::uint64_t seed, std::size_t L, std::size_t r);

std::vector<double> draw_phases(std::uint64_t seed, std::size_t L, std::size_t n_phi);

// Mean and standard error of the mean (sample standard deviation / sqrt n;
// zero for a single value).
struct MeanStderr {
  double mean = 0.0;
  double std_error = 0.0;
};

MeanStderr mean_and_stderr(const std::vector<double>& values);

}  // namespace obsent
