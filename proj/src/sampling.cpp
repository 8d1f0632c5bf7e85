#include "obsent/sampling.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "obsent/errors.hpp"

namespace obsent {

double realization_phase(std::uint64_t seed, std::size_t L, std::size_t r) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(L),
                    static_cast<std::uint32_t>(r)};
  std::mt19937_64 engine(seq);
  const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
  return 2.0 * std::numbers::pi * u;
}

std::vector<double> draw_phases(std::uint64_t seed, std::size_t L, std::size_t n_phi) {
  std::vector<double> out;
  out.reserve(n_phi);
  for (std::size_t r = 0; r < n_phi; ++r) out.push_back(realization_phase(seed, L, r));
  return out;
}

MeanStderr mean_and_stderr(const std::vector<double>& values) {
  if (values.empty()) throw ConfigError("mean of an empty sample");
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

}  // namespace obsent
