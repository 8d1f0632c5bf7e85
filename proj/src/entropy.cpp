#include "obsent/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "obsent/errors.hpp"

namespace obsent {

CoarseGraining::CoarseGraining(std::vector<std::size_t> block_of, Basis basis_tag, std::size_t m)
    : block_of_(std::move(block_of)), basis_tag_(basis_tag), m_(m) {
  if (block_of_.empty()) throw ConfigError("coarse-graining over an empty index set");
  const std::size_t n_blocks = *std::max_element(block_of_.begin(), block_of_.end()) + 1;
  volumes_.assign(n_blocks, 0);
  for (auto b : block_of_) ++volumes_[b];
  if (std::find(volumes_.begin(), volumes_.end(), std::size_t{0}) != volumes_.end()) {
    throw ConfigError("coarse-graining has an empty block");
  }
  const bool uniform = std::all_of(volumes_.begin(), volumes_.end(),
                                   [&](std::size_t v) { return v == volumes_.front(); });
  if (m_ == 0 && uniform) m_ = volumes_.front();
  if (m_ != 0 && (!uniform || volumes_.front() != m_)) {
    throw ConfigError("declared block size does not match the partition");
  }
}

std::vector<std::vector<std::size_t>> CoarseGraining::blocks() const {
  std::vector<std::vector<std::size_t>> out(volumes_.size());
  for (std::size_t i = 0; i < block_of_.size(); ++i) out[block_of_[i]].push_back(i);
  return out;
}

CoarseGraining make_block_partition(std::size_t L, std::size_t m, Basis basis_tag) {
  if (m == 0 || L == 0 || L % m != 0) {
    throw ConfigError("block size m = " + std::to_string(m) + " does not divide L = " +
                      std::to_string(L));
  }
  std::vector<std::size_t> block_of(L);
  for (std::size_t i = 0; i < L; ++i) block_of[i] = i / m;
  return {std::move(block_of), basis_tag, m};
}

CoarseGraining make_kinetic_energy_partition(const MomentumBasis& basis, std::size_t m) {
  const std::size_t L = basis.size();
  if (m == 0 || L % m != 0) {
    throw ConfigError("block size m = " + std::to_string(m) + " does not divide L = " +
                      std::to_string(L));
  }
  std::vector<std::size_t> order(L);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return basis.o_diagonal(static_cast<Eigen::Index>(a)) < basis.o_diagonal(static_cast<Eigen::Index>(b));
  });
  std::vector<std::size_t> block_of(L);
  for (std::size_t rank = 0; rank < L; ++rank) block_of[order[rank]] = rank / m;
  return {std::move(block_of), Basis::momentum, m};
}

std::string_view to_string(MomentumOrder order) {
  return order == MomentumOrder::dft_index ? "dft_index" : "kinetic_energy";
}

MomentumOrder parse_momentum_order(std::string_view text) {
  if (text == "dft_index") return MomentumOrder::dft_index;
  if (text == "kinetic_energy") return MomentumOrder::kinetic_energy;
  throw ConfigError("unknown momentum block order '" + std::string(text) + "'");
}

CoarseGraining make_coarse_graining(std::size_t L, std::size_t m, Basis basis,
                                    MomentumOrder order, const MomentumBasis* kbasis) {
  if (basis == Basis::real || order == MomentumOrder::dft_index) {
    return make_block_partition(L, m, basis);
  }
  if (kbasis != nullptr) return make_kinetic_energy_partition(*kbasis, m);
  return make_kinetic_energy_partition(make_momentum_basis(L), m);
}

std::vector<std::size_t> dyadic_block_sizes(std::size_t L) {
  std::vector<std::size_t> out;
  for (std::size_t m = 1; m <= L; m *= 2) {
    if (L % m == 0) out.push_back(m);
  }
  return out;
}

bool is_rougher(const CoarseGraining& rough, const CoarseGraining& fine) {
  if (rough.size() != fine.size() || rough.basis_tag() != fine.basis_tag()) return false;
  // Every fine block must map into exactly one rough block.
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent(fine.block_count(), unset);
  for (std::size_t i = 0; i < fine.size(); ++i) {
    auto& p = parent[fine.block_of(i)];
    if (p == unset) {
      p = rough.block_of(i);
    } else if (p != rough.block_of(i)) {
      return false;
    }
  }
  return true;
}

MacrostateDistribution::MacrostateDistribution(std::vector<double> probs,
                                               std::vector<std::size_t> volumes)
    : probs_(std::move(probs)), volumes_(std::move(volumes)) {
  if (probs_.size() != volumes_.size()) {
    throw ConfigError("probability and volume vectors differ in length");
  }
  if (probs_.empty()) throw ConfigError("empty macrostate distribution");
  for (auto v : volumes_) {
    if (v < 1) throw ConfigError("macrostate volume must be at least 1");
  }
  double total = 0.0;
  for (auto& p : probs_) {
    if (!std::isfinite(p)) throw NumericalError("non-finite macrostate probability");
    p = std::clamp(p, 0.0, 1.0);
    total += p;
  }
  const double err = std::abs(total - 1.0);
  if (err > kRenormalizeLimit) {
    throw NumericalError("macrostate probabilities sum to " + std::to_string(total));
  }
  if (err > kNormTolerance) {
    for (auto& p : probs_) p /= total;
  }
}

MacrostateDistribution macrostate_probs(const PureState& state, const CoarseGraining& cg) {
  if (state.size() != cg.size()) {
    throw ConfigError("state dimension " + std::to_string(state.size()) +
                      " does not match coarse-graining size " + std::to_string(cg.size()));
  }
  if (state.basis != cg.basis_tag()) {
    throw ConfigError("state is in the " + std::string(to_string(state.basis)) +
                      " basis but the coarse-graining is over the " +
                      std::string(to_string(cg.basis_tag())) + " basis");
  }
  std::vector<double> probs(cg.block_count(), 0.0);
  for (std::size_t i = 0; i < cg.size(); ++i) {
    probs[cg.block_of(i)] += std::norm(state.amplitudes(static_cast<Eigen::Index>(i)));
  }
  return {std::move(probs), cg.volumes()};
}

double shannon_entropy(const MacrostateDistribution& d) {
  double s = 0.0;
  for (double p : d.probs()) {
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

double observational_entropy(const MacrostateDistribution& d) {
  double s = 0.0;
  const auto& probs = d.probs();
  const auto& volumes = d.volumes();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double p = probs[i];
    if (p > 0.0) s += p * (std::log(static_cast<double>(volumes[i])) - std::log(p));
  }
  return s;
}

double observational_entropy(const PureState& state, const CoarseGraining& cg) {
  return observational_entropy(macrostate_probs(state, cg));
}

}  // namespace obsent
