#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "obsent/model.hpp"

namespace obsent {

// A partition of the L basis indices (zero-based) into macrostate blocks.
// Each block corresponds to the projector sum_{i in block} |i><i| in the
// basis named by basis_tag.
class CoarseGraining {
 public:
  // block_of[i] is the block holding basis index i. Block ids must be
  // 0..n_blocks-1 with no empty block.
  CoarseGraining(std::vector<std::size_t> block_of, Basis basis_tag, std::size_t m = 0);

  std::size_t size() const { return block_of_.size(); }
  std::size_t block_count() const { return volumes_.size(); }
  std::size_t block_of(std::size_t index) const { return block_of_[index]; }
  const std::vector<std::size_t>& assignment() const { return block_of_; }
  const std::vector<std::size_t>& volumes() const { return volumes_; }
  std::vector<std::vector<std::size_t>> blocks() const;
  Basis basis_tag() const { return basis_tag_; }
  // Uniform block size, or 0 when blocks differ in size.
  std::size_t m() const { return m_; }

 private:
  std::vector<std::size_t> block_of_;
  std::vector<std::size_t> volumes_;
  Basis basis_tag_;
  std::size_t m_;
};

// Contiguous blocks {m(eta-1)+1 .. m eta}, eta = 1..L/m (1-based), i.e.
// indices [m(eta-1), m eta) zero-based. Throws ConfigError unless m | L.
CoarseGraining make_block_partition(std::size_t L, std::size_t m, Basis basis_tag);

// Momentum blocks built from plane waves ordered by kinetic energy
// -2 cos k_n (ties by n) instead of by DFT index.
CoarseGraining make_kinetic_energy_partition(const MomentumBasis& basis, std::size_t m);

// How momentum-space blocks group plane waves: contiguous DFT indices n, or
// plane waves ranked by kinetic energy -2 cos k_n.
enum class MomentumOrder { dft_index, kinetic_energy };

std::string_view to_string(MomentumOrder order);
MomentumOrder parse_momentum_order(std::string_view text);

// Uniform partition with block size m in the given basis. `kbasis` is needed
// only for Basis::momentum with MomentumOrder::kinetic_energy.
CoarseGraining make_coarse_graining(std::size_t L, std::size_t m, Basis basis,
                                    MomentumOrder order = MomentumOrder::dft_index,
                                    const MomentumBasis* kbasis = nullptr);

// Dyadic block sizes 1, 2, 4, ..., L.
std::vector<std::size_t> dyadic_block_sizes(std::size_t L);

// True iff every block of `rough` is a union of blocks of `fine`.
bool is_rougher(const CoarseGraining& rough, const CoarseGraining& fine);

class MacrostateDistribution {
 public:
  // Clips weights to [0, 1] and checks the total: |sum - 1| <= 1e-10 is
  // accepted as is, up to 1e-8 the weights are renormalized, beyond that
  // NumericalError is thrown.
  MacrostateDistribution(std::vector<double> probs, std::vector<std::size_t> volumes);

  const std::vector<double>& probs() const { return probs_; }
  const std::vector<std::size_t>& volumes() const { return volumes_; }
  std::size_t size() const { return probs_.size(); }

 private:
  std::vector<double> probs_;
  std::vector<std::size_t> volumes_;
};

inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kRenormalizeLimit = 1e-8;

// p_i = sum_{j in block i} |psi_j|^2. The state must be in cg's basis.
MacrostateDistribution macrostate_probs(const PureState& state, const CoarseGraining& cg);

// -sum p ln p + sum p ln V, with 0 ln 0 = 0.
double observational_entropy(const MacrostateDistribution& d);

// -sum p ln p, with 0 ln 0 = 0.
double shannon_entropy(const MacrostateDistribution& d);

// Convenience: S for a state under a coarse-graining.
double observational_entropy(const PureState& state, const CoarseGraining& cg);

}  // namespace obsent
