#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "obsent/entropy.hpp"
#include "obsent/errors.hpp"
#include "oracles.hpp"

using namespace obsent;

TEST(BlockPartition, HalvesOfFourSites) {
  const auto cg = make_block_partition(4, 2, Basis::real);
  const auto blocks = cg.blocks();
  ASSERT_EQ(blocks.size(), 2u);
  EXPECT_EQ(blocks[0], (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(blocks[1], (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(cg.m(), 2u);
}

TEST(BlockPartition, FinestAndRoughest) {
  const auto fine = make_block_partition(4, 1, Basis::real);
  EXPECT_EQ(fine.block_count(), 4u);
  for (auto v : fine.volumes()) EXPECT_EQ(v, 1u);
  const auto rough = make_block_partition(4, 4, Basis::momentum);
  EXPECT_EQ(rough.block_count(), 1u);
  EXPECT_EQ(rough.volumes().front(), 4u);
  EXPECT_EQ(rough.basis_tag(), Basis::momentum);
}

TEST(BlockPartition, RejectsNonDivisor) {
  EXPECT_THROW(make_block_partition(8, 3, Basis::real), ConfigError);
  EXPECT_THROW(make_block_partition(8, 0, Basis::real), ConfigError);
  EXPECT_NO_THROW(make_block_partition(12, 3, Basis::real));
}

TEST(BlockPartition, DyadicSizes) {
  EXPECT_EQ(dyadic_block_sizes(16), (std::vector<std::size_t>{1, 2, 4, 8, 16}));
}

TEST(KineticEnergyPartition, GroupsPlaneWavesByEnergy) {
  const auto kb = make_momentum_basis(8);
  const auto cg = make_kinetic_energy_partition(kb, 2);
  // n = 0 is the band bottom, n = 4 the top; block ids increase with energy.
  EXPECT_EQ(cg.block_of(0), 0u);
  EXPECT_EQ(cg.block_of(4), cg.block_count() - 1);
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) {
      if (cg.block_of(i) < cg.block_of(j)) EXPECT_LE(kb.o_diagonal(i), kb.o_diagonal(j));
    }
  }
  for (auto v : cg.volumes()) EXPECT_EQ(v, 2u);
}

TEST(IsRougher, NestedDyadicBlocks) {
  const auto m4 = make_block_partition(8, 4, Basis::real);
  const auto m2 = make_block_partition(8, 2, Basis::real);
  EXPECT_TRUE(is_rougher(m4, m2));
  EXPECT_FALSE(is_rougher(m2, m4));
  EXPECT_TRUE(is_rougher(m2, m2));
}

TEST(IsRougher, NonNestedAndMismatched) {
  const auto m3 = make_block_partition(12, 3, Basis::real);
  const auto m2 = make_block_partition(12, 2, Basis::real);
  EXPECT_FALSE(is_rougher(m3, m2));
  EXPECT_FALSE(is_rougher(m2, m3));
  EXPECT_FALSE(is_rougher(make_block_partition(8, 4, Basis::momentum), make_block_partition(8, 2, Basis::real)));
  EXPECT_TRUE(is_rougher(make_block_partition(12, 12, Basis::real), m3));
}

TEST(MacrostateProbs, ZeroMomentumPlaneWaveIsUniform) {
  const std::size_t L = 32;
  for (std::size_t m : {1u, 4u, 32u}) {
    const auto d = macrostate_probs(plane_wave(L, 0), make_block_partition(L, m, Basis::real));
    for (double p : d.probs()) EXPECT_NEAR(p, double(m) / L, 1e-14);
  }
}

TEST(MacrostateProbs, SiteStateFillsItsBlock) {
  const std::size_t L = 16;
  const auto d = macrostate_probs(site_state(L, 8), make_block_partition(L, 4, Basis::real));
  EXPECT_EQ(d.probs(), (std::vector<double>{0.0, 1.0, 0.0, 0.0}));
}

TEST(MacrostateProbs, FinestIsSquaredAmplitudes) {
  std::mt19937_64 rng(1);
  const auto psi = oracle::random_state(20, rng);
  const auto d = macrostate_probs(psi, make_block_partition(20, 1, Basis::real));
  double total = 0.0;
  for (std::size_t i = 0; i < 20; ++i) {
    EXPECT_DOUBLE_EQ(d.probs()[i], std::norm(psi.amplitudes(i)));
    total += d.probs()[i];
  }
  EXPECT_NEAR(total, 1.0, 1e-10);
}

TEST(MacrostateProbs, RejectsMismatch) {
  EXPECT_THROW(macrostate_probs(site_state(8, 1), make_block_partition(16, 2, Basis::real)), ConfigError);
  EXPECT_THROW(macrostate_probs(site_state(8, 1), make_block_partition(8, 2, Basis::momentum)), ConfigError);
}

TEST(MacrostateDistribution, NormalizationPolicy) {
  // Within 1e-10: kept as is.
  MacrostateDistribution ok({0.5, 0.5 + 5e-11}, {1, 1});
  EXPECT_EQ(ok.probs()[1], 0.5 + 5e-11);
  // Between 1e-10 and 1e-8: renormalized.
  MacrostateDistribution renorm({0.5, 0.5 + 5e-9}, {1, 1});
  EXPECT_NEAR(renorm.probs()[0] + renorm.probs()[1], 1.0, 1e-15);
  // Beyond 1e-8: error.
  EXPECT_THROW(MacrostateDistribution({0.5, 0.6}, {1, 1}), NumericalError);
  // Tiny negative round-off is clipped to zero.
  MacrostateDistribution clipped({-1e-17, 1.0}, {1, 1});
  EXPECT_EQ(clipped.probs()[0], 0.0);
  EXPECT_THROW(MacrostateDistribution({1.0}, {1, 1}), ConfigError);
  EXPECT_THROW(MacrostateDistribution({1.0}, {0}), ConfigError);
}

TEST(ObservationalEntropy, RoughestIsLnD) {
  EXPECT_DOUBLE_EQ(observational_entropy(MacrostateDistribution({1.0}, {256})), std::log(256.0));
}

TEST(ObservationalEntropy, CertainBlockGivesLnVolume) {
  EXPECT_DOUBLE_EQ(observational_entropy(MacrostateDistribution({0.0, 1.0, 0.0, 0.0}, {8, 8, 8, 8})),
                   std::log(8.0));
}

TEST(ObservationalEntropy, UniformOverBlocksGivesLnL) {
  const std::size_t L = 64, m = 4;
  std::vector<double> p(L / m, double(m) / L);
  std::vector<std::size_t> v(L / m, m);
  EXPECT_NEAR(observational_entropy(MacrostateDistribution(p, v)), std::log(double(L)), 1e-13);
}

TEST(ShannonEntropy, Examples) {
  EXPECT_EQ(shannon_entropy(MacrostateDistribution({1.0, 0.0}, {1, 1})), 0.0);
  EXPECT_NEAR(shannon_entropy(MacrostateDistribution({0.5, 0.5}, {1, 1})), std::log(2.0), 1e-15);
  std::vector<double> u(10, 0.1);
  EXPECT_NEAR(shannon_entropy(MacrostateDistribution(u, std::vector<std::size_t>(10, 1))), std::log(10.0), 1e-14);
}

// Property suite over random states.

TEST(EntropyProperties, MonotoneAlongDyadicChains) {
  std::mt19937_64 rng(21);
  const std::size_t L = 32;
  const auto ms = dyadic_block_sizes(L);
  for (int trial = 0; trial < 200; ++trial) {
    const auto psi = trial % 2 ? oracle::random_state(L, rng) : oracle::random_peaked_state(L, rng);
    for (std::size_t a = 0; a < ms.size(); ++a) {
      for (std::size_t b = 0; b < a; ++b) {
        const double rough = observational_entropy(psi, make_block_partition(L, ms[a], Basis::real));
        const double fine = observational_entropy(psi, make_block_partition(L, ms[b], Basis::real));
        ASSERT_GE(rough, fine - 1e-12) << "m1=" << ms[a] << " m2=" << ms[b];
      }
    }
  }
}

TEST(EntropyProperties, BoundedByFinestAndRoughest) {
  std::mt19937_64 rng(22);
  const std::size_t L = 32;
  const auto kb = make_momentum_basis(L);
  for (int trial = 0; trial < 200; ++trial) {
    const auto psi = oracle::random_peaked_state(L, rng);
    for (const auto& view : {psi, to_momentum(psi, kb)}) {
      const double finest = shannon_entropy(macrostate_probs(view, make_block_partition(L, 1, view.basis)));
      for (auto m : dyadic_block_sizes(L)) {
        const double s = observational_entropy(view, make_block_partition(L, m, view.basis));
        ASSERT_GE(s, finest - 1e-12);
        ASSERT_LE(s, std::log(double(L)) + 1e-12);
      }
      EXPECT_NEAR(observational_entropy(view, make_block_partition(L, L, view.basis)), std::log(double(L)), 1e-12);
    }
  }
}

TEST(EntropyProperties, DecomposesIntoShannonPlusVolumeTerm) {
  std::mt19937_64 rng(23);
  const std::size_t L = 24;
  for (int trial = 0; trial < 50; ++trial) {
    const auto psi = oracle::random_peaked_state(L, rng);
    for (std::size_t m : {1u, 2u, 3u, 6u, 24u}) {
      const auto d = macrostate_probs(psi, make_block_partition(L, m, Basis::real));
      double volume_term = 0.0;
      for (std::size_t i = 0; i < d.size(); ++i) volume_term += d.probs()[i] * std::log(double(d.volumes()[i]));
      EXPECT_NEAR(observational_entropy(d), shannon_entropy(d) + volume_term, 1e-13);
      EXPECT_NEAR(shannon_entropy(d), oracle::shannon(d.probs()), 1e-13);
    }
  }
}

TEST(EntropyProperties, IrregularPartitionsRespectOrder) {
  // Random partition and a random refinement of it.
  std::mt19937_64 rng(24);
  const std::size_t L = 20;
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<std::size_t> pick(0, 3);
    std::vector<std::size_t> coarse(L), fine(L);
    for (std::size_t i = 0; i < L; ++i) {
      coarse[i] = pick(rng);
      fine[i] = coarse[i] * 4 + pick(rng);
    }
    // Relabel to consecutive ids.
    auto compact = [](std::vector<std::size_t> ids) {
      std::vector<std::size_t> sorted = ids;
      std::sort(sorted.begin(), sorted.end());
      sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
      for (auto& id : ids) id = std::lower_bound(sorted.begin(), sorted.end(), id) - sorted.begin();
      return ids;
    };
    const CoarseGraining c(compact(coarse), Basis::real);
    const CoarseGraining f(compact(fine), Basis::real);
    ASSERT_TRUE(is_rougher(c, f));
    const auto psi = oracle::random_peaked_state(L, rng);
    EXPECT_GE(observational_entropy(psi, c), observational_entropy(psi, f) - 1e-12);
  }
}
