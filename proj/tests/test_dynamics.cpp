#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "obsent/analysis.hpp"
#include "obsent/bessel.hpp"
#include "obsent/dynamics.hpp"
#include "obsent/errors.hpp"

using namespace obsent;

namespace {

ModelParams chain(std::size_t L, double delta, Boundary bc = Boundary::open, double phi = 0.0) {
  ModelParams p;
  p.L = L;
  p.delta = delta;
  p.bc = bc;
  p.phi = phi;
  return p;
}

}  // namespace

TEST(Evolve, TimeZeroIsIdentity) {
  const auto eig = eigendecompose(build_hamiltonian(chain(32, 1.5, Boundary::open, 0.4)));
  const auto psi0 = site_state(32, 16);
  const auto psi = evolve(eig, psi0, 0.0);
  EXPECT_EQ(psi.amplitudes, psi0.amplitudes);
}

TEST(Evolve, PreservesNorm) {
  const auto eig = eigendecompose(build_hamiltonian(chain(64, 2.0, Boundary::open, 1.1)));
  const Propagator prop(eig, site_state(64, 32));
  for (double t : {0.3, 1.0, 10.0, 100.0, 1000.0}) {
    EXPECT_NEAR(prop.at(t).amplitudes.norm(), 1.0, 1e-10);
  }
}

TEST(Evolve, PropagatorMatchesEvolve) {
  const auto eig = eigendecompose(build_hamiltonian(chain(16, 0.7)));
  const auto psi0 = site_state(16, 3);
  const Propagator prop(eig, psi0);
  EXPECT_LT((prop.at(2.5).amplitudes - evolve(eig, psi0, 2.5).amplitudes).norm(), 1e-13);
}

// Free particle on a ring from one site: |psi_j(t)| = |J_{j - j0}(2t)|.
TEST(Evolve, CleanRingAmplitudesAreBesselFunctions) {
  const std::size_t L = 256;
  const auto eig = eigendecompose(build_hamiltonian(chain(L, 0.0, Boundary::periodic)));
  const Propagator prop(eig, site_state(L, L / 2));
  for (double t : {0.5, 2.0, 5.0, 10.0}) {
    const auto psi = prop.at(t);
    for (std::size_t i = 0; i < L; ++i) {
      const int offset = static_cast<int>(i + 1) - static_cast<int>(L / 2);
      const double ref = std::abs(std::cyl_bessel_j(std::abs(offset), 2.0 * t));
      ASSERT_NEAR(std::abs(psi.amplitudes(static_cast<Eigen::Index>(i))), ref, 1e-6)
          << "t=" << t << " site " << i + 1;
    }
  }
}

TEST(QuenchSeries, InitialValuesAreLnM) {
  const std::size_t L = 64;
  QuenchSpec spec;
  spec.params = chain(L, 1.0);
  spec.times = {0.0, 1.0};
  spec.n_phi = 3;
  spec.seed = 5;
  std::vector<CoarseGraining> cgs;
  for (auto m : dyadic_block_sizes(L)) cgs.push_back(make_block_partition(L, m, Basis::real));
  const auto series = quench_entropy_series(spec, cgs);
  ASSERT_EQ(series.size(), cgs.size());
  for (const auto& s : series) {
    EXPECT_NEAR(s.values[0], std::log(double(s.meta.m)), 1e-12);
    EXPECT_EQ(s.samples.size(), 3u);
    EXPECT_EQ(s.meta.n_phi, 3u);
  }
  // The roughest coarse-graining never moves.
  for (double v : series.back().values) EXPECT_NEAR(v, std::log(double(L)), 1e-12);
}

TEST(QuenchSeries, MomentumSiteStateIsUniformAtStart) {
  const std::size_t L = 32;
  QuenchSpec spec;
  spec.params = chain(L, 2.0);
  spec.times = {0.0};
  const auto s = quench_entropy_series(spec, make_block_partition(L, 1, Basis::momentum));
  EXPECT_NEAR(s.values[0], std::log(double(L)), 1e-12);
}

TEST(QuenchSeries, CleanRingMatchesBesselEntropy) {
  const std::size_t L = 256;
  QuenchSpec spec;
  spec.params = chain(L, 0.0, Boundary::periodic);
  spec.n_phi = 0;
  for (int i = 0; i <= 40; ++i) spec.times.push_back(0.5 * i);
  const auto s = quench_entropy_series(spec, make_block_partition(L, 1, Basis::real));
  for (std::size_t i = 0; i < spec.times.size(); ++i) {
    EXPECT_NEAR(s.values[i], bessel_reference_entropy(spec.times[i], L), 1e-3) << "t=" << spec.times[i];
  }
}

TEST(QuenchSeries, OrderRelationsPerRealization) {
  const std::size_t L = 64;
  QuenchSpec spec;
  spec.params = chain(L, 2.0);
  spec.times = log_time_grid(0.1, 50.0, 20, true);
  spec.n_phi = 4;
  spec.seed = 9;
  std::vector<CoarseGraining> cgs;
  for (auto m : dyadic_block_sizes(L)) cgs.push_back(make_block_partition(L, m, Basis::real));
  const auto series = quench_entropy_series(spec, cgs);
  for (std::size_t c = 0; c < series.size(); ++c) {
    for (std::size_t r = 0; r < spec.n_phi; ++r) {
      const auto& row = series[c].samples[r];
      for (std::size_t i = 0; i < row.size(); ++i) {
        EXPECT_GE(row[i], row[0] - 1e-12);
        if (c > 0) EXPECT_GE(row[i], series[c - 1].samples[r][i] - 1e-12);
      }
    }
  }
}

TEST(QuenchSeries, StrongDisorderStaysBounded) {
  const std::size_t L = 128;
  QuenchSpec spec;
  spec.params = chain(L, 3.0);
  spec.times = log_time_grid(1.0, 100.0, 30, false);
  spec.n_phi = 10;
  spec.seed = 3;
  const auto s = quench_entropy_series(spec, make_block_partition(L, 1, Basis::real));
  double lo = 1e300, hi = 0.0;
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    EXPECT_LT(s.values[i], 2.0);
    if (s.abscissa[i] > 10.0) {
      lo = std::min(lo, s.values[i]);
      hi = std::max(hi, s.values[i]);
    }
  }
  EXPECT_LT(hi - lo, 0.5);
}

TEST(QuenchSeries, DeterministicForFixedSeed) {
  QuenchSpec spec;
  spec.params = chain(32, 1.0);
  spec.times = {0.0, 1.0, 4.0};
  spec.n_phi = 5;
  spec.seed = 11;
  const auto cg = make_block_partition(32, 2, Basis::real);
  const auto a = quench_entropy_series(spec, cg);
  const auto b = quench_entropy_series(spec, cg);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.samples, b.samples);
  spec.seed = 12;
  EXPECT_NE(quench_entropy_series(spec, cg).values, a.values);
}

TEST(QuenchSpec, Validation) {
  QuenchSpec spec;
  spec.params = chain(16, 1.0);
  spec.times = {0.0, 1.0};
  EXPECT_NO_THROW(spec.validate());
  EXPECT_EQ(spec.start_site(), 8u);
  spec.times = {1.0, 0.5};
  EXPECT_THROW(spec.validate(), ConfigError);
  spec.times = {-1.0};
  EXPECT_THROW(spec.validate(), ConfigError);
  spec.times = {0.0};
  spec.initial_site = 17;
  EXPECT_THROW(spec.validate(), ConfigError);
  spec.initial_site = 0;
  EXPECT_THROW(quench_entropy_series(spec, make_block_partition(8, 2, Basis::real)), ConfigError);
}

TEST(LogTimeGrid, SpacingAndEndpoints) {
  const auto g = log_time_grid(0.1, 100.0, 4, true);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_EQ(g[0], 0.0);
  EXPECT_DOUBLE_EQ(g[1], 0.1);
  EXPECT_NEAR(g[2], 1.0, 1e-12);
  EXPECT_NEAR(g[3], 10.0, 1e-12);
  EXPECT_DOUBLE_EQ(g[4], 100.0);
  EXPECT_THROW(log_time_grid(1.0, 0.5, 4, false), ConfigError);
  EXPECT_THROW(log_time_grid(0.0, 1.0, 4, false), ConfigError);
}
