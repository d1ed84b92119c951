#include <cmath>

#include <gtest/gtest.h>

#include <spinbell/oracles.hpp>

#include "brute.hpp"

using namespace spinbell;

TEST(Binomial, DirectEvaluation) {
  for (int L = 1; L <= 30; ++L)
    for (int k = 0; k <= L; ++k) {
      const double amp = brute::binomial(L, k) / std::pow(2.0, L);
      EXPECT_NEAR(binomial_coherence(L, k - 0.5 * L).E(), amp * amp, 1e-12 * amp * amp);
    }
  EXPECT_NEAR(binomial_coherence(4, 0).Q, 1.169925001442312, 1e-12);
  EXPECT_THROW(binomial_coherence(4, 0.5), std::out_of_range);
}

TEST(Gaussian, DirectEvaluation) {
  EXPECT_NEAR(gaussian_coherence(40, 0).E(), 2.0 / (40.0 * kPi), 1e-15);
  EXPECT_LT(std::abs(gaussian_coherence(40, 0).E() / binomial_coherence(40, 0).E() - 1.0), 0.02);
  for (int L = 4; L <= 40; ++L) EXPECT_GT(gaussian_coherence(L, 0).Q, 0.0);
}

TEST(LinearRelation, MatchesGaussian) {
  EXPECT_NEAR(q_energy_linear(0.0, 40), 40.0 + std::log2(2.0 / (40.0 * kPi)), 1e-12);
  EXPECT_NEAR(q_energy_linear(0.0, 40), 34.03, 5e-3);
  EXPECT_NEAR(q_energy_linear(0.0, 4), 1.3485, 1e-4);
  for (int L : {4, 9, 40})
    for (double m = -0.5 * L; m <= 0.5 * L; m += 1.0)
      EXPECT_NEAR(q_energy_linear(gamma1_energy(m, 0.0, L), L), gaussian_coherence(L, m).Q, 1e-12);
}

TEST(ThermalSum, LowTemperatureSelectsGroundDicke) {
  const double h = 0.04;
  const int L = 8;
  const double m0 = gamma1_ground_m(h, L);
  EXPECT_NEAR(thermal_sum_oracle(L, h, 1e-4).E() / binomial_coherence(L, m0).E(), 1.0, 1e-4);
}

TEST(ThermalSum, HighTemperatureCancels) { EXPECT_LT(thermal_sum_oracle(40, 0.0, 1e6).E(), 1e-10); }

TEST(ThermalSum, DirectSumAtSmallL) {
  const int L = 6;
  const double h = 0.2, T = 0.3;
  double num = 0.0, z = 0.0;
  for (int m = -3; m <= 3; ++m) {
    const double w = std::exp(-((2.0 / L) * m * m - 2.0 * h * m) / T);
    num += (m % 2 == 0 ? 1.0 : -1.0) * w * brute::binomial(L, m + 3) / 64.0;
    z += w;
  }
  EXPECT_NEAR(thermal_sum_oracle(L, h, T).E(), num * num / (z * z), 1e-15);
}

TEST(ThermalSum, Domain) {
  EXPECT_THROW(thermal_sum_oracle(7, 0.0, 0.1), std::invalid_argument);
  EXPECT_THROW(thermal_sum_oracle(8, 0.0, 0.0), std::invalid_argument);
}

TEST(Envelope, Values) {
  EXPECT_NEAR(envelope_oracle(40, 0.0, 0.0).E(), kPi / 80.0, 1e-15);
  for (double T = 0.0; T <= 5.0; T += 0.05) EXPECT_LT(envelope_oracle(40, 0.9, T).Q, 0.0) << T;
  EXPECT_THROW(envelope_oracle(40, 0.0, -0.1), std::invalid_argument);
}

TEST(CriticalTemperature, Values) {
  const double ln2 = std::log(2.0);
  EXPECT_NEAR(t_crit(0.0), ln2 / (kPi * kPi / 4.0 - ln2), 1e-15);
  EXPECT_NEAR(t_crit(0.0), 0.39067, 1e-5);
  EXPECT_NEAR(t_crit(std::sqrt(std::log(2.0))), 0.0, 1e-15);
  EXPECT_EQ(t_crit(2.0), 0.0);
  EXPECT_NEAR(t_crit(0.5), 0.2497, 1e-4);
}

TEST(SxRecursion, SpinOneByHand) {
  // L = 2, h = 1: diagonal (-1, 0, -1), hopping 2 f_+(z).
  const Tridiagonal t = sx_tridiagonal(2, 1.0);
  EXPECT_DOUBLE_EQ(t.diag(0), -1.0);
  EXPECT_DOUBLE_EQ(t.diag(1), 0.0);
  EXPECT_NEAR(t.off(0), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(t.off(1), std::sqrt(2.0), 1e-15);
  Eigen::SelfAdjointEigenSolver<RMatrix> es(t.dense());
  const RVector e = t.eigenvalues();
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(e(i), es.eigenvalues()(i), 1e-12);
  const Spectrum s = solve_lmg({2, 0.0, 1.0});
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(e(i), s.energies[i], 1e-12);
}

TEST(SxRecursion, ZeroFieldIsDiagonal) {
  const Tridiagonal t = sx_tridiagonal(10, 0.0);
  EXPECT_EQ(t.off.cwiseAbs().maxCoeff(), 0.0);
  for (int i = 0; i <= 10; ++i) EXPECT_DOUBLE_EQ(t.diag(i), -2.0 * (i - 5) * (i - 5) / 10.0);
}

TEST(EffectivePotential, Values) {
  for (double h : {0.1, 0.5, 3.0}) EXPECT_DOUBLE_EQ(effective_potential(0.0, h).V, -1.0);
  const auto w = well_minima(2.0);
  ASSERT_TRUE(w.has_value());
  EXPECT_NEAR(w->second, std::sqrt(3.0) / 2.0, 1e-15);
  EXPECT_NEAR(w->first, -std::sqrt(3.0) / 2.0, 1e-15);
  EXPECT_FALSE(well_minima(1.0).has_value());
  EXPECT_FALSE(well_minima(-0.5).has_value());
  EXPECT_THROW(effective_potential(1.1, 0.5), std::invalid_argument);
}

TEST(Doublet, GammaZeroGroundPairHasOppositeSigns) {
  const Spectrum s = solve_lmg({16, 0.0, 0.1});
  const DoubletDiagnostics d = doublet_diagnostics(s);
  EXPECT_LT(d.gap, 1e-6 * std::abs(s.energies[0]));
  EXPECT_EQ(d.coherence_signs.first, 1);
  EXPECT_EQ(d.coherence_signs.second, -1);
}

TEST(Doublet, GammaZeroNearZeroFieldIsGhz) {
  const Spectrum s = solve_lmg({12, 0.0, 1e-6});
  EXPECT_NEAR(doublet_diagnostics(s).ground_bell.Q, 10.0, 1e-6);
}

TEST(Doublet, GammaOneGap) {
  const DoubletDiagnostics d = doublet_diagnostics(solve_lmg({4, 1.0, 0.0}));
  EXPECT_NEAR(d.gap, 0.5, 1e-12);
  EXPECT_NEAR(d.ground_bell.Q, binomial_coherence(4, 0).Q, 1e-9);
}
