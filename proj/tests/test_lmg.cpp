#include <cmath>

#include <gtest/gtest.h>

#include <spinbell/lmg.hpp>

#include "brute.hpp"

using namespace spinbell;

namespace {

// L = 2 (spin 1) Hamiltonian written out by hand, constant included.
RMatrix hand_l2(double gamma, double h) {
  RMatrix H(3, 3);
  H << -0.5 * (1 + gamma) + 2 * gamma + 2 * h, 0, -0.5 * (1 - gamma),  //
      0, gamma - 1, 0,                                                  //
      -0.5 * (1 - gamma), 0, -0.5 * (1 + gamma) + 2 * gamma - 2 * h;
  return H;
}

std::vector<double> sorted_eigs(const RMatrix& m) {
  Eigen::SelfAdjointEigenSolver<RMatrix> es(m);
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

}  // namespace

TEST(LmgHamiltonian, SpinOneByHand) {
  for (double g : {1.0, 0.0, -1.0, 0.37})
    for (double h : {0.0, 0.3, -1.2}) {
      const CMatrix H = build_lmg_hamiltonian({2, g, h}).matrix();
      EXPECT_LT((H - hand_l2(g, h).cast<cplx>()).cwiseAbs().maxCoeff(), 1e-14) << g << " " << h;
      const Spectrum s = solve_lmg({2, g, h});
      const auto ref = sorted_eigs(hand_l2(g, h));
      for (int v = 0; v < 3; ++v) EXPECT_NEAR(s.energies[v], ref[v], 1e-12);
    }
}

TEST(LmgHamiltonian, GammaZeroSpinOneLevels) {
  const Spectrum s = solve_lmg({2, 0.0, 0.0});
  EXPECT_NEAR(s.energies[0], -1.0, 1e-14);
  EXPECT_NEAR(s.energies[1], -1.0, 1e-14);
  EXPECT_NEAR(s.energies[2], 0.0, 1e-14);
}

TEST(LmgHamiltonian, FieldEntersLinearly) {
  const CMatrix a = build_lmg_hamiltonian({6, -0.4, 0.2}).matrix();
  const CMatrix b = build_lmg_hamiltonian({6, -0.4, 0.7}).matrix();
  const CMatrix sz = build_collective_ops(DickeBasis(6)).Sz.matrix();
  EXPECT_LT((b - a + 2.0 * 0.5 * sz).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(LmgHamiltonian, MatchesProductSpaceModel) {
  // -(1/L) sum_{i<j} (sx sx + g sy sy) in Pauli form equals the collective model up to a constant.
  const int L = 4;
  const double g = -0.6, h = 0.3;
  const brute::CMat D = brute::dicke_vectors(L);
  brute::CMat H = brute::CMat::Zero(16, 16);
  for (int i = 0; i < L; ++i)
    for (int j = i + 1; j < L; ++j)
      H -= (4.0 / L) * (brute::site(brute::sx_half(), i, L) * brute::site(brute::sx_half(), j, L) +
                        g * brute::site(brute::sy_half(), i, L) * brute::site(brute::sy_half(), j, L));
  H -= 2.0 * h * brute::collective(brute::sz_half(), L);
  const brute::CMat P = D.adjoint() * H * D;
  const Spectrum s = solve_lmg({L, g, h});
  Eigen::SelfAdjointEigenSolver<brute::CMat> es(P);
  const double shift = s.energies[0] - es.eigenvalues()(0);
  for (int v = 0; v <= L; ++v) EXPECT_NEAR(s.energies[v] - es.eigenvalues()(v), shift, 1e-12);
}

TEST(LmgHamiltonian, RejectsBadParameters) {
  EXPECT_THROW(build_lmg_hamiltonian({1, 1.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(build_lmg_hamiltonian({4, std::nan(""), 0.0}), std::invalid_argument);
  EXPECT_THROW(build_lmg_hamiltonian({4, 1.0, INFINITY}), std::invalid_argument);
}

TEST(LmgSpectrum, GammaOneGroundStatesAtLFour) {
  // Ground level m minimizes m^2/2 - 2 h m over m in {-2..2}.
  const std::vector<std::pair<double, double>> cases{{0.0, 0.0}, {0.1, 0.0}, {0.3, 1.0}, {0.5, 1.0}, {0.9, 2.0}, {-0.5, -1.0}};
  for (const auto& [h, m] : cases) {
    const Spectrum s = solve_lmg({4, 1.0, h});
    EXPECT_DOUBLE_EQ(gamma1_ground_m(h, 4), m) << h;
    EXPECT_NEAR(s.magnetization[0], m, 1e-12) << h;
    EXPECT_NEAR(s.energies[0], 0.5 * m * m - 2.0 * h * m, 1e-12) << h;
    EXPECT_NEAR(std::abs(s.states[0].amplitudes()(DickeBasis(4).index_of(m))), 1.0, 1e-12);
  }
}

TEST(LmgSpectrum, DegenerateLevelsAreDickeStates) {
  const Spectrum s = solve_lmg({6, 1.0, 0.0});
  for (std::size_t v = 0; v < s.size(); ++v) {
    const double m = s.magnetization[v];
    EXPECT_NEAR(m, std::round(m), 1e-10);
    EXPECT_NEAR(s.energies[v], gamma1_energy(std::round(m), 0.0, 6), 1e-12);
  }
}

TEST(LmgSpectrum, ParityLabels) {
  const Spectrum s = solve_lmg({6, 0.3, 0.2});
  for (std::size_t v = 0; v < s.size(); ++v) {
    ASSERT_NE(s.parity[v], 0);
    const CVector& a = s.states[v].amplitudes();
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      const int p = ((6 - i) % 2 == 0) ? 1 : -1;  // (-1)^(S-m) with S - m = L - i
      if (p != s.parity[v]) {
        EXPECT_LT(std::abs(a(i)), 1e-12);
      }
    }
  }
}

TEST(LmgClosedForm, GroundMagnetizationTies) {
  EXPECT_DOUBLE_EQ(gamma1_ground_m(0.25, 4), 0.0);
  EXPECT_DOUBLE_EQ(gamma1_ground_m(0.75, 4), 1.0);
  EXPECT_DOUBLE_EQ(gamma1_ground_m(10.0, 4), 2.0);
  EXPECT_DOUBLE_EQ(gamma1_ground_m(-10.0, 5), -2.5);
  EXPECT_DOUBLE_EQ(gamma1_ground_m(0.0, 5), -0.5);
  EXPECT_THROW(gamma1_energy(0.5, 0.0, 4), std::out_of_range);
}

TEST(Gibbs, HighTemperatureIsMaximallyMixed) {
  const Spectrum s = solve_lmg({8, 0.5, 0.3});
  const GibbsState g = gibbs_state(s, 1e9);
  EXPECT_LT((g.rho.matrix() - CMatrix::Identity(9, 9) / 9.0).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_NEAR(g.log_z_shifted, std::log(9.0), 1e-8);
}

TEST(Gibbs, ZeroTemperatureDegenerateDoublet) {
  const Spectrum s = solve_lmg({4, 0.0, 0.0});
  const GibbsState g = gibbs_state(s, 0.0);
  EXPECT_DOUBLE_EQ(g.weights[0], 0.5);
  EXPECT_DOUBLE_EQ(g.weights[1], 0.5);
  for (std::size_t v = 2; v < g.weights.size(); ++v) EXPECT_EQ(g.weights[v], 0.0);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(g.rho.matrix());
  int rank = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) rank += es.eigenvalues()(i) > 1e-12;
  EXPECT_EQ(rank, 2);
}

TEST(Gibbs, ZeroTemperatureNonDegenerateIsPure) {
  const Spectrum s = solve_lmg({4, 1.0, 0.3});
  const GibbsState g = gibbs_state(s, 0.0);
  EXPECT_DOUBLE_EQ(g.weights[0], 1.0);
  EXPECT_NEAR((g.rho.matrix() * g.rho.matrix() - g.rho.matrix()).norm(), 0.0, 1e-12);
}

TEST(Gibbs, WeightsMatchDirectBoltzmann) {
  const Spectrum s = solve_lmg({6, 1.0, 0.1});
  const double T = 0.37;
  const GibbsState g = gibbs_state(s, T);
  double z = 0.0;
  for (double e : s.energies) z += std::exp(-e / T);
  for (std::size_t v = 0; v < s.size(); ++v) EXPECT_NEAR(g.weights[v], std::exp(-s.energies[v] / T) / z, 1e-14);
}

TEST(Gibbs, LowTemperatureDoesNotUnderflow) {
  const Spectrum s = solve_lmg({40, 1.0, 0.04});
  const GibbsState g = gibbs_state(s, 1e-6);
  EXPECT_NEAR(g.rho.matrix().trace().real(), 1.0, 1e-12);
  EXPECT_NEAR(g.weights[0], 1.0, 1e-12);
  EXPECT_THROW(gibbs_state(s, -1.0), std::invalid_argument);
  EXPECT_THROW(gibbs_state(s, std::nan("")), std::invalid_argument);
}
