#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <spinbell/bell.hpp>

#include "brute.hpp"

using namespace spinbell;

namespace {

SymmetricState random_state(int L, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  CVector a(L + 1);
  for (auto& x : a) x = cplx(n(rng), n(rng));
  return SymmetricState::normalized(DickeBasis(L), a);
}

// Corner coherence from per-spin rotations in the product space.
cplx brute_corner(const SymmetricState& s, const EulerAngles& e) {
  const int L = s.basis().particles();
  const brute::CMat u = brute::rz_half(e.phi) * brute::ry_half(e.beta) * brute::rz_half(e.psi);
  const brute::CVec psi = brute::dicke_vectors(L) * s.amplitudes();
  return brute::corner(brute::product(u, L), psi);
}

}  // namespace

TEST(Coherence, EulerFormMatchesProductSpace) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  for (int L = 1; L <= 6; ++L) {
    const SymmetricState s = random_state(L, rng);
    const SymmetricDensityMatrix rho(s);
    for (int k = 0; k < 5; ++k) {
      const EulerAngles e{ang(rng), ang(rng), ang(rng)};
      const cplx ref = brute_corner(s, e);
      EXPECT_LT(std::abs(ghz_coherence_euler(rho, e) - ref), 1e-12);
      const CMatrix P = euler_rotation(s.basis(), e);
      const CMatrix r = P * rho.matrix() * P.adjoint();
      EXPECT_LT(std::abs(r(0, L) - ref), 1e-12);
    }
  }
}

TEST(Coherence, TraceFormMatchesCorner) {
  std::mt19937_64 rng(11);
  for (int L : {2, 5, 9}) {
    const SymmetricDensityMatrix rho(random_state(L, rng));
    const std::array<double, 3> th{0.3, -1.2, 0.8};
    EXPECT_LT(std::abs(ghz_coherence_trace(rho, th) - ghz_coherence(rho, th)), 1e-12);
  }
}

TEST(Optimizer, NoWorseThanDenseGrid) {
  std::mt19937_64 rng(3);
  for (int L : {2, 3, 4}) {
    const SymmetricState s = random_state(L, rng);
    double grid_best = 0.0;
    const int n = 240;
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j < 2 * n; ++j) {
        const EulerAngles e{0.0, kPi * i / n, -kPi + kPi * j / n};
        grid_best = std::max(grid_best, std::norm(brute_corner(s, e)));
      }
    const BellResult r = optimize_bell_symmetric(s);
    EXPECT_GE(r.E, grid_best * (1.0 - 1e-9)) << L;
    EXPECT_LE(r.E, grid_best * (1.0 + 1e-3)) << L;
    EXPECT_NEAR(r.E, std::norm(brute_corner(s, r.theta_opt)), 1e-12);
  }
}

TEST(Optimizer, DickeAndGhzValues) {
  const DickeBasis b(4);
  EXPECT_NEAR(optimize_bell_symmetric(SymmetricState::dicke(b, 0)).Q, 4.0 + 2.0 * std::log2(6.0 / 16.0), 1e-9);
  EXPECT_NEAR(optimize_bell_symmetric(SymmetricState::dicke(b, 1)).Q, 0.0, 1e-9);
  // |S,S> is a product state and sits exactly on the separable ceiling.
  EXPECT_NEAR(optimize_bell_symmetric(SymmetricState::dicke(b, 2)).Q, -4.0, 1e-9);
  for (int L = 3; L <= 30; L += 3) EXPECT_NEAR(optimize_bell_symmetric(SymmetricState::ghz(DickeBasis(L))).Q, L - 2.0, 1e-9);
}

TEST(Optimizer, MaximallyMixedHasNoCoherence) {
  const DickeBasis b(8);
  const SymmetricDensityMatrix rho(b, CMatrix::Identity(9, 9) / 9.0);
  EXPECT_LT(optimize_bell_symmetric(rho).E, 1e-12);
}

TEST(Optimizer, DeterministicForFixedSeed) {
  std::mt19937_64 rng(5);
  const SymmetricState s = random_state(7, rng);
  const BellResult a = optimize_bell_symmetric(s), b = optimize_bell_symmetric(s);
  EXPECT_EQ(a.E, b.E);
  EXPECT_EQ(a.theta_opt.beta, b.theta_opt.beta);
  EXPECT_EQ(a.theta_opt.psi, b.theta_opt.psi);
  EXPECT_EQ(a.n_starts, 26);
  BellOptimizerOptions other;
  other.seed = 12345;
  EXPECT_NEAR(optimize_bell_symmetric(s, other).E, a.E, 1e-9 * a.E);
}

TEST(Optimizer, PureAndDensityFormsAgree) {
  std::mt19937_64 rng(9);
  const SymmetricState s = random_state(6, rng);
  EXPECT_NEAR(optimize_bell_symmetric(s).E, optimize_bell_symmetric(SymmetricDensityMatrix(s)).E, 1e-10);
}

TEST(Conversions, QAndLogE) {
  EXPECT_EQ(q_from_logE(kNegInf, 5), kNegInf);
  EXPECT_EQ(logE_from_q(kNegInf, 5), kNegInf);
  EXPECT_NEAR(q_from_logE(std::log(0.25), 6), 4.0, 1e-15);
  EXPECT_NEAR(logE_from_q(4.0, 6), std::log(0.25), 1e-15);
  BellResult r;
  set_from_coherence(r, 0.0, 4);
  EXPECT_EQ(r.Q, kNegInf);
  EXPECT_EQ(r.E, 0.0);
}

TEST(Depth, Windows) {
  EXPECT_EQ(classify_depth(8.0, 10).n, 0);
  EXPECT_TRUE(classify_depth(8.0, 10).certified);
  EXPECT_EQ(classify_depth(6.0, 10).n, 2);
  EXPECT_EQ(classify_depth(5.5, 10).n, 2);
  EXPECT_EQ(classify_depth(5.0, 10).n, 3);
  EXPECT_EQ(classify_depth(7.9999999999, 10).n, 0);
  EXPECT_FALSE(classify_depth(0.0, 10).certified);
  EXPECT_FALSE(classify_depth(-3.0, 10).certified);
  EXPECT_THROW(classify_depth(8.5, 10), std::invalid_argument);
  EXPECT_THROW(classify_depth(0.5, 2), std::invalid_argument);
}
