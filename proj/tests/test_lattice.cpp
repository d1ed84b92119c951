#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <spinbell/lattice.hpp>
#include <spinbell/lmg.hpp>

#include "brute.hpp"

using namespace spinbell;

namespace {

CVector x_ghz(int L, double sign) {
  const Eigen::Index N = Eigen::Index{1} << L;
  CVector plus = CVector::Constant(N, std::pow(0.5, 0.5 * L));
  CVector minus(N);
  for (Eigen::Index x = 0; x < N; ++x) minus(x) = (std::popcount(static_cast<std::uint64_t>(x)) % 2 ? -1.0 : 1.0) * plus(x);
  return (plus + sign * minus) / std::sqrt(2.0);
}

}  // namespace

TEST(Couplings, PowerLaw) {
  const RMatrix J0 = power_law_couplings(5, 0.0);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) EXPECT_EQ(J0(i, j), i == j ? 0.0 : 1.0);
  EXPECT_DOUBLE_EQ(power_law_couplings(5, 3.0)(0, 2), 0.125);
  const RMatrix J50 = power_law_couplings(6, 50.0);
  EXPECT_EQ(J50(2, 3), 1.0);
  EXPECT_LT(J50(1, 3), 1e-15);
  EXPECT_THROW(power_law_couplings(4, -1.0), std::invalid_argument);
}

TEST(Params, Validation) {
  EXPECT_THROW(power_law_params(15, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(power_law_params(1, 1.0, 0.0), std::invalid_argument);
  LatticeParams p = power_law_params(4, 1.0, 0.0);
  p.J(0, 1) = 2.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = power_law_params(4, 1.0, 0.0);
  p.J(2, 2) = 1.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(Hamiltonian, TwoSpinsByHand) {
  // -(1/2)(sx sx + sy sy) swaps |01> and |10> with amplitude -1.
  RMatrix ref = RMatrix::Zero(4, 4);
  ref(1, 2) = ref(2, 1) = -1.0;
  const RMatrix H = build_lattice_hamiltonian(power_law_params(2, 1.0, 0.0));
  EXPECT_LT((H - ref).cwiseAbs().maxCoeff(), 1e-15);
  Eigen::SelfAdjointEigenSolver<RMatrix> es(H);
  EXPECT_NEAR(es.eigenvalues()(0), -1.0, 1e-14);
  EXPECT_NEAR(es.eigenvalues()(3), 1.0, 1e-14);
}

TEST(Hamiltonian, MatchesPauliTensorProducts) {
  const int L = 4;
  LatticeParams p = power_law_params(L, -0.7, 1.3);
  p.h_field << 0.1, -0.4, 0.25, 0.0;
  brute::CMat ref = brute::CMat::Zero(16, 16);
  for (int i = 0; i < L; ++i) {
    ref += 2.0 * p.h_field(i) * brute::site(brute::sz_half(), i, L);
    for (int j = i + 1; j < L; ++j)
      ref -= (4.0 * p.J(i, j) / L) * (brute::site(brute::sx_half(), i, L) * brute::site(brute::sx_half(), j, L) +
                                      p.gamma * brute::site(brute::sy_half(), i, L) * brute::site(brute::sy_half(), j, L));
  }
  EXPECT_LT((build_lattice_hamiltonian(p).cast<cplx>() - ref).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Hamiltonian, SymmetricSectorMatchesCollectiveModel) {
  const int L = 6;
  for (double g : {1.0, 0.0, -1.0}) {
    const double h = 0.3;
    const RMatrix H = build_lattice_hamiltonian(power_law_params(L, g, 0.0, -h));
    const brute::CMat D = brute::dicke_vectors(L);
    Eigen::SelfAdjointEigenSolver<brute::CMat> es(D.adjoint() * H.cast<cplx>() * D);
    const Spectrum s = solve_lmg({L, g, h});
    const double shift = es.eigenvalues()(0) - s.energies[0];
    for (int v = 0; v <= L; ++v) EXPECT_NEAR(es.eigenvalues()(v) - s.energies[v], shift, 1e-10) << g;
  }
}

TEST(GroundState, GammaZeroXDoublet) {
  const RMatrix H = build_lattice_hamiltonian(power_law_params(6, 0.0, 0.0));
  const GroundState g = ground_state(H);
  EXPECT_TRUE(g.degenerate);
  for (double s : {1.0, -1.0}) {
    const CVector v = x_ghz(6, s);
    EXPECT_NEAR((v.adjoint() * H.cast<cplx>() * v)(0).real(), g.energy, 1e-12);
  }
}

TEST(GroundState, SmallAnisotropyPicksXGhz) {
  const GroundState g = ground_state(build_lattice_hamiltonian(power_law_params(8, 1e-3, 1.0)));
  const double best = std::max(std::norm(x_ghz(8, 1.0).dot(g.state.amplitudes)), std::norm(x_ghz(8, -1.0).dot(g.state.amplitudes)));
  EXPECT_GT(best, 0.999);
}

TEST(GroundState, IsotropicGroundStateIsSymmetric) {
  const GroundState g = ground_state(build_lattice_hamiltonian(power_law_params(8, 1.0, 0.0)));
  EXPECT_GT(project_symmetric(g.state).weight, 1.0 - 1e-8);
}

TEST(GroundState, ResidualAndPhase) {
  LatticeParams p = power_law_params(7, 0.4, 0.8);
  p.h_field << 0.3, -0.1, 0.2, 0.5, -0.4, 0.0, 0.1;
  const RMatrix H = build_lattice_hamiltonian(p);
  const GroundState g = ground_state(H);
  const CVector& v = g.state.amplitudes;
  EXPECT_LT((H.cast<cplx>() * v - g.energy * v).norm(), 1e-10);
  EXPECT_NEAR(v.norm(), 1.0, 1e-12);
  Eigen::Index k;
  v.cwiseAbs().maxCoeff(&k);
  EXPECT_GT(v(k).real(), 0.0);
  EXPECT_EQ(v(k).imag(), 0.0);
  Eigen::SelfAdjointEigenSolver<RMatrix> es(H, Eigen::EigenvaluesOnly);
  EXPECT_NEAR(g.energy, es.eigenvalues()(0), 1e-12);
  EXPECT_NEAR(g.gap, es.eigenvalues()(1) - es.eigenvalues()(0), 1e-10);
}

TEST(LocalCorrelator, GhzAndProductStates) {
  for (int L : {3, 6}) {
    const FullState g = embed_symmetric(SymmetricState::ghz(DickeBasis(L)));
    const SiteAngles zero(static_cast<std::size_t>(L), {0.0, 0.0});
    EXPECT_NEAR(std::abs(local_bell_correlator(g, zero)), 0.5, 1e-14);
    const Eigen::Index N = Eigen::Index{1} << L;
    const FullState plus{L, CVector::Constant(N, std::pow(0.5, 0.5 * L))};
    EXPECT_NEAR(optimize_bell_local(plus).E, std::pow(2.0, -2 * L), 1e-12);
  }
}

TEST(LocalCorrelator, DensityFormMatchesPureForm) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n;
  const int L = 4;
  CVector a(16);
  for (auto& x : a) x = cplx(n(rng), n(rng));
  a.normalize();
  const FullState s{L, a};
  SiteAngles ang;
  for (int k = 0; k < L; ++k) ang.push_back({n(rng), n(rng)});
  EXPECT_LT(std::abs(local_bell_correlator(s, ang) - local_bell_correlator(CMatrix(a * a.adjoint()), ang)), 1e-13);
}

TEST(LocalCorrelator, RandomProductStateBelowSeparableCeiling) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n;
  for (int rep = 0; rep < 3; ++rep) {
    CVector v = CVector::Ones(1);
    for (int k = 0; k < 6; ++k) {
      Eigen::Vector2cd q(cplx(n(rng), n(rng)), cplx(n(rng), n(rng)));
      q.normalize();
      CVector w(2 * v.size());
      // Spin k is bit k: the new spin becomes the highest bit.
      w.head(v.size()) = q(0) * v;
      w.tail(v.size()) = q(1) * v;
      v = w;
    }
    EXPECT_LE(optimize_bell_local({6, v}).Q, -6.0 + 1e-6);
  }
}

TEST(LocalOptimizer, AgreesWithSymmetricEngine) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> n;
  for (int L : {3, 5}) {
    CVector a(L + 1);
    for (auto& x : a) x = cplx(n(rng), n(rng));
    const SymmetricState s = SymmetricState::normalized(DickeBasis(L), a);
    const BellResult full = optimize_bell_local(embed_symmetric(s));
    EXPECT_NEAR(full.Q, optimize_bell_symmetric(s).Q, 1e-6) << L;
  }
  const BellResult g = optimize_bell_local(embed_symmetric(SymmetricState::dicke(DickeBasis(6), 0)));
  for (const auto& a : g.site_angles) {
    EXPECT_NEAR(std::cos(a[0]), std::cos(g.site_angles[0][0]), 1e-6);
  }
}

TEST(LocalOptimizer, TwoGhzBlocks) {
  const int L = 8;
  const Eigen::Index low = 15, high = 255 ^ 15;
  CVector v = CVector::Zero(256);
  for (Eigen::Index x : {Eigen::Index{0}, low, high, Eigen::Index{255}}) v(x) = 0.5;
  const BellResult r = optimize_bell_local({L, v});
  EXPECT_NEAR(r.E, 1.0 / 16.0, 1e-10);
  EXPECT_NEAR(r.Q, L - 4.0, 1e-9);
}

TEST(Noise, ZeroAmplitude) {
  RandomStream s(1);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(sample_noise(NoiseDist::P1, 0.0, s), 0.0);
    EXPECT_EQ(sample_noise(NoiseDist::P2, 0.0, s), 0.0);
  }
  EXPECT_THROW(sample_noise(NoiseDist::P1, -1.0, s), std::invalid_argument);
}

TEST(Noise, UniformMoments) {
  RandomStream s(kDefaultSeed, 17);
  const int n = 100000;
  double sum = 0.0, sq = 0.0, lo = 1.0, hi = -1.0;
  for (int i = 0; i < n; ++i) {
    const double e = sample_noise(NoiseDist::P1, 1.0, s);
    sum += e;
    sq += e * e;
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  const double mean = sum / n, var = sq / n - mean * mean;
  EXPECT_LT(std::abs(mean), 3.0 * std::sqrt(1.0 / 12.0 / n));
  EXPECT_NEAR(var / (1.0 / 12.0), 1.0, 0.02);
  EXPECT_GE(lo, -0.5);
  EXPECT_LT(hi, 0.5);
}

TEST(Noise, ArcsineKolmogorovSmirnov) {
  RandomStream s(kDefaultSeed, 23);
  const int n = 100000;
  std::vector<double> e(n);
  for (auto& x : e) x = sample_noise(NoiseDist::P2, 1.0, s);
  std::sort(e.begin(), e.end());
  double ks = 0.0;
  for (int i = 0; i < n; ++i) {
    const double F = 2.0 / kPi * std::asin(std::sqrt(e[i]));
    ks = std::max({ks, std::abs(F - static_cast<double>(i) / n), std::abs(F - static_cast<double>(i + 1) / n)});
  }
  EXPECT_LT(ks, 0.01);
}

TEST(Disorder, ApplicationRules) {
  const LatticeParams clean = power_law_params(5, 1.0, 0.0);
  RandomStream s(3);
  const LatticeParams d = apply_disorder(clean, {DisorderKind::diagonal, NoiseDist::P1, 0.5, 1, 3}, s);
  EXPECT_EQ(d.J, clean.J);
  EXPECT_GT(d.h_field.cwiseAbs().maxCoeff(), 0.0);
  const LatticeParams o = apply_disorder(clean, {DisorderKind::off_diagonal, NoiseDist::P2, 0.5, 1, 3}, s);
  EXPECT_EQ(o.h_field, clean.h_field);
  EXPECT_EQ(o.J, o.J.transpose());
  EXPECT_EQ(o.J.diagonal().cwiseAbs().maxCoeff(), 0.0);
  EXPECT_NO_THROW(o.validate());
}

TEST(Disorder, ZeroAmplitudeIsExact) {
  const DisorderResult r = disorder_ensemble(power_law_params(6, 1.0, 0.0), {DisorderKind::off_diagonal, NoiseDist::P1, 0.0, 8, 9});
  EXPECT_EQ(r.mean_rel, 1.0);
  EXPECT_EQ(r.std_rel, 0.0);
}

TEST(Disorder, IndependentOfWorkerCount) {
  const LatticeParams clean = power_law_params(6, -1.0, 0.0);
  const DisorderSpec spec{DisorderKind::diagonal, NoiseDist::P2, 0.4, 12, 77};
  const DisorderResult a = disorder_ensemble(clean, spec, 1), b = disorder_ensemble(clean, spec, 3);
  EXPECT_EQ(a.per_sample_Q, b.per_sample_Q);
  EXPECT_EQ(a.mean_rel, b.mean_rel);
}

TEST(Disorder, RejectsNonPositiveReference) {
  EXPECT_THROW(disorder_ensemble(power_law_params(4, 1.0, 0.0), {DisorderKind::diagonal, NoiseDist::P1, 0.1, 2, 1}, 1, 0.0),
               std::domain_error);
  EXPECT_THROW(disorder_ensemble(power_law_params(4, 1.0, 0.0), {DisorderKind::diagonal, NoiseDist::P1, 0.1, 0, 1}),
               std::invalid_argument);
  EXPECT_THROW(parse_disorder_kind("both"), std::invalid_argument);
  EXPECT_THROW(parse_noise_dist("p3"), std::invalid_argument);
}
