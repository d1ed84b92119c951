#pragma once

// Invariant suites of every module, run by `spinbell validate`.

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>
#include <string>
#include <vector>

#include "bell.hpp"
#include "dicke.hpp"
#include "lattice.hpp"
#include "lmg.hpp"
#include "manifest.hpp"
#include "oracles.hpp"
#include "sweep.hpp"
#include "validation.hpp"

namespace spinbell {

/// Random full-rank density matrix A A^dag / Tr, entries uniform in the unit square.
inline SymmetricDensityMatrix random_density(const DickeBasis& basis, RandomStream& rng, Eigen::Index rank = -1) {
  const auto n = basis.dim();
  const auto k = rank < 1 ? n : rank;
  CMatrix A(n, k);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < k; ++j) A(i, j) = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  CMatrix rho = A * A.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  return SymmetricDensityMatrix(basis, std::move(rho));
}

inline std::array<double, 3> random_angles(RandomStream& rng) {
  return {rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi)};
}

namespace props {

inline std::vector<Measurement> commutator() {
  double dev = 0.0;
  for (int L = 1; L <= 64; ++L) {
    const auto ops = build_collective_ops(DickeBasis(L));
    const CMatrix c = ops.Sx.matrix() * ops.Sy.matrix() - ops.Sy.matrix() * ops.Sx.matrix() - cplx(0, 1) * ops.Sz.matrix();
    dev = std::max(dev, max_abs(c));
  }
  return {at_most("", "max |[Sx,Sy] - i Sz|, L <= 64", dev, 1e-12, dev)};
}

inline std::vector<Measurement> casimir() {
  double dev = 0.0;
  for (int L = 1; L <= 64; ++L) {
    const DickeBasis b(L);
    const auto ops = build_collective_ops(b);
    const double S = b.spin();
    const CMatrix c = ops.Sx.matrix() * ops.Sx.matrix() + ops.Sy.matrix() * ops.Sy.matrix() +
                      ops.Sz.matrix() * ops.Sz.matrix() - S * (S + 1) * CMatrix::Identity(b.dim(), b.dim());
    dev = std::max(dev, max_abs(c));
  }
  return {at_most("", "max |S^2 - S(S+1)|, L <= 64", dev, 1e-10, dev)};
}

inline std::vector<Measurement> ladder_power() {
  std::size_t stray = 0;
  double rel = 0.0;
  for (int L = 1; L <= 64; ++L) {
    const DickeBasis b(L);
    const RMatrix sp = build_collective_ops(b).Splus.matrix().real();
    RMatrix acc = RMatrix::Identity(b.dim(), b.dim());
    for (int k = 0; k < L; ++k) acc = (acc * sp).eval();
    for (Eigen::Index i = 0; i < b.dim(); ++i)
      for (Eigen::Index j = 0; j < b.dim(); ++j)
        if (!(i == b.dim() - 1 && j == 0) && acc(i, j) != 0.0) ++stray;
    const double corner = acc(b.dim() - 1, 0);
    const double lf = log_factorial(L);
    rel = std::max(rel, corner > 0.0 ? std::abs(std::log(corner) - lf) / std::max(lf, 1.0) : HUGE_VAL);
  }
  return {no_violations("structure", "nonzero entries of S+^L off (S,-S)", stray),
          at_most("value", "relative log deviation of the corner from log L!", rel, 1e-12, rel)};
}

inline std::vector<Measurement> rotation_composition() {
  RandomStream rng(kDefaultSeed, 101);
  double dev = 0.0;
  for (int L = 1; L <= 20; ++L)
    for (int t = 0; t < 3; ++t) {
      const auto th = random_angles(rng);
      const DickeBasis b(L);
      const CMatrix p = rotation_operator(b, th).matrix() * rotation_operator(b, {-th[0], -th[1], -th[2]}).matrix();
      dev = std::max(dev, max_abs(p - CMatrix::Identity(b.dim(), b.dim())));
    }
  return {at_most("", "max |R(theta) R(-theta) - 1|", dev, 1e-12, dev)};
}

inline std::vector<Measurement> wigner_vs_exponential() {
  double dev = 0.0;
  for (int L = 1; L <= 64; ++L) {
    const DickeBasis b(L);
    const CMatrix U = unitary_exp(-(kPi / 2) * build_collective_ops(b).Sy.matrix());  // exp(+i pi/2 Sy)
    dev = std::max(dev, (U.real().transpose() - wigner_d_half_pi(b)).cwiseAbs().maxCoeff());
  }
  return {at_most("", "max |d(pi/2) - exp(i pi/2 Sy)|, L <= 64", dev, 1e-10, dev)};
}

inline std::vector<double> sorted_energies(const Spectrum& s) {
  std::vector<double> e = s.energies;
  std::sort(e.begin(), e.end());
  return e;
}

inline std::vector<Measurement> gamma1_spectrum() {
  double dev = 0.0;
  for (int L = 2; L <= 64; ++L)
    for (int k = 0; k <= 8; ++k) {
      const double h = 0.25 * k;
      const auto got = sorted_energies(solve_lmg({L, 1.0, h}));
      std::vector<double> want;
      const DickeBasis b(L);
      for (Eigen::Index i = 0; i < b.dim(); ++i) want.push_back(gamma1_energy(b.m(i), h, L));
      std::sort(want.begin(), want.end());
      for (std::size_t i = 0; i < want.size(); ++i) dev = std::max(dev, std::abs(got[i] - want[i]));
    }
  return {at_most("", "max |E_numeric - ((2/L) m^2 - 2 h m)|, L <= 64, h in [0,2]", dev, 1e-10, dev)};
}

inline std::vector<Measurement> gamma1_h0_doublets() {
  double dev = 0.0;
  for (int L = 2; L <= 64; ++L) {
    const auto e = sorted_energies(solve_lmg({L, 1.0, 0.0}));
    // Even L: unique ground level m = 0, then pairs. Odd L: pairs from the start.
    for (std::size_t i = (L % 2 == 0) ? 1 : 0; i + 1 < e.size(); i += 2) dev = std::max(dev, std::abs(e[i + 1] - e[i]));
  }
  return {at_most("", "max splitting of the m <-> -m pairs at h = 0", dev, 1e-10, dev)};
}

inline std::vector<Measurement> gibbs_weights() {
  std::size_t bad_order = 0, bad_logz = 0;
  for (double g : {1.0, 0.0, -1.0})
    for (int L : {4, 9, 16})
      for (double h : {0.0, 0.3}) {
        const Spectrum s = solve_lmg({L, g, h});
        for (double T : {0.0, 1e-6, 1e-3, 0.1, 1.0, 10.0, 1e3, 1e9}) {
          const GibbsState gs = gibbs_state(s, T);
          if (!std::isfinite(gs.log_z_shifted)) ++bad_logz;
          for (std::size_t a = 0; a < s.size(); ++a)
            for (std::size_t b = 0; b < s.size(); ++b)
              if (s.energies[a] < s.energies[b] && gs.weights[a] < gs.weights[b]) ++bad_order;
        }
      }
  return {no_violations("monotone", "weight pairs increasing with energy", bad_order),
          no_violations("logz", "non-finite shifted log Z for T in [0, 1e9]", bad_logz)};
}

inline std::vector<Measurement> h_reflection() {
  double dev = 0.0;
  for (int L = 2; L <= 40; ++L)
    for (double h : {0.1, 0.37, 1.3}) {
      const auto a = sorted_energies(solve_lmg({L, 1.0, h}));
      const auto b = sorted_energies(solve_lmg({L, 1.0, -h}));
      for (std::size_t i = 0; i < a.size(); ++i) dev = std::max(dev, std::abs(a[i] - b[i]));
    }
  return {at_most("", "max |E(h) - E(-h)| over the sorted spectrum", dev, 1e-10, dev)};
}

inline std::vector<Measurement> spectrum_residuals() {
  RandomStream rng(kDefaultSeed, 202);
  double res = 0.0;
  std::size_t unsorted = 0;
  for (int L = 2; L <= 64; L += 3) {
    const LmgParams p{L, rng.uniform(-1.5, 1.5), rng.uniform(-1.0, 2.0)};
    const Spectrum s = solve_lmg(p);
    for (std::size_t v = 0; v < s.size(); ++v) {
      const CVector& psi = s.states[v].amplitudes();
      res = std::max(res, (s.hamiltonian * psi - s.energies[v] * psi).norm());
      if (v > 0 && s.energies[v] < s.energies[v - 1] - s.degeneracy_threshold()) ++unsorted;
    }
  }
  return {at_most("residual", "max |H psi - E psi|", res, 1e-10, res),
          no_violations("order", "energies out of ascending order", unsorted)};
}

inline std::vector<Measurement> gibbs_commutes() {
  double comm = 0.0, tr = 0.0;
  for (double g : {1.0, 0.0, -1.0})
    for (int L : {5, 12, 30})
      for (double T : {0.0, 0.05, 0.4, 5.0}) {
        const Spectrum s = solve_lmg({L, g, 0.2});
        const GibbsState gs = gibbs_state(s, T);
        const CMatrix& r = gs.rho.matrix();
        comm = std::max(comm, max_abs(r * s.hamiltonian - s.hamiltonian * r));
        tr = std::max(tr, std::abs(r.trace() - 1.0));
      }
  return {at_most("commutator", "max |[rho, H]|", comm, 1e-10, comm), at_most("trace", "max |Tr rho - 1|", tr, 1e-12, tr)};
}

inline std::vector<Measurement> trace_corner_identity() {
  RandomStream rng(kDefaultSeed, 303);
  double dev = 0.0;
  for (int L = 2; L <= 20; ++L)
    for (int t = 0; t < 3; ++t) {
      const auto rho = random_density(DickeBasis(L), rng);
      const auto th = random_angles(rng);
      dev = std::max(dev, std::abs(ghz_coherence(rho, th) - ghz_coherence_trace(rho, th)));
    }
  return {at_most("", "max |corner - Tr(rho P^dag S+^L P)/L!|, L <= 20", dev, 1e-12, dev)};
}

inline std::vector<Measurement> phase_redundancy() {
  RandomStream rng(kDefaultSeed, 404);
  double dev = 0.0;
  for (int L = 2; L <= 16; ++L) {
    const auto rho = random_density(DickeBasis(L), rng);
    const EulerFrame f(rho.basis());
    const EulerAngles a{0.0, rng.uniform(0.0, kPi), rng.uniform(-kPi, kPi)};
    const double e0 = std::norm(f.coherence(rho.matrix(), a));
    for (double phi : {0.3, 1.7, -2.9}) dev = std::max(dev, std::abs(std::norm(f.coherence(rho.matrix(), {phi, a.beta, a.psi})) - e0));
  }
  return {at_most("", "max |E(phi) - E(0)| at fixed (beta, psi)", dev, 1e-12, dev)};
}

inline std::vector<Measurement> optimizer_lower_bound() {
  RandomStream rng(kDefaultSeed, 505);
  std::size_t bad = 0;
  for (int L = 2; L <= 10; ++L)
    for (int t = 0; t < 3; ++t) {
      const auto rho = random_density(DickeBasis(L), rng, 1 + t);
      const BellResult r = optimize_bell_symmetric(rho);
      const EulerFrame f(rho.basis());
      for (const auto& s : axis_alignments())
        if (r.E < std::norm(f.coherence(rho.matrix(), s))) ++bad;
    }
  return {no_violations("", "optimized E below a deterministic start", bad)};
}

inline std::vector<Measurement> convexity_bound() {
  RandomStream rng(kDefaultSeed, 606);
  double excess = 0.0;
  for (int L = 2; L <= 12; ++L)
    for (int t = 0; t < 4; ++t) {
      const DickeBasis b(L);
      std::vector<SymmetricDensityMatrix> parts;
      std::vector<double> p;
      CMatrix mix = CMatrix::Zero(b.dim(), b.dim());
      double total = 0.0;
      for (int k = 0; k < 3; ++k) {
        parts.push_back(random_density(b, rng, 1 + k));
        p.push_back(rng.uniform(0.05, 1.0));
        total += p.back();
      }
      for (int k = 0; k < 3; ++k) mix += (p[k] / total) * parts[k].matrix();
      const SymmetricDensityMatrix rho(b, 0.5 * (mix + mix.adjoint()));
      const auto th = random_angles(rng);
      double rhs = 0.0;
      for (int k = 0; k < 3; ++k) rhs += (p[k] / total) * std::abs(ghz_coherence(parts[k], th));
      excess = std::max(excess, std::abs(ghz_coherence(rho, th)) - rhs);
    }
  const double dev = std::max(0.0, excess);
  return {at_most("", "max(|c(sum p rho)| - sum p |c(rho)|, 0)", dev, 1e-12, excess)};
}

inline std::vector<Measurement> physical_ceiling() {
  RandomStream rng(kDefaultSeed, 707);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int L = 2 + i % 11;
    const DickeBasis b(L);
    const auto rank = 1 + static_cast<Eigen::Index>(rng.uniform() * static_cast<double>(b.dim()));
    worst = std::max(worst, optimize_bell_symmetric(random_density(b, rng, rank)).E);
  }
  return {at_most("", "max optimized E - 1/4 over 1000 random states, L <= 12", std::max(0.0, worst - 0.25), 1e-9, worst)};
}

inline std::vector<Measurement> result_consistency() {
  RandomStream rng(kDefaultSeed, 808);
  double dev = 0.0;
  for (int L = 2; L <= 12; ++L) {
    const BellResult r = optimize_bell_symmetric(random_density(DickeBasis(L), rng, 2));
    dev = std::max(dev, std::abs(r.Q - (L + r.logE / kLn2)));
    dev = std::max(dev, std::abs(std::exp(r.logE) - r.E) / r.E);
  }
  return {at_most("", "max inconsistency among E, logE and Q", dev, 1e-10, dev)};
}

inline std::vector<Measurement> dicke_binomial_agreement() {
  double dev = 0.0;
  for (int L = 2; L <= 20; ++L) {
    const DickeBasis b(L);
    for (Eigen::Index i = 0; i < b.dim(); ++i) {
      const BellResult r = optimize_bell_symmetric(SymmetricState::dicke(b, b.m(i)));
      dev = std::max(dev, std::abs(r.Q - binomial_coherence(L, b.m(i)).Q));
    }
  }
  return {at_most("", "max |Q_opt - Q_binomial| over Dicke states, L <= 20", dev, 1e-6, dev)};
}

inline std::vector<Measurement> amplitude_normalization() {
  double dev = 0.0;
  for (int L = 1; L <= 64; ++L) {
    const DickeBasis b(L);
    double s = 0.0;
    for (Eigen::Index i = 0; i < b.dim(); ++i) s += std::sqrt(binomial_coherence(L, b.m(i)).E());
    dev = std::max(dev, std::abs(s - 1.0));
  }
  return {at_most("", "max |sum_m sqrt(E_binomial) - 1|, L <= 64", dev, 1e-12, dev)};
}

inline std::vector<Measurement> oracle_symmetry() {
  double dev = 0.0;
  for (int L = 2; L <= 64; ++L) {
    const DickeBasis b(L);
    for (Eigen::Index i = 0; i < b.dim(); ++i) {
      const double m = b.m(i);
      dev = std::max(dev, std::abs(binomial_coherence(L, m).logE - binomial_coherence(L, -m).logE));
      dev = std::max(dev, std::abs(gaussian_coherence(L, m).logE - gaussian_coherence(L, -m).logE));
    }
  }
  return {at_most("", "max |log E(m) - log E(-m)|", dev, 1e-12, dev)};
}

inline std::vector<Measurement> gaussian_convergence() {
  std::vector<double> err;
  for (int L : {8, 16, 24, 32, 40}) err.push_back(std::abs(gaussian_coherence(L, 0).E() / binomial_coherence(L, 0).E() - 1.0));
  double worst_step = -HUGE_VAL;
  for (std::size_t i = 1; i < err.size(); ++i) worst_step = std::max(worst_step, err[i] - err[i - 1]);
  Measurement trend = at_most("trend", "largest change of the relative error between successive L", worst_step, 0.0, worst_step);
  trend.strict = true;
  Measurement last = at_most("L40", "relative error at L = 40 minus 2%", err.back() - 0.02, 0.0, err.back());
  last.strict = true;
  return {trend, last};
}

inline std::vector<Measurement> thermal_zero_limit() {
  double dev = 0.0;
  for (int L : {8, 16, 40}) {
    const double h = 0.04;
    const double want = binomial_coherence(L, gamma1_ground_m(h, L)).E();
    dev = std::max(dev, std::abs(thermal_sum_oracle(L, h, 1e-4).E() / want - 1.0));
  }
  return {at_most("", "max relative |E_sum(T=1e-4) - E_binomial(m0)|", dev, 1e-4, dev)};
}

inline std::vector<Measurement> t_crit_monotone() {
  std::size_t bad = 0;
  const int n = 400;
  const double top = std::sqrt(kLn2);
  double prev = t_crit(0.0);
  for (int i = 1; i <= n; ++i) {
    const double t = t_crit(top * i / n);
    if (!(t < prev)) ++bad;
    prev = t;
  }
  return {no_violations("", "non-decreasing steps of t_crit on [0, sqrt(ln 2)]", bad)};
}

inline double sx_recursion_deviation(int L_max) {
  double dev = 0.0;
  for (int L = 2; L <= L_max; ++L)
    for (double h : {0.1, 0.5, 1.0}) {
      const RVector tri = sx_tridiagonal(L, h).eigenvalues();
      const auto dense = sorted_energies(solve_lmg({L, 0.0, h}));
      for (Eigen::Index i = 0; i < tri.size(); ++i) dev = std::max(dev, std::abs(tri(i) - dense[static_cast<std::size_t>(i)]));
    }
  return dev;
}

inline std::vector<Measurement> sx_recursion() {
  const double dev = sx_recursion_deviation(64);
  return {at_most("", "max |spec(tridiagonal) - spec(dense gamma = 0)|, L <= 64", dev, 1e-9, dev)};
}

inline std::vector<Measurement> sigma_plus_structure() {
  std::size_t bad = 0;
  for (int L = 1; L <= 6; ++L) {
    const Eigen::Index N = Eigen::Index{1} << L;
    // (sigma_+)_{x,y} = 1 iff every bit goes 0 -> 1.
    for (Eigen::Index x = 0; x < N; ++x)
      for (Eigen::Index y = 0; y < N; ++y) {
        int v = 1;
        for (int k = 0; k < L; ++k) v *= (((x >> k) & 1) == 1 && ((y >> k) & 1) == 0) ? 1 : 0;
        const int want = (x == N - 1 && y == 0) ? 1 : 0;
        if (v != want) ++bad;
      }
    // The local correlator at zero angles must read exactly that matrix element.
    CMatrix rho = CMatrix::Zero(N, N);
    rho(0, N - 1) = rho(N - 1, 0) = 0.5;
    rho(0, 0) = rho(N - 1, N - 1) = 0.5;
    if (std::abs(local_bell_correlator(rho, SiteAngles(static_cast<std::size_t>(L), {0.0, 0.0})) - 0.5) > 1e-15) ++bad;
  }
  return {no_violations("", "entries of (x)sigma_+ differing from |1..1><0..0|", bad)};
}

/// Q of every state in the (numerically) degenerate symmetric ground level.
inline std::vector<double> symmetric_ground_qs(const LmgParams& p) {
  const Spectrum s = solve_lmg(p);
  std::vector<double> qs;
  for (std::size_t v = 0; v < s.size() && s.energies[v] - s.energies[0] < s.degeneracy_threshold(); ++v)
    qs.push_back(optimize_bell_symmetric(s.states[v]).Q);
  return qs;
}

/// Lattice ground-state Q minus the closest symmetric-sector ground-level Q.
inline double engine_gap(int L, double gamma) {
  const double q_full =
      optimize_bell_local(ground_state(build_lattice_hamiltonian(power_law_params(L, gamma, 0.0))).state).Q;
  double best = HUGE_VAL;
  for (double q : symmetric_ground_qs({L, gamma, 0.0})) best = std::min(best, std::abs(q - q_full));
  return best;
}

inline std::vector<Measurement> engine_consistency() {
  double dev = 0.0;
  for (double g : {-1.0, 0.0, 1.0})
    for (int L : {4, 6, 8}) dev = std::max(dev, engine_gap(L, g));
  return {at_most("", "max |Q_lattice - Q_symmetric|, gamma in {-1,0,1}, L in {4,6,8}", dev, 1e-6, dev)};
}

inline std::vector<Measurement> disordered_hermiticity() {
  double asym = 0.0, imag = 0.0;
  for (auto kind : {DisorderKind::diagonal, DisorderKind::off_diagonal})
    for (auto dist : {NoiseDist::P1, NoiseDist::P2})
      for (std::size_t i = 0; i < 3; ++i) {
        RandomStream rng(kDefaultSeed, 900 + i);
        const DisorderSpec spec{kind, dist, 0.8, 1, kDefaultSeed};
        const RMatrix H = build_lattice_hamiltonian(apply_disorder(power_law_params(6, 0.7, 1.0), spec, rng));
        asym = std::max(asym, (H - H.transpose()).cwiseAbs().maxCoeff());
        Eigen::EigenSolver<RMatrix> es(H, false);
        imag = std::max(imag, es.eigenvalues().imag().cwiseAbs().maxCoeff());
      }
  return {at_most("hermitian", "max |H - H^T|", asym, 1e-12, asym), at_most("real", "max |Im eig(H)|", imag, 1e-10, imag)};
}

inline std::vector<Measurement> ensemble_determinism() {
  const DisorderSpec spec{DisorderKind::off_diagonal, NoiseDist::P2, 0.6, 6, 0x5EED};
  const auto clean = power_law_params(6, 1.0, 0.0);
  const auto a = disorder_ensemble(clean, spec, 1);
  const auto b = disorder_ensemble(clean, spec, 3);
  const auto c = disorder_ensemble(clean, spec, 1);
  std::size_t diff = 0;
  for (std::size_t i = 0; i < a.per_sample_Q.size(); ++i) {
    if (std::memcmp(&a.per_sample_Q[i], &b.per_sample_Q[i], sizeof(double)) != 0) ++diff;
    if (std::memcmp(&a.per_sample_Q[i], &c.per_sample_Q[i], sizeof(double)) != 0) ++diff;
  }
  return {no_violations("", "per-sample Q differing across runs or worker counts", diff)};
}

inline std::vector<Measurement> gamma0_energy() {
  double dev = 0.0;
  for (int L : {4, 6, 8})
    for (double a : {0.0, 1.0, 3.0}) {
      const auto p = power_law_params(L, 0.0, a);
      double sum = 0.0;
      for (int i = 0; i < L; ++i)
        for (int j = i + 1; j < L; ++j) sum += p.J(i, j);
      dev = std::max(dev, std::abs(ground_state(build_lattice_hamiltonian(p)).energy + sum / L));
    }
  return {at_most("", "max |E0 + (1/L) sum J_ij| at gamma = 0", dev, 1e-10, dev)};
}

/// Small configs touching every sweep command.
inline std::vector<RunConfig> sample_configs() {
  std::vector<RunConfig> v;
  RunConfig c;
  c.command = "eigenstates";
  c.L = {4, 5};
  c.gamma = {1.0, 0.0};
  c.h = {0.0, 1.0, 11};
  v.push_back(c);
  c = {};
  c.command = "thermal-map";
  c.L = {6};
  c.gamma = {1.0, 0.0};
  c.h = {0.0, 1.0, 4};
  c.T = {0.0, 0.5, 4};
  v.push_back(c);
  c = {};
  c.command = "thermal-cuts";
  c.L = {8};
  c.h = {0.0, 1.0, 5};
  c.T = {0.0, 0.6, 5};
  v.push_back(c);
  c = {};
  c.command = "alpha-sweep";
  c.L = {4};
  c.gamma = {1.0, 0.0};
  c.alpha = {0.0, 2.0, 3};
  v.push_back(c);
  c = {};
  c.command = "disorder";
  c.L = {4};
  c.gamma = {1.0};
  c.kind = {"diagonal"};
  c.dist = {"p1", "p2"};
  c.V = {0.0, 0.5};
  c.samples = 4;
  v.push_back(c);
  c = {};
  c.command = "oracle";
  c.L = {4, 5};
  v.push_back(c);
  return v;
}

inline std::string csv_text(const RunConfig& cfg) {
  std::ostringstream os;
  run_sweep(cfg).write_csv(os);
  return os.str();
}

inline std::vector<Measurement> sweep_determinism() {
  std::size_t diff = 0;
  for (RunConfig c : sample_configs()) {
    c = resolve_config(c);
    c.threads = 1;
    const std::string a = csv_text(c);
    const std::string b = csv_text(c);
    c.threads = 3;
    if (a != b || a != csv_text(c)) ++diff;
  }
  return {no_violations("", "sweeps whose CSV differs across runs or worker counts", diff)};
}

inline std::vector<Measurement> manifest_replay() {
  std::size_t diff = 0;
  for (RunConfig c : sample_configs()) {
    c = resolve_config(c);
    const auto text = make_manifest(c).dump(2);
    const RunConfig back = resolve_config(config_from_manifest(nlohmann::json::parse(text)));
    if (!(back == c) || csv_text(back) != csv_text(c)) ++diff;
  }
  return {no_violations("", "configs not reproduced bitwise from their manifest", diff)};
}

inline std::vector<Measurement> row_counts() {
  std::size_t bad = 0;
  for (RunConfig c : sample_configs()) {
    c = resolve_config(c);
    if (run_sweep(c).rows.size() != expected_rows(c)) ++bad;
  }
  return {no_violations("", "sweeps whose row count differs from the grid product", bad)};
}

inline std::vector<Measurement> float_roundtrip() {
  RandomStream rng(kDefaultSeed, 1001);
  std::mt19937_64 bits(42);
  std::size_t bad = 0;
  for (int i = 0; i < 20000; ++i) {
    double x;
    if (i % 2 == 0) {
      const std::uint64_t u = bits();
      std::memcpy(&x, &u, sizeof x);
      if (!std::isfinite(x)) continue;
    } else {
      x = rng.uniform(-1.0, 1.0) * std::pow(10.0, rng.uniform(-300.0, 300.0));
    }
    const double y = parse_double(format_double(x));
    if (std::memcmp(&x, &y, sizeof x) != 0) ++bad;
  }
  if (format_double(q_from_logE(kNegInf, 4)) != "-inf") ++bad;
  return {no_violations("", "doubles not reproduced bitwise by format/parse", bad)};
}

}  // namespace props

inline std::vector<Check> property_checks() {
  using namespace props;
  return {
      {"dicke.commutator", "dicke_core", "[Sx,Sy] = i Sz", commutator},
      {"dicke.casimir", "dicke_core", "Casimir S^2 = S(S+1)", casimir},
      {"dicke.ladder_power", "dicke_core", "S+^L = L! |S,S><S,-S|", ladder_power},
      {"dicke.rotation_composition", "dicke_core", "R(theta) R(-theta) = 1", rotation_composition},
      {"dicke.wigner", "dicke_core", "Wigner d(pi/2) vs matrix exponential", wigner_vs_exponential},
      {"lmg.gamma1_spectrum", "lmg_models", "gamma = 1 spectrum is the parabola", gamma1_spectrum},
      {"lmg.gamma1_doublets", "lmg_models", "gamma = 1, h = 0 excited levels doubly degenerate", gamma1_h0_doublets},
      {"lmg.gibbs_weights", "lmg_models", "Gibbs weights monotone, log Z finite", gibbs_weights},
      {"lmg.h_reflection", "lmg_models", "gamma = 1 spectrum invariant under h -> -h", h_reflection},
      {"lmg.residuals", "lmg_models", "eigenpair residuals and ordering", spectrum_residuals},
      {"lmg.gibbs_commutes", "lmg_models", "Gibbs state commutes with H, unit trace", gibbs_commutes},
      {"bell.trace_corner", "bell_core", "trace form equals rotated corner element", trace_corner_identity},
      {"bell.phase_redundancy", "bell_core", "objective independent of the leading z angle", phase_redundancy},
      {"bell.lower_bound", "bell_core", "optimizer never below its deterministic starts", optimizer_lower_bound},
      {"bell.convexity", "bell_core", "coherence modulus is subadditive over mixtures", convexity_bound},
      {"bell.ceiling", "bell_core", "optimized E <= 1/4", physical_ceiling},
      {"bell.consistency", "bell_core", "stored E, logE, Q agree", result_consistency},
      {"bell.binomial", "bell_core", "Dicke states match the binomial closed form", dicke_binomial_agreement},
      {"oracles.normalization", "analytic_oracles", "binomial amplitudes sum to one", amplitude_normalization},
      {"oracles.symmetry", "analytic_oracles", "binomial and Gaussian symmetric in m", oracle_symmetry},
      {"oracles.gaussian_convergence", "analytic_oracles", "Gaussian approaches binomial with L", gaussian_convergence},
      {"oracles.thermal_zero_limit", "analytic_oracles", "thermal sum tends to the ground Dicke value", thermal_zero_limit},
      {"oracles.t_crit_monotone", "analytic_oracles", "t_crit strictly decreasing in h", t_crit_monotone},
      {"oracles.sx_recursion", "analytic_oracles", "Sx-basis tridiagonal spectrum", sx_recursion},
      {"lattice.sigma_plus", "lattice_engine", "product of raising operators is |1..1><0..0|", sigma_plus_structure},
      {"lattice.engine_consistency", "lattice_engine", "full space and symmetric sector agree", engine_consistency},
      {"lattice.hermiticity", "lattice_engine", "disordered Hamiltonians Hermitian with real spectrum", disordered_hermiticity},
      {"lattice.determinism", "lattice_engine", "ensembles bitwise reproducible", ensemble_determinism},
      {"lattice.gamma0_energy", "lattice_engine", "gamma = 0 ground energy", gamma0_energy},
      {"sweep.determinism", "sweep_cli", "CSV identical across runs and worker counts", sweep_determinism},
      {"sweep.manifest_replay", "sweep_cli", "manifest reproduces the CSV", manifest_replay},
      {"sweep.row_counts", "sweep_cli", "row count is the grid product", row_counts},
      {"sweep.float_roundtrip", "sweep_cli", "shortest round-trip float output", float_roundtrip},
  };
}

}  // namespace spinbell
