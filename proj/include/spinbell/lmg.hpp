#pragma once

// Lipkin-Meshkov-Glick Hamiltonians in the symmetric sector, their spectra and
// Gibbs states.
//
//   H = -(2/L) (Sx^2 + gamma Sy^2) - 2 h Sz + gamma (2/L) S(S+1)
//
// The last term is the L-dependent additive constant: with it the gamma = 1
// levels are exactly (2/L) m^2 - 2 h m, and gamma = 0 carries no constant.
// Gibbs weights are built from E_v - E_min, so constants never reach the
// density matrix.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dicke.hpp"

namespace spinbell {

struct LmgParams {
  int L = 4;
  double gamma = 1.0;
  double h = 0.0;

  void validate() const {
    if (L < 2) throw std::invalid_argument("LmgParams: L must be >= 2");
    if (!std::isfinite(gamma) || !std::isfinite(h)) throw std::invalid_argument("LmgParams: gamma and h must be finite");
  }
};

inline CollectiveOperator build_lmg_hamiltonian(const LmgParams& p) {
  p.validate();
  const DickeBasis basis(p.L);
  const auto ops = build_collective_ops(basis);
  const CMatrix& sx = ops.Sx.matrix();
  const CMatrix& sy = ops.Sy.matrix();
  const double casimir = basis.spin() * (basis.spin() + 1.0);
  CMatrix H = -(2.0 / p.L) * (sx * sx + p.gamma * (sy * sy)) - 2.0 * p.h * ops.Sz.matrix();
  H.diagonal().array() += p.gamma * (2.0 / p.L) * casimir;
  // Products of Hermitian matrices are Hermitian only up to rounding.
  H = 0.5 * (H + H.adjoint()).eval();
  return CollectiveOperator(basis, std::move(H), true);
}

/// Relative (to the spectral range) gap below which two levels count as degenerate.
inline constexpr double kDegeneracyTol = 1e-10;

struct Spectrum {
  DickeBasis basis{2};
  std::optional<LmgParams> params;
  CMatrix hamiltonian;
  std::vector<double> energies;         ///< ascending up to the degeneracy tolerance
  std::vector<SymmetricState> states;
  std::vector<double> magnetization;    ///< <Sz> per state
  std::vector<int> parity;              ///< +1 / -1 for (-1)^(S-m) symmetric blocks, 0 if H mixes them

  std::size_t size() const { return energies.size(); }
  double spectral_range() const { return energies.empty() ? 0.0 : energies.back() - energies.front(); }
  double degeneracy_threshold() const {
    const double range = spectral_range();
    return kDegeneracyTol * (range > 0.0 ? range : 1.0);
  }
};

namespace detail {

struct EigenPiece {
  double energy;
  CVector vec;
  double mz;
  int parity;
};

inline void fix_phase(CVector& v) {
  const double scale = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-10 * scale) {
      v *= std::conj(v(i)) / std::abs(v(i));
      v(i) = std::abs(v(i));
      return;
    }
  }
}

}  // namespace detail

/// Full eigendecomposition with deterministic ordering: ascending energy,
/// degenerate levels ordered by ascending <Sz> and then by parity, each vector
/// rephased so its first significant amplitude is real positive.
///
/// When H conserves the parity (-1)^(S-m) (every LMG Hamiltonian does), the
/// two parity blocks are diagonalized separately so eigenvectors carry exact
/// parity even inside near-degenerate doublets.
inline Spectrum diagonalize(const CollectiveOperator& H) {
  const CMatrix& h = H.matrix();
  const DickeBasis basis = H.basis();
  const auto n = basis.dim();
  const double scale = std::max(1.0, max_abs(h));
  if (hermitian_deviation(h) > kHermitianTol * scale) throw std::invalid_argument("diagonalize: Hamiltonian is not Hermitian");

  bool parity_conserving = true;
  for (Eigen::Index i = 0; i < n && parity_conserving; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if ((i - j) % 2 != 0 && std::abs(h(i, j)) > 1e-15 * scale) {
        parity_conserving = false;
        break;
      }

  std::vector<std::vector<Eigen::Index>> blocks;
  std::vector<int> block_parity;
  if (parity_conserving) {
    for (int p = 0; p < 2; ++p) {
      std::vector<Eigen::Index> idx;
      // index i has S - m = L - i, so parity (-1)^(L-i)
      for (Eigen::Index i = 0; i < n; ++i)
        if ((basis.particles() - i) % 2 == p) idx.push_back(i);
      if (!idx.empty()) {
        blocks.push_back(std::move(idx));
        block_parity.push_back(p == 0 ? 1 : -1);
      }
    }
  } else {
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    blocks.push_back(std::move(idx));
    block_parity.push_back(0);
  }

  // Degeneracy threshold needs the full spectral range first.
  std::vector<Eigen::SelfAdjointEigenSolver<CMatrix>> solvers;
  double lo = HUGE_VAL, hi = -HUGE_VAL;
  for (const auto& idx : blocks) {
    const auto k = static_cast<Eigen::Index>(idx.size());
    CMatrix sub(k, k);
    for (Eigen::Index a = 0; a < k; ++a)
      for (Eigen::Index b = 0; b < k; ++b) sub(a, b) = h(idx[a], idx[b]);
    solvers.emplace_back(sub);
    lo = std::min(lo, solvers.back().eigenvalues().minCoeff());
    hi = std::max(hi, solvers.back().eigenvalues().maxCoeff());
  }
  const double tol = kDegeneracyTol * (hi > lo ? hi - lo : 1.0);

  std::vector<detail::EigenPiece> pieces;
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const auto& idx = blocks[bi];
    const auto k = static_cast<Eigen::Index>(idx.size());
    const RVector& evals = solvers[bi].eigenvalues();
    CMatrix evecs = solvers[bi].eigenvectors();
    RVector mz_block(k);
    for (Eigen::Index a = 0; a < k; ++a) mz_block(a) = basis.m(idx[a]);

    // Within each degenerate cluster rotate onto Sz eigenvectors.
    for (Eigen::Index start = 0; start < k;) {
      Eigen::Index stop = start + 1;
      while (stop < k && evals(stop) - evals(stop - 1) < tol) ++stop;
      if (stop - start > 1) {
        const CMatrix V = evecs.middleCols(start, stop - start);
        const CMatrix proj = V.adjoint() * mz_block.cast<cplx>().asDiagonal() * V;
        Eigen::SelfAdjointEigenSolver<CMatrix> szs(0.5 * (proj + proj.adjoint()));
        evecs.middleCols(start, stop - start) = V * szs.eigenvectors();
      }
      start = stop;
    }

    for (Eigen::Index a = 0; a < k; ++a) {
      CVector full = CVector::Zero(n);
      for (Eigen::Index b = 0; b < k; ++b) full(idx[b]) = evecs(b, a);
      full.normalize();
      detail::fix_phase(full);
      const double e = (full.adjoint() * h * full)(0).real();
      double mz = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) mz += std::norm(full(i)) * basis.m(i);
      pieces.push_back({e, std::move(full), mz, block_parity[bi]});
    }
  }

  std::stable_sort(pieces.begin(), pieces.end(), [](const auto& a, const auto& b) { return a.energy < b.energy; });
  // Reorder inside clusters: ascending <Sz>, then even parity first.
  for (std::size_t start = 0; start < pieces.size();) {
    std::size_t stop = start + 1;
    while (stop < pieces.size() && pieces[stop].energy - pieces[stop - 1].energy < tol) ++stop;
    std::stable_sort(pieces.begin() + static_cast<std::ptrdiff_t>(start), pieces.begin() + static_cast<std::ptrdiff_t>(stop),
                     [](const auto& a, const auto& b) {
                       if (std::abs(a.mz - b.mz) > 1e-9) return a.mz < b.mz;
                       return a.parity > b.parity;
                     });
    start = stop;
  }

  Spectrum spec;
  spec.basis = basis;
  spec.hamiltonian = h;
  for (auto& p : pieces) {
    spec.energies.push_back(p.energy);
    spec.magnetization.push_back(p.mz);
    spec.parity.push_back(p.parity);
    spec.states.emplace_back(basis, std::move(p.vec));
  }
  return spec;
}

inline Spectrum solve_lmg(const LmgParams& p) {
  Spectrum s = diagonalize(build_lmg_hamiltonian(p));
  s.params = p;
  return s;
}

/// Closed-form gamma = 1 level E_m = (2/L) m^2 - 2 h m.
inline double gamma1_energy(double m, double h, int L) {
  if (L < 2) throw std::invalid_argument("gamma1_energy: L must be >= 2");
  (void)DickeBasis(L).index_of(m);
  return (2.0 / L) * m * m - 2.0 * h * m;
}

/// Ground-state magnetization of the gamma = 1 model: the admissible label
/// closest to hL/2, clamped to [-S, S]. Exact half-way ties go to the smaller |m|.
inline double gamma1_ground_m(double h, int L) {
  if (L < 2) throw std::invalid_argument("gamma1_ground_m: L must be >= 2");
  if (!std::isfinite(h)) throw std::invalid_argument("gamma1_ground_m: h must be finite");
  const double S = 0.5 * L;
  const double target = h * L / 2.0 + S;  // in index units, admissible values are integers
  if (target <= 0.0) return -S;
  if (target >= L) return S;
  const double lower = std::floor(target);
  const double frac = target - lower;
  double idx;
  if (std::abs(frac - 0.5) < 1e-12) {
    idx = std::abs(lower - S) <= std::abs(lower + 1.0 - S) ? lower : lower + 1.0;
  } else {
    idx = frac < 0.5 ? lower : lower + 1.0;
  }
  return idx - S;
}

struct GibbsState {
  const Spectrum* spectrum = nullptr;  ///< non-owning; must outlive the state
  double T = 0.0;
  SymmetricDensityMatrix rho;
  std::vector<double> weights;
  double e_min = 0.0;
  /// log of sum_v exp(-(E_v - E_min)/T); the full log Z is this minus E_min/T.
  double log_z_shifted = 0.0;
};

inline GibbsState gibbs_state(const Spectrum& spec, double T) {
  if (!(T >= 0.0)) throw std::invalid_argument("gibbs_state: temperature must be >= 0");
  const std::size_t n = spec.size();
  const double e_min = *std::min_element(spec.energies.begin(), spec.energies.end());
  std::vector<double> w(n, 0.0);
  double log_z = 0.0;
  if (T == 0.0) {
    const double thr = spec.degeneracy_threshold();
    std::size_t g = 0;
    for (std::size_t v = 0; v < n; ++v)
      if (spec.energies[v] - e_min < thr) ++g;
    for (std::size_t v = 0; v < n; ++v)
      if (spec.energies[v] - e_min < thr) w[v] = 1.0 / static_cast<double>(g);
    log_z = std::log(static_cast<double>(g));
  } else {
    std::vector<double> logs(n);
    for (std::size_t v = 0; v < n; ++v) logs[v] = -(spec.energies[v] - e_min) / T;
    log_z = log_sum_exp(logs);
    for (std::size_t v = 0; v < n; ++v) w[v] = std::exp(logs[v] - log_z);
  }
  CMatrix rho = CMatrix::Zero(spec.basis.dim(), spec.basis.dim());
  for (std::size_t v = 0; v < n; ++v)
    if (w[v] > 0.0) rho += w[v] * spec.states[v].amplitudes() * spec.states[v].amplitudes().adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  return GibbsState{&spec, T, SymmetricDensityMatrix(spec.basis, std::move(rho)), std::move(w), e_min, log_z};
}

}  // namespace spinbell
