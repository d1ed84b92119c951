#pragma once

// Full 2^L Hilbert-space engine for spin chains without permutation symmetry:
// power-law couplings, site disorder, and the per-spin Bell correlator.
//
// Basis states are bitstrings, bit k = spin k, 0 = down and 1 = up along z.
// Index 0 is all-down and index 2^L - 1 all-up, matching the symmetric-sector
// convention where |S,-S> comes first.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bell.hpp"
#include "dicke.hpp"
#include "nelder_mead.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace spinbell {

inline constexpr int kMaxDenseSpins = 14;

struct LatticeParams {
  int L = 8;
  double gamma = 1.0;
  double alpha = 0.0;
  RMatrix J;        ///< symmetric, zero diagonal
  RVector h_field;  ///< per-site fields, entering as + sum_i h_i sigma_z^(i)

  void validate() const {
    if (L < 2 || L > kMaxDenseSpins)
      throw std::invalid_argument("LatticeParams: L must lie in [2, " + std::to_string(kMaxDenseSpins) + "]");
    if (J.rows() != L || J.cols() != L || h_field.size() != L)
      throw std::invalid_argument("LatticeParams: coupling/field dimensions do not match L");
    if (!J.allFinite() || !h_field.allFinite() || !std::isfinite(gamma))
      throw std::invalid_argument("LatticeParams: non-finite entries");
    for (int i = 0; i < L; ++i) {
      if (J(i, i) != 0.0) throw std::invalid_argument("LatticeParams: J must have zero diagonal");
      for (int j = 0; j < i; ++j)
        if (J(i, j) != J(j, i)) throw std::invalid_argument("LatticeParams: J must be symmetric");
    }
  }
};

/// J_ij = |i - j|^-alpha, J_ii = 0 (open chain).
inline RMatrix power_law_couplings(int L, double alpha) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("power_law_couplings: alpha must be >= 0");
  RMatrix J = RMatrix::Zero(L, L);
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j)
      if (i != j) J(i, j) = std::pow(static_cast<double>(std::abs(i - j)), -alpha);
  return J;
}

inline LatticeParams power_law_params(int L, double gamma, double alpha, double h_uniform = 0.0) {
  LatticeParams p{L, gamma, alpha, power_law_couplings(L, alpha), RVector::Constant(L, h_uniform)};
  p.validate();
  return p;
}

/// H = -(1/L) sum_{i<j} J_ij (sx_i sx_j + gamma sy_i sy_j) + sum_i h_i sz_i.
/// Every term is real in the z basis, so the matrix is real symmetric.
inline RMatrix build_lattice_hamiltonian(const LatticeParams& p) {
  p.validate();
  const int L = p.L;
  const std::size_t N = std::size_t{1} << L;
  RMatrix H = RMatrix::Zero(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
  for (std::size_t x = 0; x < N; ++x) {
    double diag = 0.0;
    for (int i = 0; i < L; ++i) diag += ((x >> i) & 1U) ? p.h_field(i) : -p.h_field(i);
    H(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) = diag;
    for (int i = 0; i < L; ++i) {
      for (int j = i + 1; j < L; ++j) {
        if (p.J(i, j) == 0.0) continue;
        const bool same = ((x >> i) & 1U) == ((x >> j) & 1U);
        // sy sy flips both bits with sign -1 for equal bits and +1 otherwise.
        const double amp = -p.J(i, j) / L * (1.0 + p.gamma * (same ? -1.0 : 1.0));
        const std::size_t y = x ^ ((std::size_t{1} << i) | (std::size_t{1} << j));
        H(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) += amp;
      }
    }
  }
  return H;
}

struct FullState {
  int L = 0;
  CVector amplitudes;
};

struct GroundState {
  FullState state;
  double energy = 0.0;
  double gap = 0.0;
  bool degenerate = false;
};

/// Lowest eigenpair. Every lattice Hamiltonian conserves the spin-flip parity
/// (-1)^popcount, so the two parity blocks are diagonalized separately and the
/// returned state has exact parity. On a degenerate crossing between blocks the
/// even block wins; the largest-magnitude amplitude is made positive.
inline GroundState ground_state(const RMatrix& H) {
  const auto N = H.rows();
  if (N < 2 || H.cols() != N || (N & (N - 1)) != 0) throw std::invalid_argument("ground_state: expected a 2^L square matrix");

  struct Block {
    std::vector<Eigen::Index> idx;
    RVector evals;
    RVector ground;
  };
  std::array<Block, 2> blocks;
  for (Eigen::Index x = 0; x < N; ++x) blocks[std::popcount(static_cast<std::uint64_t>(x)) % 2].idx.push_back(x);
  double lo = HUGE_VAL, hi = -HUGE_VAL;
  for (auto& b : blocks) {
    const auto k = static_cast<Eigen::Index>(b.idx.size());
    RMatrix sub(k, k);
    for (Eigen::Index a = 0; a < k; ++a)
      for (Eigen::Index c = 0; c < k; ++c) sub(a, c) = H(b.idx[static_cast<std::size_t>(a)], b.idx[static_cast<std::size_t>(c)]);
    Eigen::SelfAdjointEigenSolver<RMatrix> es(sub);
    b.evals = es.eigenvalues();
    b.ground = es.eigenvectors().col(0);
    lo = std::min(lo, b.evals(0));
    hi = std::max(hi, b.evals(k - 1));
  }
  const double tol = kDegeneracyTol * (hi > lo ? hi - lo : 1.0);

  std::vector<double> all;
  for (const auto& b : blocks) all.insert(all.end(), b.evals.begin(), b.evals.end());
  std::sort(all.begin(), all.end());

  const int pick = blocks[1].evals(0) < blocks[0].evals(0) - tol ? 1 : 0;
  GroundState g;
  g.energy = blocks[static_cast<std::size_t>(pick)].evals(0);
  g.gap = all[1] - all[0];
  g.degenerate = g.gap < tol;
  RVector v = RVector::Zero(N);
  const auto& b = blocks[static_cast<std::size_t>(pick)];
  for (std::size_t a = 0; a < b.idx.size(); ++a) v(b.idx[a]) = b.ground(static_cast<Eigen::Index>(a));
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  if (v(k) < 0.0) v = -v;
  g.state = {std::countr_zero(static_cast<std::uint64_t>(N)), v.cast<cplx>()};
  return g;
}

/// Dicke state |S,m> embedded into the 2^L space.
inline FullState embed_symmetric(const SymmetricState& s) {
  const int L = s.basis().particles();
  const std::size_t N = std::size_t{1} << L;
  CVector out = CVector::Zero(static_cast<Eigen::Index>(N));
  for (std::size_t x = 0; x < N; ++x) {
    const int k = std::popcount(x);
    out(static_cast<Eigen::Index>(x)) = s.amplitudes()(k) * std::exp(-0.5 * log_binomial(L, k));
  }
  return {L, out};
}

struct SymmetricProjection {
  double weight = 0.0;  ///< squared norm of the projection onto the symmetric sector
  CVector amplitudes;   ///< unnormalized Dicke amplitudes
};

inline SymmetricProjection project_symmetric(const FullState& s) {
  const int L = s.L;
  CVector amp = CVector::Zero(L + 1);
  for (Eigen::Index x = 0; x < s.amplitudes.size(); ++x) {
    const int k = std::popcount(static_cast<std::uint64_t>(x));
    amp(k) += s.amplitudes(x) * std::exp(-0.5 * log_binomial(L, k));
  }
  return {amp.squaredNorm(), amp};
}

/// Single-spin P = Ry(beta) Rz(psi) in the (down, up) basis; identical to the
/// symmetric-sector rotation for L = 1.
inline Eigen::Matrix2cd spin_half_rotation(double beta, double psi) {
  const double c = std::cos(0.5 * beta), s = std::sin(0.5 * beta);
  const cplx down = std::polar(1.0, 0.5 * psi), up = std::polar(1.0, -0.5 * psi);
  Eigen::Matrix2cd R;
  R << c * down, s * up, -s * down, c * up;
  return R;
}

using SiteAngles = std::vector<std::array<double, 2>>;

namespace detail {

/// sum_x psi_x prod_k rows[k][x_k], folding one bit at a time from the top.
inline cplx product_overlap(const CVector& psi, int L, const std::vector<Eigen::Vector2cd>& rows) {
  CVector v = psi;
  for (int k = L - 1; k >= 0; --k) {
    const Eigen::Index half = Eigen::Index{1} << k;
    const auto& r = rows[static_cast<std::size_t>(k)];
    v.head(half) = r(0) * v.head(half) + r(1) * v.segment(half, half);
  }
  return v(0);
}

/// Same contraction with site `skip` left open: returns the 2-vector over its bit.
inline Eigen::Vector2cd open_overlap(const CVector& psi, int L, const std::vector<Eigen::Vector2cd>& rows, int skip) {
  CVector v = psi;
  for (int k = L - 1; k > skip; --k) {
    const Eigen::Index half = Eigen::Index{1} << k;
    const auto& r = rows[static_cast<std::size_t>(k)];
    v.head(half) = r(0) * v.head(half) + r(1) * v.segment(half, half);
  }
  // Remaining bits 0..skip; fold the low ones, which are interleaved.
  Eigen::Index size = Eigen::Index{1} << (skip + 1);
  for (int k = 0; k < skip; ++k) {
    const auto& r = rows[static_cast<std::size_t>(k)];
    size /= 2;
    for (Eigen::Index y = 0; y < size; ++y) v(y) = r(0) * v(2 * y) + r(1) * v(2 * y + 1);
  }
  return {v(0), v(1)};
}

inline void site_rows(const SiteAngles& angles, std::vector<Eigen::Vector2cd>& low, std::vector<Eigen::Vector2cd>& high) {
  low.resize(angles.size());
  high.resize(angles.size());
  for (std::size_t k = 0; k < angles.size(); ++k) {
    const Eigen::Matrix2cd R = spin_half_rotation(angles[k][0], angles[k][1]);
    low[k] = R.row(0).transpose();
    high[k] = R.row(1).transpose();
  }
}

inline Eigen::VectorXcd kron_rows(const std::vector<Eigen::Vector2cd>& rows) {
  const int L = static_cast<int>(rows.size());
  Eigen::VectorXcd out(Eigen::Index{1} << L);
  for (Eigen::Index x = 0; x < out.size(); ++x) {
    cplx p = 1.0;
    for (int k = 0; k < L; ++k) p *= rows[static_cast<std::size_t>(k)]((x >> k) & 1);
    out(x) = p;
  }
  return out;
}

}  // namespace detail

/// <0...0| R psi><psi| R^dag |1...1> with R the product of per-spin rotations.
inline cplx local_bell_correlator(const FullState& s, const SiteAngles& angles) {
  if (static_cast<int>(angles.size()) != s.L || s.amplitudes.size() != (Eigen::Index{1} << s.L))
    throw std::invalid_argument("local_bell_correlator: dimension mismatch");
  std::vector<Eigen::Vector2cd> low, high;
  detail::site_rows(angles, low, high);
  return detail::product_overlap(s.amplitudes, s.L, low) * std::conj(detail::product_overlap(s.amplitudes, s.L, high));
}

/// Density-matrix form <0...0| R rho R^dag |1...1>.
inline cplx local_bell_correlator(const CMatrix& rho, const SiteAngles& angles) {
  const int L = static_cast<int>(angles.size());
  if (rho.rows() != (Eigen::Index{1} << L) || rho.cols() != rho.rows())
    throw std::invalid_argument("local_bell_correlator: dimension mismatch");
  std::vector<Eigen::Vector2cd> low, high;
  detail::site_rows(angles, low, high);
  return (detail::kron_rows(low).transpose() * rho * detail::kron_rows(high).conjugate())(0);
}

struct LocalOptimizerOptions {
  std::uint64_t seed = kDefaultSeed;
  int symmetric_random_starts = 20;
  int random_restarts = 10;
  double sweep_tol = 1e-12;
  int max_sweeps = 200;
  SimplexOptions simplex{};
};

/// Maximizes |local_bell_correlator|^2 over all 2L per-spin angles: shared-angle
/// pre-optimization, coordinate-wise per-spin sweeps, then random restarts.
inline BellResult optimize_bell_local(const FullState& s, const LocalOptimizerOptions& opt = {}) {
  const int L = s.L;
  if (L < 1 || L > kMaxDenseSpins || s.amplitudes.size() != (Eigen::Index{1} << L))
    throw std::invalid_argument("optimize_bell_local: invalid state");
  const CVector& psi = s.amplitudes;
  std::size_t evals = 0;

  auto log_objective = [&](const SiteAngles& ang) {
    ++evals;
    const double a = std::abs(local_bell_correlator(s, ang));
    return a > 0.0 ? -2.0 * std::log(a) : 1e300;
  };

  // Stage 1: all spins share (beta, psi).
  auto shared = [&](const Eigen::VectorXd& x) { return log_objective(SiteAngles(static_cast<std::size_t>(L), {x(0), x(1)})); };
  RandomStream rng(opt.seed, hash_bytes(std::span<const cplx>(psi.data(), static_cast<std::size_t>(psi.size()))));
  std::vector<Eigen::VectorXd> starts;
  for (const auto& a : axis_alignments()) starts.push_back(Eigen::Vector2d(a.beta, a.psi));
  for (int i = 0; i < opt.symmetric_random_starts; ++i)
    starts.push_back(Eigen::Vector2d(rng.uniform(0.0, kPi), rng.uniform(-kPi, kPi)));
  Eigen::VectorXd shared_best = starts.front();
  double shared_val = shared(shared_best);
  for (const auto& st : starts) {
    const SimplexResult r = nelder_mead(shared, st, opt.simplex);
    evals += r.evaluations;
    if (r.value < shared_val) {
      shared_val = r.value;
      shared_best = r.x;
    }
  }

  // Stage 2: coordinate sweeps, one spin at a time against the contracted rest.
  auto refine = [&](SiteAngles ang, bool& converged) {
    std::vector<Eigen::Vector2cd> low, high;
    double current = log_objective(ang);
    converged = false;
    for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
      const double before = current;
      for (int k = 0; k < L; ++k) {
        detail::site_rows(ang, low, high);
        const Eigen::Vector2cd A = detail::open_overlap(psi, L, low, k);
        const Eigen::Vector2cd B = detail::open_overlap(psi, L, high, k);
        // |row0 . A|^2 and |row1 . B|^2 expanded in cos(beta), sin(beta), exp(-i psi).
        const double a0 = std::norm(A(0)), a1 = std::norm(A(1)), b0 = std::norm(B(0)), b1 = std::norm(B(1));
        const cplx ax = std::conj(A(0)) * A(1), bx = std::conj(B(0)) * B(1);
        auto site_obj = [&](const Eigen::VectorXd& x) {
          const double cb = std::cos(x(0)), sb = std::sin(x(0));
          const cplx ph = std::polar(1.0, -x(1));
          const double lo = 0.5 * (1.0 + cb) * a0 + 0.5 * (1.0 - cb) * a1 + sb * (ax * ph).real();
          const double hi = 0.5 * (1.0 - cb) * b0 + 0.5 * (1.0 + cb) * b1 - sb * (bx * ph).real();
          const double prod = lo * hi;
          return prod > 0.0 ? -std::log(prod) : 1e300;
        };
        const auto& cur = ang[static_cast<std::size_t>(k)];
        SimplexOptions so = opt.simplex;
        so.initial_step = 0.1;
        const SimplexResult r = nelder_mead(site_obj, Eigen::Vector2d(cur[0], cur[1]), so);
        evals += r.evaluations;
        if (r.value < site_obj(Eigen::Vector2d(cur[0], cur[1]))) ang[static_cast<std::size_t>(k)] = {r.x(0), r.x(1)};
      }
      current = log_objective(ang);
      if (before - current < opt.sweep_tol) {
        converged = true;
        break;
      }
    }
    return std::make_pair(current, ang);
  };

  bool conv = false;
  auto [best_val, best_ang] = refine(SiteAngles(static_cast<std::size_t>(L), {shared_best(0), shared_best(1)}), conv);
  bool best_conv = conv;

  // Stage 3: random restarts over all angles.
  for (int r = 0; r < opt.random_restarts; ++r) {
    SiteAngles ang(static_cast<std::size_t>(L));
    for (auto& a : ang) a = {rng.uniform(0.0, kPi), rng.uniform(-kPi, kPi)};
    auto [val, out] = refine(std::move(ang), conv);
    if (val < best_val) {
      best_val = val;
      best_ang = std::move(out);
      best_conv = conv;
    }
  }

  BellResult res;
  res.seed = opt.seed;
  res.site_angles = best_ang;
  res.theta_opt = {0.0, best_ang.front()[0], best_ang.front()[1]};
  res.n_starts = static_cast<int>(starts.size()) + 1 + opt.random_restarts;
  res.converged = best_conv;
  res.evaluations = evals;
  set_from_coherence(res, local_bell_correlator(s, best_ang), L);
  return res;
}

enum class DisorderKind { diagonal, off_diagonal };
enum class NoiseDist { P1, P2 };

inline std::string to_string(DisorderKind k) { return k == DisorderKind::diagonal ? "diagonal" : "offdiagonal"; }
inline std::string to_string(NoiseDist d) { return d == NoiseDist::P1 ? "p1" : "p2"; }

inline DisorderKind parse_disorder_kind(const std::string& s) {
  if (s == "diagonal") return DisorderKind::diagonal;
  if (s == "offdiagonal" || s == "off-diagonal") return DisorderKind::off_diagonal;
  throw std::invalid_argument("unknown disorder kind '" + s + "' (expected diagonal|offdiagonal)");
}

inline NoiseDist parse_noise_dist(const std::string& s) {
  if (s == "p1" || s == "P1") return NoiseDist::P1;
  if (s == "p2" || s == "P2") return NoiseDist::P2;
  throw std::invalid_argument("unknown noise distribution '" + s + "' (expected p1|p2)");
}

struct DisorderSpec {
  DisorderKind kind = DisorderKind::diagonal;
  NoiseDist dist = NoiseDist::P1;
  double V = 0.0;
  int n_samples = 100;
  std::uint64_t master_seed = kDefaultSeed;
};

/// P1: uniform on [-V/2, V/2]. P2: arcsine law on (0, V), eps = V sin^2(pi u / 2).
inline double sample_noise(NoiseDist dist, double V, RandomStream& stream) {
  if (!(V >= 0.0)) throw std::invalid_argument("sample_noise: V must be >= 0");
  const double u = stream.uniform();
  switch (dist) {
    case NoiseDist::P1:
      return V * (u - 0.5);
    case NoiseDist::P2: {
      const double s = std::sin(0.5 * kPi * u);
      return V * s * s;
    }
  }
  throw std::invalid_argument("sample_noise: unknown distribution");
}

/// Disordered copy of `clean`: eps added to each h_i (diagonal) or to each
/// J_ij = J_ji, i < j (off-diagonal).
inline LatticeParams apply_disorder(const LatticeParams& clean, const DisorderSpec& spec, RandomStream& stream) {
  LatticeParams p = clean;
  if (spec.kind == DisorderKind::diagonal) {
    for (int i = 0; i < p.L; ++i) p.h_field(i) += sample_noise(spec.dist, spec.V, stream);
  } else {
    for (int i = 0; i < p.L; ++i)
      for (int j = i + 1; j < p.L; ++j) {
        const double e = sample_noise(spec.dist, spec.V, stream);
        p.J(i, j) += e;
        p.J(j, i) = p.J(i, j);
      }
  }
  return p;
}

struct DisorderResult {
  double Q_clean = 0.0;
  double mean_rel = 1.0;
  double std_rel = 0.0;
  std::vector<double> per_sample_Q;
};

inline double ground_bell_q(const LatticeParams& p, const LocalOptimizerOptions& opt = {}) {
  return optimize_bell_local(ground_state(build_lattice_hamiltonian(p)).state, opt).Q;
}

/// Ensemble of disordered ground states, reported relative to the clean Q.
/// Sample i draws from stream (master_seed, i), so results are independent of
/// the worker count. `q_clean` may be supplied to skip recomputing the reference.
inline DisorderResult disorder_ensemble(const LatticeParams& clean, const DisorderSpec& spec, unsigned threads = 1,
                                        std::optional<double> q_clean = std::nullopt, const LocalOptimizerOptions& opt = {}) {
  if (spec.n_samples < 1) throw std::invalid_argument("disorder_ensemble: n_samples must be >= 1");
  DisorderResult out;
  out.Q_clean = q_clean ? *q_clean : ground_bell_q(clean, opt);
  if (!(out.Q_clean > 0.0))
    throw std::domain_error("disorder_ensemble: clean Q = " + std::to_string(out.Q_clean) +
                            " <= 0 makes the relative change ill-defined; report the absolute change in Q instead");
  out.per_sample_Q.assign(static_cast<std::size_t>(spec.n_samples), 0.0);
  parallel_for(static_cast<std::size_t>(spec.n_samples), threads, [&](std::size_t i) {
    RandomStream stream(spec.master_seed, i);
    out.per_sample_Q[i] = ground_bell_q(apply_disorder(clean, spec, stream), opt);
  });
  double sum = 0.0;
  for (double q : out.per_sample_Q) sum += q / out.Q_clean;
  out.mean_rel = sum / spec.n_samples;
  double var = 0.0;
  for (double q : out.per_sample_Q) var += (q / out.Q_clean - out.mean_rel) * (q / out.Q_clean - out.mean_rel);
  out.std_rel = std::sqrt(var / spec.n_samples);
  return out;
}

}  // namespace spinbell
