#pragma once

// Symmetrized many-body Bell correlator on the symmetric sector.
//
// The correlator of a state rho at rotation P is
//     c(P) = (1/L!) Tr(rho P^dag S+^L P) = <S,-S| P rho P^dag |S,S>,
// i.e. the GHZ coherence of the rotated state, and E = |c|^2. Because
// S+^L = L! |S,S><S,-S|, the two forms agree identically; both are
// implemented so they can be checked against each other.
//
// Rotations are parametrized as P = Rz(phi) Ry(beta) Rz(psi). The leftmost
// angle phi only multiplies c by exp(i L phi), so optimization runs over
// (beta, psi) alone.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dicke.hpp"
#include "lmg.hpp"
#include "nelder_mead.hpp"
#include "rng.hpp"

namespace spinbell {

struct EulerAngles {
  double phi = 0.0;
  double beta = 0.0;
  double psi = 0.0;
};

struct BellResult {
  double E = 0.0;
  double logE = kNegInf;
  double Q = kNegInf;
  EulerAngles theta_opt;
  /// Per-spin (beta, psi) pairs; filled by the full-space optimizer only.
  std::vector<std::array<double, 2>> site_angles;
  int n_starts = 0;
  bool converged = false;
  std::uint64_t seed = kDefaultSeed;
  std::size_t evaluations = 0;
};

/// Q = L + log2(E); -inf stays -inf.
inline double q_from_logE(double logE, int L) {
  if (logE == kNegInf) return kNegInf;
  return static_cast<double>(L) + logE / kLn2;
}

inline double logE_from_q(double Q, int L) { return Q == kNegInf ? kNegInf : (Q - L) * kLn2; }

/// Fills E, logE and Q from a coherence amplitude.
inline void set_from_coherence(BellResult& r, cplx c, int L) {
  const double a = std::abs(c);
  r.logE = a > 0.0 ? 2.0 * std::log(a) : kNegInf;
  r.E = a * a;
  r.Q = q_from_logE(r.logE, L);
}

inline CMatrix rotation_z(const DickeBasis& basis, double angle) {
  CVector d(basis.dim());
  for (Eigen::Index i = 0; i < basis.dim(); ++i) d(i) = std::polar(1.0, -angle * basis.m(i));
  return d.asDiagonal();
}

inline CMatrix rotation_y(const DickeBasis& basis, double angle) {
  return rotation_operator(basis, {0.0, angle, 0.0}).matrix();
}

inline CMatrix euler_rotation(const DickeBasis& basis, const EulerAngles& a) {
  return rotation_z(basis, a.phi) * rotation_y(basis, a.beta) * rotation_z(basis, a.psi);
}

/// Corner element <S,-S| P rho P^dag |S,S> for P = exp(-i theta . S).
inline cplx ghz_coherence(const SymmetricDensityMatrix& rho, const std::array<double, 3>& theta) {
  const CMatrix P = rotation_operator(rho.basis(), theta).matrix();
  const CMatrix rotated = P * rho.matrix() * P.adjoint();
  return rotated(0, rho.basis().dim() - 1);
}

/// (S+ / c)^L with c = (L!)^(1/L): equals S+^L / L! without ever forming L!.
inline CMatrix normalized_raising_power(const DickeBasis& basis) {
  const int L = basis.particles();
  const double scale = std::exp(-log_factorial(L) / L);
  const CMatrix step = build_collective_ops(basis).Splus.matrix() * scale;
  CMatrix acc = CMatrix::Identity(basis.dim(), basis.dim());
  for (int k = 0; k < L; ++k) acc = (acc * step).eval();
  return acc;
}

/// (1/L!) Tr(rho P^dag S+^L P), evaluated with the rescaled operator power.
inline cplx ghz_coherence_trace(const SymmetricDensityMatrix& rho, const std::array<double, 3>& theta) {
  const CMatrix P = rotation_operator(rho.basis(), theta).matrix();
  return (rho.matrix() * P.adjoint() * normalized_raising_power(rho.basis()) * P).trace();
}

/// Fast evaluation of the corner coherence over Euler angles. Keeps the
/// eigendecomposition of Sy and returns only the two rows of P that matter.
class EulerFrame {
 public:
  explicit EulerFrame(const DickeBasis& basis) : basis_(basis) {
    const auto ops = build_collective_ops(basis);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(ops.Sy.matrix());
    evals_ = es.eigenvalues();
    evecs_ = es.eigenvectors();
    m_.resize(basis.dim());
    for (Eigen::Index i = 0; i < basis.dim(); ++i) m_(i) = basis.m(i);
  }

  const DickeBasis& basis() const { return basis_; }

  /// Row r of P = Rz(phi) Ry(beta) Rz(psi).
  CVector row(Eigen::Index r, const EulerAngles& a) const {
    const auto n = basis_.dim();
    CVector coeff(n);
    for (Eigen::Index k = 0; k < n; ++k) coeff(k) = evecs_(r, k) * std::polar(1.0, -a.beta * evals_(k));
    CVector out = evecs_.conjugate() * coeff;
    for (Eigen::Index j = 0; j < n; ++j) out(j) *= std::polar(1.0, -a.psi * m_(j));
    return out * std::polar(1.0, -a.phi * m_(r));
  }

  cplx coherence(const CMatrix& rho, const EulerAngles& a) const {
    const CVector top = row(0, a);
    const CVector bottom = row(basis_.dim() - 1, a);
    return (top.transpose() * rho * bottom.conjugate())(0);
  }

  cplx coherence(const CVector& psi, const EulerAngles& a) const {
    const cplx low = row(0, a).transpose() * psi;
    const cplx high = row(basis_.dim() - 1, a).transpose() * psi;
    return low * std::conj(high);
  }

 private:
  DickeBasis basis_;
  RVector evals_;
  CMatrix evecs_;
  RVector m_;
};

inline cplx ghz_coherence_euler(const SymmetricDensityMatrix& rho, const EulerAngles& a) {
  return EulerFrame(rho.basis()).coherence(rho.matrix(), a);
}

struct BellOptimizerOptions {
  std::uint64_t seed = kDefaultSeed;
  int random_starts = 20;
  SimplexOptions simplex{};
};

/// The six deterministic starts: quantization axis along +-z, +-x, +-y.
inline std::array<EulerAngles, 6> axis_alignments() {
  return {EulerAngles{0, 0, 0}, EulerAngles{0, kPi, 0}, EulerAngles{0, kPi / 2, 0},
          EulerAngles{0, kPi / 2, kPi}, EulerAngles{0, kPi / 2, kPi / 2}, EulerAngles{0, kPi / 2, -kPi / 2}};
}

namespace detail {

/// Minimizes -log|c|^2 over (beta, psi) from the deterministic and random
/// starts. `coh` maps EulerAngles to the coherence amplitude.
template <typename Coherence>
BellResult optimize_two_angles(Coherence&& coh, int L, std::uint64_t input_hash, const BellOptimizerOptions& opt) {
  auto objective = [&](const Eigen::VectorXd& x) {
    const double a = std::abs(coh(EulerAngles{0.0, x(0), x(1)}));
    return a > 0.0 ? -2.0 * std::log(a) : 1e300;
  };

  std::vector<Eigen::VectorXd> starts;
  for (const auto& s : axis_alignments()) starts.push_back(Eigen::Vector2d(s.beta, s.psi));
  RandomStream rng(opt.seed, input_hash);
  for (int i = 0; i < opt.random_starts; ++i) starts.push_back(Eigen::Vector2d(rng.uniform(0.0, kPi), rng.uniform(-kPi, kPi)));

  BellResult best;
  best.seed = opt.seed;
  double best_val = HUGE_VAL;
  bool best_converged = false;
  for (const auto& s : starts) {
    // Starting values count too, so the result is never worse than any start.
    const double v0 = objective(s);
    ++best.evaluations;
    if (v0 < best_val) {
      best_val = v0;
      best.theta_opt = {0.0, s(0), s(1)};
      best_converged = true;
    }
    const SimplexResult r = nelder_mead(objective, s, opt.simplex);
    best.evaluations += r.evaluations;
    if (r.value < best_val) {
      best_val = r.value;
      best.theta_opt = {0.0, r.x(0), r.x(1)};
      best_converged = r.converged;
    }
  }
  best.n_starts = static_cast<int>(starts.size());
  best.converged = best_converged;
  set_from_coherence(best, coh(best.theta_opt), L);
  return best;
}

}  // namespace detail

inline BellResult optimize_bell_symmetric(const SymmetricDensityMatrix& rho, const BellOptimizerOptions& opt = {}) {
  const EulerFrame frame(rho.basis());
  const CMatrix& m = rho.matrix();
  const auto hash = hash_bytes(std::span<const cplx>(m.data(), static_cast<std::size_t>(m.size())));
  return detail::optimize_two_angles([&](const EulerAngles& a) { return frame.coherence(m, a); }, rho.basis().particles(), hash,
                                     opt);
}

/// Pure-state shortcut; same contract as the density-matrix version.
inline BellResult optimize_bell_symmetric(const SymmetricState& psi, const BellOptimizerOptions& opt = {}) {
  const EulerFrame frame(psi.basis());
  const CVector& v = psi.amplitudes();
  const auto hash = hash_bytes(std::span<const cplx>(v.data(), static_cast<std::size_t>(v.size())));
  return detail::optimize_two_angles([&](const EulerAngles& a) { return frame.coherence(v, a); }, psi.basis().particles(), hash,
                                     opt);
}

inline BellResult thermal_bell(const GibbsState& g, const BellOptimizerOptions& opt = {}) {
  return optimize_bell_symmetric(g.rho, opt);
}

struct DepthClass {
  bool certified = false;
  int n = 0;  ///< meaningful only when certified
  std::string statement;
};

/// Bell-correlation depth window (L-2) - (n+1) < Q <= (L-2) - n. Boundaries are
/// snapped with an absolute slack of 1e-9 so that exact values such as Q = L-4
/// land in their closed end.
inline DepthClass classify_depth(double Q, int L) {
  if (L < 3) throw std::invalid_argument("classify_depth: the correlator certifies nothing below L = 3");
  const double q_max = L - 2.0;
  constexpr double slack = 1e-9;
  if (Q > q_max + slack) throw std::invalid_argument("classify_depth: Q exceeds the quantum maximum L-2");
  if (Q <= slack) return {false, 0, "no depth certified"};
  const int n = static_cast<int>(std::floor(q_max - Q + slack));
  return {true, n, "state is maximally " + std::to_string(n + 1) + "-local"};
}

}  // namespace spinbell
