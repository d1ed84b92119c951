#pragma once

// Collective-spin algebra in the fully symmetric sector of L spin-1/2
// particles (total spin S = L/2, dimension L+1).
//
// Basis order is ascending magnetization: index i <-> m = i - S, so index 0 is
// |S,-S> (all spins down) and index L is |S,S> (all spins up). The GHZ
// coherence between the two extremal Dicke states therefore sits in the
// corners of every matrix.
//
// Wigner-d convention: d_{m;m'}(pi/2) is the coefficient of |S,m'> in
// exp(+i pi/2 Sy)|S,m>, which coincides with the textbook
// d^S_{m m'}(pi/2) = <S,m| exp(-i pi/2 Sy) |S,m'>. With this convention
// |d_{m;S}(pi/2)| = sqrt(C(L, m+S)) / 2^S.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "numeric.hpp"

namespace spinbell {

class DickeBasis {
 public:
  /// Accepts L >= 1; the models that need pairs of spins enforce L >= 2.
  explicit DickeBasis(int L) : L_(L) {
    if (L < 1) throw std::invalid_argument("DickeBasis: particle count must be >= 1, got " + std::to_string(L));
  }

  int particles() const { return L_; }
  double spin() const { return 0.5 * L_; }
  Eigen::Index dim() const { return L_ + 1; }

  /// Magnetization of basis index i.
  double m(Eigen::Index i) const { return static_cast<double>(i) - spin(); }

  /// Basis index of magnetization m; throws when m is not a valid label.
  Eigen::Index index_of(double m) const {
    const double idx = m + spin();
    const double rounded = std::round(idx);
    if (std::abs(idx - rounded) > 1e-9 || rounded < 0 || rounded > L_)
      throw std::out_of_range("DickeBasis: magnetization " + std::to_string(m) + " outside {-S..S}");
    return static_cast<Eigen::Index>(rounded);
  }

  std::vector<double> m_values() const {
    std::vector<double> out(static_cast<std::size_t>(dim()));
    for (Eigen::Index i = 0; i < dim(); ++i) out[static_cast<std::size_t>(i)] = m(i);
    return out;
  }

  friend bool operator==(const DickeBasis&, const DickeBasis&) = default;

 private:
  int L_;
};

inline constexpr double kHermitianTol = 1e-12;

class CollectiveOperator {
 public:
  CollectiveOperator(DickeBasis basis, CMatrix matrix, bool hermitian = false)
      : basis_(basis), matrix_(std::move(matrix)), hermitian_(hermitian) {
    if (matrix_.rows() != basis_.dim() || matrix_.cols() != basis_.dim())
      throw std::invalid_argument("CollectiveOperator: matrix dimension does not match basis");
    if (hermitian_ && hermitian_deviation(matrix_) > kHermitianTol)
      throw std::invalid_argument("CollectiveOperator: matrix flagged Hermitian but is not");
  }

  const DickeBasis& basis() const { return basis_; }
  const CMatrix& matrix() const { return matrix_; }
  bool hermitian() const { return hermitian_; }

 private:
  DickeBasis basis_;
  CMatrix matrix_;
  bool hermitian_;
};

class SymmetricState {
 public:
  SymmetricState(DickeBasis basis, CVector amplitudes) : basis_(basis), amp_(std::move(amplitudes)) {
    if (amp_.size() != basis_.dim()) throw std::invalid_argument("SymmetricState: amplitude count does not match basis");
    if (std::abs(amp_.squaredNorm() - 1.0) > 1e-12) throw std::invalid_argument("SymmetricState: amplitudes not normalized");
  }

  /// Normalizes arbitrary nonzero amplitudes.
  static SymmetricState normalized(DickeBasis basis, CVector amplitudes) {
    const double n = amplitudes.norm();
    if (n == 0.0) throw std::invalid_argument("SymmetricState: zero vector");
    return SymmetricState(basis, amplitudes / n);
  }

  static SymmetricState dicke(DickeBasis basis, double m) {
    CVector a = CVector::Zero(basis.dim());
    a(basis.index_of(m)) = 1.0;
    return SymmetricState(basis, std::move(a));
  }

  /// (|S,S> + |S,-S>)/sqrt(2).
  static SymmetricState ghz(DickeBasis basis) {
    CVector a = CVector::Zero(basis.dim());
    a(0) = a(basis.dim() - 1) = 1.0 / std::sqrt(2.0);
    return SymmetricState(basis, std::move(a));
  }

  const DickeBasis& basis() const { return basis_; }
  const CVector& amplitudes() const { return amp_; }

 private:
  DickeBasis basis_;
  CVector amp_;
};

class SymmetricDensityMatrix {
 public:
  SymmetricDensityMatrix(DickeBasis basis, CMatrix matrix) : basis_(basis), rho_(std::move(matrix)) {
    if (rho_.rows() != basis_.dim() || rho_.cols() != basis_.dim())
      throw std::invalid_argument("SymmetricDensityMatrix: dimension does not match basis");
    if (hermitian_deviation(rho_) > 1e-12) throw std::invalid_argument("SymmetricDensityMatrix: not Hermitian");
    if (std::abs(rho_.trace() - cplx(1.0)) > 1e-12) throw std::invalid_argument("SymmetricDensityMatrix: trace is not 1");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
      throw std::invalid_argument("SymmetricDensityMatrix: not positive semidefinite");
  }

  explicit SymmetricDensityMatrix(const SymmetricState& psi)
      : SymmetricDensityMatrix(psi.basis(), psi.amplitudes() * psi.amplitudes().adjoint()) {}

  const DickeBasis& basis() const { return basis_; }
  const CMatrix& matrix() const { return rho_; }

 private:
  DickeBasis basis_;
  CMatrix rho_;
};

struct CollectiveOps {
  CollectiveOperator Sx, Sy, Sz, Splus, Sminus;
};

/// Raising-operator band entry <S,m+1|S+|S,m>.
inline double ladder_element(double S, double m) { return std::sqrt((S - m) * (S + m + 1.0)); }

inline CollectiveOps build_collective_ops(const DickeBasis& basis) {
  const auto n = basis.dim();
  const double S = basis.spin();
  CMatrix sp = CMatrix::Zero(n, n);
  CMatrix sz = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    sz(i, i) = basis.m(i);
    if (i + 1 < n) sp(i + 1, i) = ladder_element(S, basis.m(i));
  }
  CMatrix sm = sp.adjoint();
  CMatrix sx = 0.5 * (sp + sm);
  CMatrix sy = (sp - sm) / cplx(0.0, 2.0);
  return {CollectiveOperator(basis, sx, true), CollectiveOperator(basis, sy, true), CollectiveOperator(basis, sz, true),
          CollectiveOperator(basis, sp), CollectiveOperator(basis, sm)};
}

/// exp(-i H) for Hermitian H, via eigendecomposition so the result is unitary
/// to solver precision.
inline CMatrix unitary_exp(const CMatrix& generator) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(generator);
  const CVector phases = (es.eigenvalues().cast<cplx>() * cplx(0.0, -1.0)).array().exp().matrix();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// exp(-i theta . S).
inline CollectiveOperator rotation_operator(const DickeBasis& basis, const std::array<double, 3>& theta) {
  for (double t : theta)
    if (!std::isfinite(t)) throw std::invalid_argument("rotation_operator: non-finite angle");
  if (theta[0] == 0.0 && theta[1] == 0.0 && theta[2] == 0.0)
    return CollectiveOperator(basis, CMatrix::Identity(basis.dim(), basis.dim()));
  const auto ops = build_collective_ops(basis);
  const CMatrix gen = theta[0] * ops.Sx.matrix() + theta[1] * ops.Sy.matrix() + theta[2] * ops.Sz.matrix();
  return CollectiveOperator(basis, unitary_exp(gen));
}

/// Wigner small-d matrix at pi/2, row index m, column index m' (see the
/// header comment for the convention). Evaluated from the explicit factorial
/// sum with exact integer arithmetic, independently of the matrix exponential.
inline RMatrix wigner_d_half_pi(const DickeBasis& basis) {
  const auto n = basis.dim();
  const int twoS = basis.particles();
  if (twoS > 64) throw std::invalid_argument("wigner_d_half_pi: supported for L <= 64");
  // Exact binomials; every partial sum below is bounded by C(L, a) < 2^63.
  auto binom = [](int top, int k) -> __int128 {
    if (k < 0 || k > top) return 0;
    __int128 r = 1;
    for (int i = 1; i <= k; ++i) r = r * (top - k + i) / i;
    return r;
  };
  auto lf = [](int k) { return std::lgamma(static_cast<double>(k) + 1.0); };
  RMatrix d(n, n);
  for (Eigen::Index row = 0; row < n; ++row) {
    for (Eigen::Index col = 0; col < n; ++col) {
      // a = S+m, b = S-m, c = S+m', e = S-m' for m = row label, m' = col label.
      const int a = static_cast<int>(row), b = twoS - static_cast<int>(row);
      const int c = static_cast<int>(col), e = twoS - static_cast<int>(col);
      // Factorial sum of d^S_{m' m}(-pi/2) regrouped as an integer Krawtchouk sum
      // K = sum_s (-1)^s C(c, a-s) C(e, s); the sign of sin(-pi/4) folds into (-1)^s.
      __int128 K = 0;
      for (int s = std::max(0, a - c); s <= std::min(a, e); ++s) {
        const __int128 t = binom(c, a - s) * binom(e, s);
        K += (s % 2 == 0) ? t : -t;
      }
      const double scale = std::exp(0.5 * (lf(a) + lf(b) - lf(c) - lf(e)) - 0.5 * twoS * kLn2);
      d(row, col) = static_cast<double>(K) * scale;
    }
  }
  return d;
}

}  // namespace spinbell
