#pragma once

// Brute-force spin-1/2 product-space reference used as an independent oracle
// by the unit tests. Basis index x, bit k = spin k, bit value 1 = up.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace brute {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

inline CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Single-site operator `op` (2x2 in the (down, up) basis) acting on spin k of L.
inline CMat site(const CMat& op, int k, int L) {
  CMat out = CMat::Identity(1, 1);
  // Kronecker order puts the highest spin leftmost so that bit k of the index is spin k.
  for (int s = L - 1; s >= 0; --s) out = kron(out, s == k ? op : CMat::Identity(2, 2));
  return out;
}

inline CMat splus_half() {
  CMat m = CMat::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}
inline CMat sx_half() { return 0.5 * (splus_half() + splus_half().adjoint()); }
inline CMat sy_half() { return (splus_half() - splus_half().adjoint()) / cplx(0.0, 2.0); }
inline CMat sz_half() {
  CMat m = CMat::Zero(2, 2);
  m(0, 0) = -0.5;
  m(1, 1) = 0.5;
  return m;
}

inline CMat collective(const CMat& half, int L) {
  const Eigen::Index N = Eigen::Index{1} << L;
  CMat out = CMat::Zero(N, N);
  for (int k = 0; k < L; ++k) out += site(half, k, L);
  return out;
}

/// Columns are the normalized Dicke vectors, column k = k spins up.
inline CMat dicke_vectors(int L) {
  const Eigen::Index N = Eigen::Index{1} << L;
  CMat D = CMat::Zero(N, L + 1);
  for (Eigen::Index x = 0; x < N; ++x) D(x, __builtin_popcountll(static_cast<unsigned long long>(x))) = 1.0;
  for (int k = 0; k <= L; ++k) D.col(k).normalize();
  return D;
}

/// exp(-i a sigma_y / 2) and exp(-i a sigma_z / 2) in closed form.
inline CMat ry_half(double a) {
  CMat m(2, 2);
  // With this basis order (down, up) and S+ = |up><down|, exp(-i a Sy) maps
  // down -> cos|down> - sin|up>.
  m << std::cos(a / 2), std::sin(a / 2), -std::sin(a / 2), std::cos(a / 2);
  return m;
}
inline CMat rz_half(double a) {
  CMat m = CMat::Zero(2, 2);
  m(0, 0) = std::polar(1.0, a / 2);
  m(1, 1) = std::polar(1.0, -a / 2);
  return m;
}

/// Product of identical single-spin rotations on L spins.
inline CMat product(const CMat& u, int L) {
  CMat out = CMat::Identity(1, 1);
  for (int s = 0; s < L; ++s) out = kron(out, u);
  return out;
}

/// <down..down| U psi> conj(<up..up| U psi>) for a pure product-space state.
inline cplx corner(const CMat& U, const CVec& psi) {
  const CVec r = U * psi;
  return r(0) * std::conj(r(r.size() - 1));
}

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace brute
