#pragma once

// Log-domain combinatorics and small numeric helpers shared by every module.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>

#include <Eigen/Dense>

namespace spinbell {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kLn2 = std::numbers::ln2;
inline constexpr double kPi = std::numbers::pi;

/// log(n!) via lgamma; exact enough for n up to a few thousand.
inline double log_factorial(double n) {
  if (n < 0.0) throw std::domain_error("log_factorial: negative argument");
  return std::lgamma(n + 1.0);
}

/// log C(n, k); -inf when k lies outside [0, n].
inline double log_binomial(double n, double k) {
  if (k < 0.0 || k > n) return kNegInf;
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

/// Stable log(sum exp(x_i)). Empty or all -inf input gives -inf.
inline double log_sum_exp(std::span<const double> xs) {
  double peak = kNegInf;
  for (double x : xs) peak = std::max(peak, x);
  if (peak == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - peak);
  return peak + std::log(acc);
}

inline double safe_log(double x) { return x > 0.0 ? std::log(x) : kNegInf; }

/// Largest elementwise modulus of a dense matrix.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

template <typename Derived>
double hermitian_deviation(const Eigen::MatrixBase<Derived>& m) {
  return max_abs(m - m.adjoint());
}

}  // namespace spinbell
