#pragma once

// Derivative-free simplex minimizer (Nelder-Mead with standard coefficients).
// Used for the low-dimensional angle searches of the Bell-correlator optimizers.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace spinbell {

struct SimplexOptions {
  double f_tol = 1e-12;      ///< stop when f(worst) - f(best) drops below this
  double x_tol = 1e-11;      ///< or when the simplex diameter drops below this
  double initial_step = 0.3;
  std::size_t max_iterations = 2000;
};

struct SimplexResult {
  Eigen::VectorXd x;
  double value = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  bool converged = false;
};

template <typename Objective>
SimplexResult nelder_mead(Objective&& f, const Eigen::VectorXd& start, const SimplexOptions& opt = {}) {
  const auto n = static_cast<std::size_t>(start.size());
  std::vector<Eigen::VectorXd> pts(n + 1, start);
  std::vector<double> vals(n + 1);
  SimplexResult res;

  auto eval = [&](const Eigen::VectorXd& x) {
    ++res.evaluations;
    const double v = f(x);
    return std::isnan(v) ? HUGE_VAL : v;
  };

  for (std::size_t i = 0; i < n; ++i) pts[i + 1](static_cast<Eigen::Index>(i)) += opt.initial_step;
  for (std::size_t i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

  std::vector<std::size_t> order(n + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return vals[a] < vals[b]; });
    std::vector<Eigen::VectorXd> p2(n + 1);
    std::vector<double> v2(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      p2[i] = pts[order[i]];
      v2[i] = vals[order[i]];
    }
    pts.swap(p2);
    vals.swap(v2);
  };

  constexpr double reflect = 1.0, expand = 2.0, contract = 0.5, shrink = 0.5;

  sort_simplex();
  for (res.iterations = 0; res.iterations < opt.max_iterations; ++res.iterations) {
    double diameter = 0.0;
    for (std::size_t i = 1; i <= n; ++i) diameter = std::max(diameter, (pts[i] - pts[0]).cwiseAbs().maxCoeff());
    if (vals[n] - vals[0] < opt.f_tol || diameter < opt.x_tol) {
      res.converged = true;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) centroid += pts[i];
    centroid /= static_cast<double>(n);

    const Eigen::VectorXd xr = centroid + reflect * (centroid - pts[n]);
    const double fr = eval(xr);
    if (fr < vals[0]) {
      const Eigen::VectorXd xe = centroid + expand * (xr - centroid);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[n] = xe;
        vals[n] = fe;
      } else {
        pts[n] = xr;
        vals[n] = fr;
      }
    } else if (fr < vals[n - 1]) {
      pts[n] = xr;
      vals[n] = fr;
    } else {
      const bool outside = fr < vals[n];
      const Eigen::VectorXd xc =
          outside ? Eigen::VectorXd(centroid + contract * (xr - centroid))
                  : Eigen::VectorXd(centroid + contract * (pts[n] - centroid));
      const double fc = eval(xc);
      if (fc < (outside ? fr : vals[n])) {
        pts[n] = xc;
        vals[n] = fc;
      } else {
        for (std::size_t i = 1; i <= n; ++i) {
          pts[i] = pts[0] + shrink * (pts[i] - pts[0]);
          vals[i] = eval(pts[i]);
        }
      }
    }
    sort_simplex();
  }

  res.x = pts[0];
  res.value = vals[0];
  return res;
}

}  // namespace spinbell
