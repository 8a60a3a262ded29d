#pragma once

#include <Eigen/Core>
#include <cmath>
#include <string>

#include "fbm/errors.hpp"
#include "fbm/hurst.hpp"
#include "fbm/time_grid.hpp"

namespace fbm {

// R(t, s) = (|t|^{2H} + |s|^{2H} - |t-s|^{2H}) / 2.
inline double fbm_covariance(double t, double s, Hurst hurst) {
  const double p = hurst.two_h();
  return 0.5 * (std::pow(std::abs(t), p) + std::pow(std::abs(s), p) -
                std::pow(std::abs(t - s), p));
}

// Autocovariance of fractional Gaussian noise increments at lag k on a grid
// with the given spacing:
//   gamma(k) = spacing^{2H} * (|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H}) / 2.
inline double fgn_autocovariance(Eigen::Index k, Hurst hurst, double spacing) {
  if (!(spacing > 0.0)) {
    throw ValidationError("fGn spacing must be positive, got " +
                          std::to_string(spacing));
  }
  if (k < 0) {
    throw ValidationError("fGn lag must be nonnegative");
  }
  const double p = hurst.two_h();
  const double kk = static_cast<double>(k);
  return 0.5 * std::pow(spacing, p) *
         (std::pow(kk + 1.0, p) - 2.0 * std::pow(kk, p) +
          std::pow(std::abs(kk - 1.0), p));
}

// Dense covariance matrix of the path values over every grid node. The row
// and column of the t = 0 node are identically zero.
inline Eigen::MatrixXd covariance_matrix(const TimeGrid& grid, Hurst hurst) {
  const Eigen::Index n = grid.size();
  Eigen::MatrixXd cov(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = fbm_covariance(grid.nodes[i], grid.nodes[j], hurst);
      cov(i, j) = v;
      cov(j, i) = v;
    }
  }
  return cov;
}

}  // namespace fbm
