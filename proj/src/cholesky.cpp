#include "fbm/cholesky.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "fbm/covariance.hpp"
#include "fbm/errors.hpp"

namespace fbm {

namespace {

constexpr Eigen::Index kMaxNodes = 2048;
constexpr double kPivotTolerance = -1e-10;

// Outer-product Cholesky that tolerates a positive-semidefinite input:
// pivots in [kPivotTolerance, 0] are clamped to zero (rank deficiency, e.g.
// H = 1), anything lower is an error.
Eigen::MatrixXd semidefinite_cholesky(Eigen::MatrixXd a) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double pivot = a(j, j) - l.row(j).head(j).squaredNorm();
    if (pivot < kPivotTolerance) {
      throw CovarianceNotPsd("covariance pivot " + std::to_string(pivot) +
                             " at index " + std::to_string(j));
    }
    pivot = std::max(pivot, 0.0);
    const double d = std::sqrt(pivot);
    l(j, j) = d;
    if (d > 0.0) {
      for (Eigen::Index i = j + 1; i < n; ++i) {
        l(i, j) = (a(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / d;
      }
    }
  }
  return l;
}

}  // namespace

CholeskySampler::CholeskySampler(TimeGridPtr grid, Hurst hurst)
    : grid_(std::move(grid)), hurst_(hurst) {
  const Eigen::Index n = grid_->n_points;
  if (n > kMaxNodes) {
    throw GridTooLarge("Cholesky sampler limited to " +
                       std::to_string(kMaxNodes) + " nodes, got " +
                       std::to_string(n));
  }
  const Eigen::Index mid = grid_->zero_index();
  Eigen::MatrixXd cov(n - 1, n - 1);
  for (Eigen::Index i = 0; i < n - 1; ++i) {
    const Eigen::Index gi = i < mid ? i : i + 1;
    for (Eigen::Index j = 0; j <= i; ++j) {
      const Eigen::Index gj = j < mid ? j : j + 1;
      const double v =
          fbm_covariance(grid_->nodes[gi], grid_->nodes[gj], hurst_);
      cov(i, j) = v;
      cov(j, i) = v;
    }
  }
  factor_ = semidefinite_cholesky(std::move(cov));
}

FbmPath CholeskySampler::sample(RngStream& rng) const {
  const Eigen::Index n = grid_->n_points;
  const Eigen::Index mid = grid_->zero_index();
  Eigen::VectorXd z(n - 1);
  for (Eigen::Index i = 0; i < n - 1; ++i) z[i] = rng.normal();
  const Eigen::VectorXd w = factor_ * z;

  FbmPath path{grid_, hurst_, Eigen::VectorXd(n)};
  for (Eigen::Index i = 0; i < n - 1; ++i) {
    path.values[i < mid ? i : i + 1] = w[i];
  }
  path.values[mid] = 0.0;
  return path;
}

FbmPath sample_path_cholesky(const TimeGridPtr& grid, Hurst hurst,
                             RngStream& rng) {
  return CholeskySampler(grid, hurst).sample(rng);
}

}  // namespace fbm
